"""
The dynamics as a cellular automaton.

A cell's next strategy depends on the ranks of itself and its neighbors,
and each rank depends on that cell's own neighbors, so the local rule reads
a radius-2 patch. A 5x5 window of offset coordinates covers the radius-2
neighborhood of every supported topology; for hexagonal lattices the
parity of the center row selects the offset tables.
"""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from engine.dynamics import UpdateRule
from errors import PatchSizeError, TopologyMismatchError
from lattice.grid import Grid
from lattice.topology import Cell, Topology
from rankmodel.rank_matrix import RankMatrix

PATCH_RADIUS = 2
PATCH_SIDE = 2 * PATCH_RADIUS + 1


@dataclass(frozen=True)
class Patch:
    cells: np.ndarray
    row_parity: int = 0


def extract_patch(grid: Grid, cell: Cell) -> Patch:
    """The wrapped 5x5 window centered on `cell`."""
    r, c = cell
    rows = [(r + d) % grid.rows for d in range(-PATCH_RADIUS, PATCH_RADIUS + 1)]
    cols = [(c + d) % grid.cols for d in range(-PATCH_RADIUS, PATCH_RADIUS + 1)]
    return Patch(cells=grid.cells[np.ix_(rows, cols)], row_parity=r % 2)


def ca_local_next(
    patch: Patch,
    rm: RankMatrix,
    topology: Topology,
    rule: UpdateRule = UpdateRule.BEST_IN_NEIGHBORHOOD,
) -> int:
    """Next strategy of the patch's center cell, computed from the patch alone."""
    cells = np.asarray(patch.cells)
    if cells.shape != (PATCH_SIDE, PATCH_SIDE):
        raise PatchSizeError(f"patch must be {PATCH_SIDE}x{PATCH_SIDE}, got {cells.shape}")
    if rm.topology != topology:
        raise TopologyMismatchError(
            f"rank matrix is for {rm.topology.kind}, patch uses {topology.kind}"
        )

    def local_neighbors(i: int, j: int) -> List[Tuple[int, int]]:
        parity = (patch.row_parity + i - PATCH_RADIUS) % 2
        return [(i + dr, j + dc) for dr, dc in topology.offsets_for_row(parity)]

    def local_rank(i: int, j: int) -> int:
        k = sum(int(cells[p]) for p in local_neighbors(i, j))
        return rm.rank(int(cells[i, j]), k)

    center = (PATCH_RADIUS, PATCH_RADIUS)
    own_strategy = int(cells[center])
    own_rank = local_rank(*center)
    scored = [(local_rank(*p), int(cells[p])) for p in local_neighbors(*center)]

    if UpdateRule(rule) is UpdateRule.BEST_IN_NEIGHBORHOOD:
        return max([(own_rank, own_strategy)] + scored)[1]

    if any(strategy != own_strategy and rank > own_rank for rank, strategy in scored):
        return 1 - own_strategy
    return own_strategy
