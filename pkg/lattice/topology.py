"""
Neighborhood structures on a rectangular torus.

Displacements are (row, col). The hexagonal lattice is stored as "odd-r"
offset rows: odd rows are shifted half a cell to the right, so the six
neighbors depend on the parity of the row.
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from errors import InvalidDimensionsError, ManifestError

Offset = Tuple[int, int]
Cell = Tuple[int, int]

MIN_SIDE = 3


@dataclass(frozen=True)
class Topology:
    """
    Neighbor structure: a token plus the offset tables for even and odd rows.

    For square lattices both tables are the same.
    """

    kind: str
    even_offsets: Tuple[Offset, ...]
    odd_offsets: Tuple[Offset, ...]

    @property
    def neighbor_count(self) -> int:
        return len(self.even_offsets)

    @property
    def parity_dependent(self) -> bool:
        return self.even_offsets != self.odd_offsets

    def offsets_for_row(self, row: int) -> Tuple[Offset, ...]:
        return self.odd_offsets if row % 2 else self.even_offsets

    def kernel(self, parity: int) -> np.ndarray:
        """3x3 correlation weights selecting the neighbors of a row of this parity."""
        weights = np.zeros((3, 3), dtype=np.int16)
        for dr, dc in self.offsets_for_row(parity):
            weights[1 + dr, 1 + dc] = 1
        return weights

    def check_dimensions(self, rows: int, cols: int) -> None:
        """Raise InvalidDimensionsError unless rows x cols is an admissible torus."""
        if rows < MIN_SIDE or cols < MIN_SIDE:
            raise InvalidDimensionsError(
                f"{self.kind} torus needs at least {MIN_SIDE}x{MIN_SIDE} cells, got {rows}x{cols}"
            )
        if self.parity_dependent and rows % 2:
            raise InvalidDimensionsError(
                f"{self.kind} torus needs an even number of rows, got {rows}"
            )


MOORE8 = Topology(
    kind="moore8",
    even_offsets=((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)),
    odd_offsets=((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)),
)

VONNEUMANN4 = Topology(
    kind="vonneumann4",
    even_offsets=((-1, 0), (1, 0), (0, -1), (0, 1)),
    odd_offsets=((-1, 0), (1, 0), (0, -1), (0, 1)),
)

HEX6 = Topology(
    kind="hex6",
    even_offsets=((-1, -1), (-1, 0), (0, -1), (0, 1), (1, -1), (1, 0)),
    odd_offsets=((-1, 0), (-1, 1), (0, -1), (0, 1), (1, 0), (1, 1)),
)

TOPOLOGIES: Dict[str, Topology] = {t.kind: t for t in (MOORE8, VONNEUMANN4, HEX6)}


def get_topology(token: str) -> Topology:
    try:
        return TOPOLOGIES[token]
    except KeyError:
        raise ManifestError(
            f"unknown topology '{token}' (expected one of: {', '.join(TOPOLOGIES)})"
        ) from None


def neighbors(topology: Topology, cell: Cell, rows: int, cols: int) -> List[Cell]:
    """The N neighbors of `cell`, wrapped in both axes."""
    topology.check_dimensions(rows, cols)
    r, c = cell
    return [
        ((r + dr) % rows, (c + dc) % cols)
        for dr, dc in topology.offsets_for_row(r)
    ]
