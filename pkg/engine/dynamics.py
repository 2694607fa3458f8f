"""
Two-phase spatial game dynamics driven by a rank matrix.

Phase 1 scores every cell by looking up (own strategy, type-1 neighbor
count) in the rank matrix. Phase 2 synchronously updates every cell from
the pre-step state by an imitation rule. Both phases are pure numpy
functions of their inputs.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterator, List, Optional

import numpy as np

from analysis.metrics import activity, density, digest
from errors import TopologyMismatchError
from lattice.grid import Grid, count_field, neighbor_values
from lattice.topology import Topology
from rankmodel.rank_matrix import RankMatrix

logger = logging.getLogger(__name__)


class UpdateRule(str, Enum):
    # adopt the strategy of the top-ranked cell among self and neighbors
    BEST_IN_NEIGHBORHOOD = "best"
    # flip iff some opposite-strategy neighbor strictly outranks the cell
    ANY_BETTER_OPPONENT = "any-better"


@dataclass(frozen=True)
class StepMetrics:
    step: int
    density: float
    activity: float
    digest: str


Observer = Callable[[int, Grid, StepMetrics], None]


@dataclass
class RunRecord:
    """Trajectory metadata; index 0 of `digests` is the initial state."""

    initial: Grid
    final: Grid
    steps: int
    metrics: List[StepMetrics] = field(default_factory=list)
    digests: List[str] = field(default_factory=list)
    classification: Optional[str] = None


def score_phase(grid: Grid, rm: RankMatrix, topology: Topology) -> np.ndarray:
    """Rank field: rm(grid(cell), count(cell)) for every cell, read-only int16."""
    if rm.topology != topology:
        raise TopologyMismatchError(
            f"rank matrix is for {rm.topology.kind}, grid dynamics use {topology.kind}"
        )
    ranks = rm.table[grid.cells, count_field(grid, topology)]
    ranks.setflags(write=False)
    return ranks


def imitation_phase(
    grid: Grid,
    ranks: np.ndarray,
    topology: Topology,
    rule: UpdateRule = UpdateRule.BEST_IN_NEIGHBORHOOD,
) -> Grid:
    neighbor_ranks = neighbor_values(ranks, topology)
    neighbor_strategies = neighbor_values(grid, topology)

    if UpdateRule(rule) is UpdateRule.BEST_IN_NEIGHBORHOOD:
        # equal ranks imply equal strategies, so argmax needs no tie-break
        all_ranks = np.concatenate([ranks[None], neighbor_ranks])
        all_strategies = np.concatenate([grid.cells[None], neighbor_strategies])
        best = np.argmax(all_ranks, axis=0)
        return Grid(np.take_along_axis(all_strategies, best[None], axis=0)[0])

    outranked = np.any(
        (neighbor_strategies != grid.cells) & (neighbor_ranks > ranks), axis=0
    )
    return Grid(grid.cells ^ outranked.astype(np.uint8))


def step(
    grid: Grid,
    rm: RankMatrix,
    topology: Topology,
    rule: UpdateRule = UpdateRule.BEST_IN_NEIGHBORHOOD,
) -> Grid:
    return imitation_phase(grid, score_phase(grid, rm, topology), topology, rule)


def trajectory(
    grid: Grid,
    rm: RankMatrix,
    topology: Topology,
    rule: UpdateRule = UpdateRule.BEST_IN_NEIGHBORHOOD,
) -> Iterator[Grid]:
    """Yield the initial grid and then every successive state, forever."""
    while True:
        yield grid
        grid = step(grid, rm, topology, rule)


def run(
    grid: Grid,
    rm: RankMatrix,
    topology: Topology,
    rule: UpdateRule = UpdateRule.BEST_IN_NEIGHBORHOOD,
    steps: int = 0,
    observer: Optional[Observer] = None,
) -> RunRecord:
    """
    Apply `step` exactly `steps` times. The observer, if any, is called
    after each step with (step index starting at 1, new grid, metrics).
    """
    if steps < 0:
        raise ValueError(f"steps must be non-negative, got {steps}")

    record = RunRecord(initial=grid, final=grid, steps=steps, digests=[digest(grid)])
    current = grid
    for index in range(1, steps + 1):
        following = step(current, rm, topology, rule)
        metrics = StepMetrics(
            step=index,
            density=density(following),
            activity=activity(current, following),
            digest=digest(following),
        )
        logger.debug("step %d density=%.6f activity=%.6f", index, metrics.density, metrics.activity)
        record.metrics.append(metrics)
        record.digests.append(metrics.digest)
        if observer is not None:
            observer(index, following, metrics)
        current = following

    record.final = current
    logger.info(
        "run finished: %d steps, final density %.6f", steps, density(current)
    )
    return record
