"""
How many rank matrices exist, and what share of them linear payoff sums realize.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Iterator, Optional, Tuple, TypeVar

from pydantic import BaseModel

from config import get_settings
from errors import SolverFailureError
from lattice.prng import MASK64
from lattice.topology import Topology
from rankmodel.rank_matrix import random_rank_matrix, rows_monotone
from rankmodel.realizability import is_linear_realizable

logger = logging.getLogger(__name__)

Z_95 = 1.959964

T = TypeVar("T")
R = TypeVar("R")


def count_rank_matrices(topology: Topology) -> int:
    """(2(N+1))! arrangements of the ranks."""
    return math.factorial(2 * (topology.neighbor_count + 1))


def count_monotone_rank_matrices(topology: Topology) -> int:
    """
    Rank matrices with both rows strictly monotone: pick the value set of
    row 0, then a direction for each row. Upper bound on the number of
    linearly realizable matrices.
    """
    width = topology.neighbor_count + 1
    directions = 2 if width > 1 else 1
    return directions * directions * math.comb(2 * width, width)


def wilson_half_width(successes: int, trials: int, z: float = Z_95) -> float:
    """Half-width of the Wilson score interval."""
    if trials == 0:
        return 0.5
    p = successes / trials
    denominator = 1 + z * z / trials
    spread = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials))
    return spread / denominator


def sample_seed(seed: int, index: int) -> int:
    """Rank-matrix seed of sample `index` in a sweep seeded by `seed`."""
    return (seed + index) & MASK64


def ordered_map(func: Callable[[T], R], items: Iterable[T], workers: int) -> Iterator[R]:
    """map() across worker processes; results come back in input order."""
    if workers <= 1:
        yield from map(func, items)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(func, items, chunksize=16)


class CensusResult(BaseModel):
    topology: str
    samples: int
    seed: int
    realizable: int
    solver_failures: int
    nonmonotone_realizable: int
    proportion: float
    half_width: float
    monotone_bound: float


def _decide(job: Tuple[Topology, int, str, float]) -> Tuple[Optional[bool], bool]:
    topology, matrix_seed, backend, tolerance = job
    rm = random_rank_matrix(topology, matrix_seed)
    try:
        verdict = is_linear_realizable(rm, backend=backend, tolerance=tolerance)
    except SolverFailureError as e:
        logger.warning("solver failure on %s: %s", rm.inline(), e)
        return None, rows_monotone(rm)
    return verdict.realizable, rows_monotone(rm)


def estimate_linear_proportion(
    topology: Topology,
    samples: int,
    seed: int,
    backend: Optional[str] = None,
    workers: Optional[int] = None,
) -> CensusResult:
    """
    Share of uniformly random rank matrices that are linearly realizable,
    with a 95% Wilson half-width. Solver failures are excluded from the
    proportion and counted separately.
    """
    if samples < 1:
        raise ValueError(f"samples must be at least 1, got {samples}")
    settings = get_settings()
    backend = backend or settings.lp_backend
    workers = settings.workers if workers is None else workers

    jobs = (
        (topology, sample_seed(seed, i), backend, settings.realizability_tolerance)
        for i in range(samples)
    )
    realizable = failures = nonmonotone = 0
    for index, (verdict, monotone) in enumerate(ordered_map(_decide, jobs, workers)):
        if verdict is None:
            failures += 1
        elif verdict:
            realizable += 1
            if not monotone:
                nonmonotone += 1
        logger.debug("census sample %d: %s", index, verdict)

    decided = samples - failures
    proportion = realizable / decided if decided else 0.0
    result = CensusResult(
        topology=topology.kind,
        samples=samples,
        seed=seed,
        realizable=realizable,
        solver_failures=failures,
        nonmonotone_realizable=nonmonotone,
        proportion=proportion,
        half_width=wilson_half_width(realizable, decided),
        monotone_bound=count_monotone_rank_matrices(topology) / count_rank_matrices(topology),
    )
    logger.info(
        "census %s: %d/%d realizable, %d solver failures",
        topology.kind, realizable, decided, failures,
    )
    return result
