"""
Random exploration for rank matrices with lively dynamics.

Interest score = (steps survived before the grid turned uniform or a
cycle was observed, capped at the horizon) + horizon * mean activity over
the final quarter of the run. Past a detected cycle the activity series is
continued periodically up to the horizon, so extinct and frozen runs score
below persistently active ones.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from analysis.census import ordered_map, sample_seed
from analysis.cycles import Classification, classify
from config import get_settings
from engine.dynamics import UpdateRule
from lattice.grid import InitSpec, make_grid
from lattice.topology import Topology
from rankmodel.rank_matrix import RankMatrix, random_rank_matrix

logger = logging.getLogger(__name__)

# XORed into the sweep seed so the shared start grid and the sample-0
# shuffle draw from different SplitMix64 streams
GRID_STREAM = 0x6A09E667F3BCC909


def start_seed(seed: int) -> int:
    """Seed of the bernoulli(0.5) start grid shared by a sweep seeded by `seed`."""
    return seed ^ GRID_STREAM


def activity_to_horizon(classification: Classification) -> List[float]:
    """Activity of every transition 0..horizon-1, extending a detected cycle."""
    series = list(classification.activity)
    if classification.kind == "undetermined":
        return series[: classification.horizon]
    transient, period = classification.transient, classification.period
    for t in range(len(series), classification.horizon):
        series.append(series[transient + (t - transient) % period])
    return series[: classification.horizon]


def interest_score(classification: Classification) -> float:
    horizon = classification.horizon
    ends = [
        at for at in (classification.uniform_at, classification.detected_at) if at is not None
    ]
    survived = min(min(ends) if ends else horizon, horizon)

    series = activity_to_horizon(classification)
    quarter = max(1, horizon // 4)
    tail = series[-quarter:]
    mean_activity = min(max(sum(tail) / len(tail), 0.0), 1.0) if tail else 0.0
    return survived + horizon * mean_activity


@dataclass(frozen=True)
class ExploreResult:
    index: int
    rank_matrix: RankMatrix
    score: float
    classification: Classification
    final_density: float
    final_activity: float

    def record(self) -> str:
        """One tab-separated line: index, topology, matrix, score, class, density, activity."""
        return "\t".join(
            [
                str(self.index),
                self.rank_matrix.topology.kind,
                self.rank_matrix.inline(),
                f"{self.score:.6f}",
                self.classification.label(),
                f"{self.final_density:.6f}",
                f"{self.final_activity:.6f}",
            ]
        )


def evaluate(
    rm: RankMatrix,
    rule: UpdateRule,
    seed: int,
    rows: int,
    cols: int,
    horizon: int,
    index: int = 0,
) -> ExploreResult:
    """Run `rm` from a bernoulli(0.5) start grid seeded by `seed` and score it."""
    initial = make_grid(rows, cols, InitSpec(kind="bernoulli", p=0.5), seed, rm.topology)
    classification = classify(initial, rm, rm.topology, rule, horizon)
    series = activity_to_horizon(classification)
    return ExploreResult(
        index=index,
        rank_matrix=rm,
        score=interest_score(classification),
        classification=classification,
        final_density=classification.density[-1],
        final_activity=series[-1] if series else 0.0,
    )


def _explore_one(job: Tuple[Topology, UpdateRule, int, int, int, int, int]) -> ExploreResult:
    topology, rule, index, seed, rows, cols, horizon = job
    rm = random_rank_matrix(topology, sample_seed(seed, index))
    result = evaluate(rm, rule, start_seed(seed), rows, cols, horizon, index)
    logger.debug("explore sample %d: %s score=%.6f", index, rm.inline(), result.score)
    return result


def explore(
    topology: Topology,
    rule: UpdateRule,
    budget: int,
    seed: int,
    rows: int,
    cols: int,
    horizon: int,
    workers: Optional[int] = None,
) -> List[ExploreResult]:
    """Score `budget` random rank matrices; highest score first, ties by sample index."""
    if budget < 1:
        raise ValueError(f"budget must be at least 1, got {budget}")
    workers = get_settings().workers if workers is None else workers
    jobs = ((topology, rule, i, seed, rows, cols, horizon) for i in range(budget))
    results = list(ordered_map(_explore_one, jobs, workers))
    results.sort(key=lambda r: (-r.score, r.index))
    logger.info("explored %d %s rank matrices, best score %.6f", budget, topology.kind, results[0].score)
    return results
