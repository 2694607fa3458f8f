"""Persist command results; every writer runs in its own session."""

import logging
from typing import Iterable, Optional

from analysis.census import CensusResult
from analysis.explore import ExploreResult
from database.connection import session_scope
from database.init_db import init_database
from database.models import CensusRecord, ExplorationRecord, SimulationRecord

logger = logging.getLogger(__name__)


def save_explorations(results: Iterable[ExploreResult], rule: str, seed: int) -> int:
    init_database()
    rows = [
        ExplorationRecord(
            topology=r.rank_matrix.topology.kind,
            rule=rule,
            seed=str(seed),
            sample_index=r.index,
            rank_matrix=r.rank_matrix.inline(),
            score=r.score,
            classification=r.classification.label(),
            final_density=r.final_density,
            final_activity=r.final_activity,
        )
        for r in results
    ]
    with session_scope() as db:
        db.add_all(rows)
    logger.info("recorded %d exploration results", len(rows))
    return len(rows)


def save_census(result: CensusResult) -> None:
    init_database()
    with session_scope() as db:
        db.add(
            CensusRecord(
                topology=result.topology,
                samples=result.samples,
                seed=str(result.seed),
                realizable=result.realizable,
                solver_failures=result.solver_failures,
                proportion=result.proportion,
                half_width=result.half_width,
            )
        )


def save_simulation(
    manifest_json: str,
    steps: int,
    final_density: float,
    final_digest: str,
    classification: Optional[str] = None,
) -> None:
    init_database()
    with session_scope() as db:
        db.add(
            SimulationRecord(
                manifest=manifest_json,
                steps=steps,
                final_density=final_density,
                final_digest=final_digest,
                classification=classification,
            )
        )
