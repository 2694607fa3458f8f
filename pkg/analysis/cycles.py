"""
Cycle classification of deterministic trajectories.

States are keyed by digest; a digest hit is only reported as a cycle after
a full comparison with the earlier state.
"""

import logging
from itertools import islice
from typing import Dict, Iterable, Iterator, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field

from analysis.metrics import activity, density, digest
from engine.dynamics import UpdateRule, trajectory
from lattice.grid import Grid
from lattice.topology import Topology
from rankmodel.rank_matrix import RankMatrix

logger = logging.getLogger(__name__)


class Classification(BaseModel):
    """
    Outcome of following a trajectory up to a horizon.

    `activity[i]` is the activity of the transition into state i + 1 and
    `density[i]` the density of state i, for every state visited.
    """

    kind: Literal["fixed_point", "periodic", "undetermined"]
    horizon: int
    period: Optional[int] = None
    transient: Optional[int] = None
    uniform_at: Optional[int] = None
    activity: List[float] = Field(default_factory=list)
    density: List[float] = Field(default_factory=list)

    @property
    def detected_at(self) -> Optional[int]:
        """Step index at which the repeated state was observed."""
        if self.kind == "undetermined":
            return None
        return self.transient + self.period

    def label(self) -> str:
        if self.kind == "fixed_point":
            return f"fixed_point(transient={self.transient})"
        if self.kind == "periodic":
            return f"periodic(period={self.period},transient={self.transient})"
        return f"undetermined(horizon={self.horizon})"


def find_cycle(states: Iterable[Grid], horizon: int) -> Optional[Tuple[int, int]]:
    """
    First repeat among states 0..horizon as (transient, period): the index
    of the first occurrence and the distance to its repetition.
    """
    seen: Dict[str, List[Tuple[int, Grid]]] = {}
    for index, state in enumerate(islice(states, horizon + 1)):
        key = digest(state)
        for earlier, earlier_state in seen.get(key, ()):
            if earlier_state == state:
                return earlier, index - earlier
        seen.setdefault(key, []).append((index, state))
    return None


def classify_states(states: Iterable[Grid], horizon: int) -> Classification:
    """
    Classify a trajectory given as its successive states, starting with the
    initial grid. At most horizon + 1 states are consumed.
    """
    if horizon < 1:
        raise ValueError(f"horizon must be at least 1, got {horizon}")

    activity_series: List[float] = []
    density_series: List[float] = []
    uniform_at: List[int] = []

    def observed() -> Iterator[Grid]:
        previous = None
        for index, state in enumerate(states):
            if previous is not None:
                activity_series.append(activity(previous, state))
            density_series.append(density(state))
            if not uniform_at and state.is_uniform():
                uniform_at.append(index)
            yield state
            previous = state

    found = find_cycle(observed(), horizon)
    common = dict(
        horizon=horizon,
        uniform_at=uniform_at[0] if uniform_at else None,
        activity=activity_series,
        density=density_series,
    )
    if found is None:
        return Classification(kind="undetermined", **common)
    transient, period = found
    kind = "fixed_point" if period == 1 else "periodic"
    return Classification(kind=kind, period=period, transient=transient, **common)


def classify(
    initial: Grid,
    rm: RankMatrix,
    topology: Topology,
    rule: UpdateRule = UpdateRule.BEST_IN_NEIGHBORHOOD,
    horizon: int = 200,
) -> Classification:
    result = classify_states(trajectory(initial, rm, topology, rule), horizon)
    logger.debug("classified %s: %s", rm.inline(), result.label())
    return result
