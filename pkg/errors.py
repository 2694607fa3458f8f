"""
Exceptions raised across the simulator.

Each class carries the process exit code the command line maps it to.
"""

from typing import List, Tuple


class SpatialGameError(Exception):
    """Base class for every error the command line reports."""

    exit_code = 1


class InvalidDimensionsError(SpatialGameError):
    """Grid dimensions are not admissible for the topology."""

    exit_code = 2


class GridFormatError(SpatialGameError):
    """Explicit grid listing is malformed."""

    exit_code = 2


class RankMatrixFormatError(SpatialGameError):
    """Rank-matrix text is malformed or not a permutation."""

    exit_code = 2


class TopologyMismatchError(SpatialGameError):
    exit_code = 2


class PatchSizeError(SpatialGameError):
    exit_code = 2


class ManifestError(SpatialGameError):
    """Run manifest or command-line arguments are invalid."""

    exit_code = 2


class NonGenericGameError(SpatialGameError):
    """Two or more payoff sums of a game coincide."""

    exit_code = 3

    def __init__(self, collisions: List[Tuple[Tuple[int, int], ...]]):
        self.collisions = collisions
        groups = "; ".join(
            " = ".join(f"(s={s}, k={k})" for s, k in group) for group in collisions
        )
        super().__init__(f"non-generic game, equal payoffs: {groups}")


class SolverFailureError(SpatialGameError):
    """The feasibility solver failed (distinct from an infeasible answer)."""

    exit_code = 5


class OutputError(SpatialGameError):
    exit_code = 6


# Exit code for a NOT_REALIZABLE answer from check-linear; not an error.
EXIT_NOT_REALIZABLE = 4
