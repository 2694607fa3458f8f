"""
Decide whether a rank matrix arises from some 2x2 game by linear payoff sums.

The payoff sums are linear in (a, b, c, d). Listing the (s, k) cells by
rank, every consecutive pair must satisfy a strict inequality. The
homogeneous strict system is solved as a linear program: maximize a
common slack t subject to |a|, |b|, |c|, |d| <= 1. The matrix is
realizable iff the optimal t exceeds the tolerance; a positive answer is
certified by re-deriving the rank matrix from the witness game exactly.

Two backends: "highs" (scipy, floating point) and "exact" (sympy's
rational simplex).
"""

import logging
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from config import get_settings
from errors import NonGenericGameError, SolverFailureError
from rankmodel.game import GameMatrix
from rankmodel.rank_matrix import RankMatrix, derive_rank_matrix

logger = logging.getLogger(__name__)

BOX = (-1, 1)


class RealizabilityResult(BaseModel):
    realizable: bool
    witness: Optional[GameMatrix] = None
    margin: Optional[float] = None
    backend: str = "highs"

    model_config = ConfigDict(frozen=True)


def _payoff_coefficients(s: int, k: int, n: int) -> List[int]:
    if s == 0:
        return [n - k, k, 0, 0]
    return [0, 0, n - k, k]


def ordering_constraints(rm: RankMatrix) -> List[List[int]]:
    """
    Rows of A_ub over (a, b, c, d, t) for A_ub x <= 0: for each pair of
    consecutively ranked cells, payoff(next) - payoff(prev) >= t.
    """
    n = rm.neighbor_count
    by_rank = sorted(
        ((rm.rank(s, k), s, k) for s in (0, 1) for k in range(n + 1))
    )
    rows = []
    for (_, s0, k0), (_, s1, k1) in zip(by_rank, by_rank[1:]):
        lower = _payoff_coefficients(s0, k0, n)
        upper = _payoff_coefficients(s1, k1, n)
        rows.append([lo - up for lo, up in zip(lower, upper)] + [1])
    return rows


def _solve_highs(rows: List[List[int]]) -> Tuple[float, List[float]]:
    from scipy.optimize import linprog

    result = linprog(
        c=[0, 0, 0, 0, -1],
        A_ub=np.array(rows, dtype=float),
        b_ub=np.zeros(len(rows)),
        bounds=[BOX] * 4 + [(0, None)],
        method="highs",
    )
    if result.status != 0:
        raise SolverFailureError(f"HiGHS failed (status {result.status}): {result.message}")
    return -result.fun, [float(v) for v in result.x[:4]]


def _solve_exact(rows: List[List[int]]) -> Tuple[Fraction, List[Fraction]]:
    """
    The rational simplex holds every tableau column nonnegative; its bounds
    argument keeps the original column too, so a lower bound of -1 acts as 0.
    It therefore solves for (a + 1, b + 1, c + 1, d + 1) in [0, 2]. Each
    constraint row has payoff coefficients summing to zero, so the shift
    leaves the rows unchanged.
    """
    from sympy import Rational
    from sympy.solvers.simplex import InfeasibleLPError, UnboundedLPError
    from sympy.solvers.simplex import linprog as rational_linprog

    low, high = BOX
    caps = [[int(i == j) for j in range(5)] for i in range(4)]
    try:
        value, solution = rational_linprog(
            [0, 0, 0, 0, -1],
            rows + caps,
            [0] * len(rows) + [high - low] * 4,
        )
    except (InfeasibleLPError, UnboundedLPError) as e:
        raise SolverFailureError(f"exact simplex failed: {e}") from e

    def exact(v) -> Fraction:
        # zero entries come back as plain ints
        r = Rational(v)
        return Fraction(int(r.p), int(r.q))

    return -exact(value), [exact(v) + low for v in solution[:4]]


SOLVERS = {"highs": _solve_highs, "exact": _solve_exact}


def is_linear_realizable(
    rm: RankMatrix,
    backend: Optional[str] = None,
    tolerance: Optional[float] = None,
) -> RealizabilityResult:
    """
    Decide linear realizability of `rm`.

    Raises SolverFailureError when the solver does not reach an optimum or
    a positive-margin witness fails certification.
    """
    settings = get_settings()
    backend = backend or settings.lp_backend
    tolerance = settings.realizability_tolerance if tolerance is None else tolerance
    try:
        solve = SOLVERS[backend]
    except KeyError:
        raise ValueError(f"unknown LP backend '{backend}'") from None

    margin, values = solve(ordering_constraints(rm))
    logger.debug("realizability %s: margin=%s", rm.inline(), margin)

    if margin <= tolerance:
        return RealizabilityResult(realizable=False, margin=float(margin), backend=backend)

    witness = GameMatrix.of(*values)
    try:
        certified = derive_rank_matrix(witness, rm.topology) == rm
    except NonGenericGameError:
        certified = False
    if not certified:
        raise SolverFailureError(
            f"witness {witness} with margin {float(margin):.3g} does not reproduce {rm.inline()}"
        )
    return RealizabilityResult(realizable=True, witness=witness, margin=float(margin), backend=backend)
