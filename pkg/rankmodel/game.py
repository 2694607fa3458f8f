"""
Symmetric 2x2 games and their neighbor-summed payoffs.

Payoffs are held as exact fractions: a float input is read through its
shortest decimal representation, so 0.1 is exactly 1/10 and equalities
between payoff sums are decided without rounding.
"""

import math
from decimal import Decimal
from fractions import Fraction
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator


def to_exact(value) -> Fraction:
    """Exact rational value of a finite int, float, Decimal, Fraction, numpy scalar or numeric string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, np.generic):
        return to_exact(value.item())
    if isinstance(value, bool):
        raise ValueError("payoff must be a number")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"payoff must be finite, got {value}")
        return Fraction(repr(value))
    if isinstance(value, (str, Decimal)):
        try:
            exact = Fraction(value)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"payoff must be a finite number, got {value!r}") from e
        return exact
    raise ValueError(f"payoff must be a number, got {type(value).__name__}")


class GameMatrix(BaseModel):
    """
    Payoffs of the row player: a (0 vs 0), b (0 vs 1), c (1 vs 0), d (1 vs 1).
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @field_validator("a", "b", "c", "d", mode="before")
    @classmethod
    def _finite_exact(cls, value) -> Fraction:
        return to_exact(value)

    @classmethod
    def of(cls, a, b, c, d) -> "GameMatrix":
        return cls(a=a, b=b, c=c, d=d)

    @classmethod
    def parse(cls, text: str) -> "GameMatrix":
        """Parse 'a,b,c,d'."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected four comma-separated payoffs, got {text!r}")
        return cls.of(*parts)

    def relabeled(self) -> "GameMatrix":
        """The same game with strategies 0 and 1 swapped."""
        return GameMatrix.of(self.d, self.c, self.b, self.a)

    def as_tuple(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def __str__(self) -> str:
        return ",".join(_decimal_text(v) for v in self.as_tuple())


def _decimal_text(value: Fraction) -> str:
    """Exact text: a terminating decimal when one exists, otherwise p/q."""
    if value.denominator == 1:
        return str(value.numerator)
    rest, places = value.denominator, 0
    for prime in (2, 5):
        count = 0
        while rest % prime == 0:
            rest //= prime
            count += 1
        places = max(places, count)
    if rest != 1:
        return f"{value.numerator}/{value.denominator}"
    scaled = abs(value.numerator) * 10**places // value.denominator
    whole, fraction = divmod(scaled, 10**places)
    sign = "-" if value < 0 else ""
    return f"{sign}{whole}.{fraction:0{places}d}"


def payoff(game: GameMatrix, s: int, k: int, neighbor_count: int) -> Fraction:
    """
    Summed payoff of a player with strategy s and k type-1 neighbors
    out of N: (N-k)a + kb for s = 0, (N-k)c + kd for s = 1.
    """
    if s not in (0, 1):
        raise ValueError(f"strategy must be 0 or 1, got {s}")
    if not 0 <= k <= neighbor_count:
        raise ValueError(f"k must lie in [0, {neighbor_count}], got {k}")
    if s == 0:
        return (neighbor_count - k) * game.a + k * game.b
    return (neighbor_count - k) * game.c + k * game.d
