"""
Portable seedable generator.

SplitMix64 (Steele, Lea, Flood 2014), reference algorithm:

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)

all arithmetic modulo 2**64. Doubles are (z >> 11) * 2**-53; bounded
integers use rejection sampling on the raw output. The stream is
bit-identical on every platform and easy to reproduce in other languages.
"""

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
DOUBLE_UNIT = 1.0 / (1 << 53)


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """
    SplitMix64 generator.

    Attributes:
    - state: int, current 64-bit state
    """

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        """Next raw 64-bit output."""
        self.state = (self.state + GAMMA) & MASK64
        return _mix(self.state)

    def random(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next() >> 11) * DOUBLE_UNIT

    def below(self, n: int) -> int:
        """Unbiased integer in [0, n)."""
        if n <= 0:
            raise ValueError(f"bound must be positive, got {n}")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            z = self.next()
            if z < limit:
                return z % n

    def next_array(self, count: int) -> np.ndarray:
        """
        The next `count` raw outputs as a uint64 array.

        Equal to calling next() `count` times; SplitMix64 is counter-based,
        so the whole block is computed at once.
        """
        steps = np.arange(1, count + 1, dtype=np.uint64)
        z = steps * np.uint64(GAMMA) + np.uint64(self.state)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
        z = z ^ (z >> np.uint64(31))
        self.state = (self.state + count * GAMMA) & MASK64
        return z

    def random_array(self, count: int) -> np.ndarray:
        """The next `count` uniform doubles in [0, 1)."""
        return (self.next_array(count) >> np.uint64(11)).astype(np.float64) * DOUBLE_UNIT
