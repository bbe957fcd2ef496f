"""
Seeded pseudo-random source.

A splitmix64 generator: small, fully specified, and reproducible in any
language, so search results depend only on the seed.
"""

from fractions import Fraction
from typing import List

import numpy as np


_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    """splitmix64 stream; every draw advances the 64-bit state once."""

    def __init__(self, seed: int = 0):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def rational(self) -> Fraction:
        """Integer in [-9, 9] as a Fraction (denominator 1)."""
        return Fraction(self.next_u64() % 19 - 9)

    def nonzero_rational(self) -> Fraction:
        while True:
            q = self.rational()
            if q:
                return q

    def vector(self, dim: int) -> np.ndarray:
        v = np.empty(dim, dtype=object)
        for i in range(dim):
            v[i] = self.rational()
        return v

    def choice(self, count: int) -> int:
        return self.next_u64() % count

    def coefficients(self, count: int) -> List[Fraction]:
        return [self.rational() for _ in range(count)]
