"""Deterministic 64-bit random stream for seeded generators and suites.

Every seeded result in this package must be reproducible bit-for-bit across
platforms and independent implementations, so the algorithm is pinned here
instead of delegating to a library RNG: a splitmix-style generator whose
state advances by the 64-bit golden-ratio constant and whose output is the
standard two-round xor-multiply finalizer.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(x: int) -> int:
    """Finalizer round: bijectively scrambles a 64-bit integer."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * _MIX1) & _MASK64
    x = ((x ^ (x >> 27)) * _MIX2) & _MASK64
    return x ^ (x >> 31)


class SplitMix64:
    """Sequential stream: ``state += gamma; output = mix64(state)``."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return mix64(self._state)

    def chance(self, p: float) -> bool:
        """One draw, true with probability ~p (integer threshold, no float
        comparisons downstream of the draw)."""
        return self.next_u64() < int(p * 2.0**64)

    def randrange(self, n: int) -> int:
        """Value in [0, n); the modulo bias is irrelevant at our scales but
        the exact rule is part of the pinned algorithm."""
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        return self.next_u64() % n
