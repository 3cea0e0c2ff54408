"""Seeded pseudo-random numbers from an explicitly specified 64-bit mixer.

The generator is SplitMix64.  It is small enough to re-implement exactly from
this file alone, so a seed produces the same stream on any platform, which
keeps optimizer runs and randomized checks byte-reproducible.
"""
import math

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """Deterministic 64-bit generator with uniform and Gaussian draws."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64
        self._gauss_cache = None

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        """Uniform double in [lo, hi) with 53 random bits."""
        u = (self.next_u64() >> 11) * 2.0 ** -53
        return lo + (hi - lo) * u

    def gauss(self) -> float:
        """Standard normal via Box-Muller; the second deviate is cached."""
        if self._gauss_cache is not None:
            g, self._gauss_cache = self._gauss_cache, None
            return g
        u1 = self.uniform()
        while u1 <= 0.0:
            u1 = self.uniform()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        self._gauss_cache = r * math.sin(2.0 * math.pi * u2)
        return r * math.cos(2.0 * math.pi * u2)

    def integer(self, n: int) -> int:
        """Uniform integer in [0, n).  Modulo bias is negligible for small n."""
        return self.next_u64() % n

    def spawn(self) -> "SplitMix64":
        """Independent child stream."""
        return SplitMix64(self.next_u64())
