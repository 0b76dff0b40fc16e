"""
Seeded 64-bit generator for verification trials.

The stream is SplitMix64: the state advances by 0x9E3779B97F4A7C15 and each
output is the state passed through

    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)

with all arithmetic mod 2^64. Trial t of suite S under seed s draws from a
generator seeded with trial_seed(s, S, t), so any failure can be replayed
from (seed, suite, trial) alone, in any language, in any order.
"""

import zlib
from typing import Sequence, TypeVar

T = TypeVar("T")

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def suite_tag(suite: str) -> int:
    """CRC-32 of the suite name (UTF-8)."""
    return zlib.crc32(suite.encode("utf-8"))


def trial_seed(seed: int, suite: str, trial: int) -> int:
    """mix64(seed ^ (tag << 32) + (trial + 1) * gamma), all mod 2^64."""
    base = (seed ^ (suite_tag(suite) << 32)) & MASK64
    return mix64((base + (trial + 1) * GOLDEN_GAMMA) & MASK64)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection of the biased tail."""
        if bound < 1:
            raise ValueError(f"bound must be >= 1, got {bound}")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            value = self.next_u64()
            if value < limit:
                return value % bound

    def between(self, low: int, high: int) -> int:
        """Uniform integer in [low, high]."""
        return low + self.below(high - low + 1)

    def choice(self, options: Sequence[T]) -> T:
        return options[self.below(len(options))]

    def chance(self, numerator: int, denominator: int) -> bool:
        return self.below(denominator) < numerator
