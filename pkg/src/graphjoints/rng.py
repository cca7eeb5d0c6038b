"""SplitMix64: output ``i`` is a fixed 64-bit mix of ``seed + i * GAMMA``.

Small enough to port bit-exactly to any language; see the README for the
exact recipe used by the generators.
"""
from __future__ import annotations

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection of the biased tail."""
        if not 0 < bound <= 1 << 64:
            raise ValueError(f"bound out of range: {bound}")
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def sample(self, population: int, k: int) -> list[int]:
        """``k`` distinct indices from ``range(population)``, in draw order."""
        if not 0 <= k <= population:
            raise ValueError(f"cannot draw {k} distinct values from {population}")
        seen: set[int] = set()
        out = []
        while len(out) < k:
            x = self.below(population)
            if x not in seen:
                seen.add(x)
                out.append(x)
        return out
