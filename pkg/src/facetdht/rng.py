"""Deterministic 64-bit linear congruential generator.

Used for node-identifier draws and benchmark query generation so that
artifacts never depend on platform or interpreter PRNG details. Constants
are Knuth's MMIX parameters.
"""

MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407
_MASK = (1 << 64) - 1


class Lcg64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state * MULTIPLIER + INCREMENT) & _MASK
        return self.state

    def below(self, bound: int) -> int:
        """Draw from [0, bound). Upper state bits only; low LCG bits cycle short."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        return (self.next_u64() >> 33) % bound

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def distinct_below(self, bound: int, count: int) -> list[int]:
        """``count`` distinct draws from [0, bound), in draw order."""
        if count > bound:
            raise ValueError(f"cannot draw {count} distinct values below {bound}")
        seen: set[int] = set()
        out: list[int] = []
        while len(out) < count:
            v = self.below(bound)
            if v not in seen:
                seen.add(v)
                out.append(v)
        return out
