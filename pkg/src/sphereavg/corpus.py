"""Deterministic test-function families.

Random values come from a 64-bit linear congruential generator
``state <- (6364136223846793005 * state + 1442695040888963407) mod 2^64``
(Knuth's MMIX constants). Each draw takes the high 32 bits of the new state
modulo the size of the value set, so corpora are reproducible bit-for-bit in
any language.
"""

from __future__ import annotations

import string

from .grid import GridFunction

LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
_MASK = 2**64 - 1

DEFAULT_VALUES = (-3, -2, -1, 0, 1, 2, 3)
NONNEGATIVE_VALUES = (0, 1, 2, 3)
SIGNS = (-1, 1)


class LCG:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u32(self) -> int:
        self.state = (LCG_MULTIPLIER * self.state + LCG_INCREMENT) & _MASK
        return self.state >> 32

    def choice(self, values):
        return values[self.next_u32() % len(values)]


def random_function(rng: LCG, lo: int, hi: int, values=DEFAULT_VALUES) -> GridFunction:
    """Integer-valued function on [lo, hi] with entries drawn from ``values``."""
    return GridFunction(lo, [rng.choice(values) for _ in range(lo, hi + 1)])


def random_tuple(seed: int, n: int, lo: int = -2, hi: int = 2,
                 values=DEFAULT_VALUES) -> list[GridFunction]:
    """n functions drawn in sequence from one generator."""
    rng = LCG(seed)
    return [random_function(rng, lo, hi, values) for _ in range(n)]


def random_signs(seed: int, N: int) -> GridFunction:
    """+-1 values on [-N, N]."""
    return random_function(LCG(seed), -N, N, SIGNS)


def chi(M: int) -> GridFunction:
    """Indicator of [-2M, 2M]."""
    return GridFunction.indicator(-2 * M, 2 * M)


def build_corpus(seed: int = 1, chi_sizes=(16,), n_random: int = 5,
                 lo: int = -2, hi: int = 2, values=DEFAULT_VALUES) -> dict[str, GridFunction]:
    """Labelled corpus: "delta", "chi_<M>" for each M, then "rand_a", "rand_b", ...

    The random members are drawn consecutively from ``LCG(seed)``.
    """
    corpus = {"delta": GridFunction.delta()}
    for M in chi_sizes:
        corpus[f"chi_{M}"] = chi(M)
    rng = LCG(seed)
    for letter in string.ascii_lowercase[:n_random]:
        corpus[f"rand_{letter}"] = random_function(rng, lo, hi, values)
    return corpus
