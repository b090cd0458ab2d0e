"""Lattice points on spheres: r_n(lam) = #{x in Z^n : |x|^2 = lam}.

Counts are exact. Tables are built as truncated powers of the theta sequence
``t[s] = #{x in Z : x^2 = s}``; each multiplication only touches the
~sqrt(max_lambda) nonzero terms of ``t``.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numba
import numpy as np

from ._budget import budget
from ._poly import _INT64_SAFE
from .errors import CapacityError, InvalidArgument

LatticePoint = tuple[int, ...]

CACHE_MAGIC = b"RNSQ"
CACHE_VERSION = 1
_CACHE_HEADER = struct.Struct("<4sIIQ")
_U64_MAX = 2**64 - 1


@dataclass(frozen=True, eq=False)
class RepCountTable:
    """``counts[lam] == r_n(lam)`` for ``0 <= lam <= max_lambda``."""

    dimension: int
    max_lambda: int
    counts: np.ndarray

    def __getitem__(self, lam: int) -> int:
        return int(self.counts[lam])

    def __len__(self) -> int:
        return self.max_lambda + 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, RepCountTable):
            return NotImplemented
        return (
            self.dimension == other.dimension
            and self.max_lambda == other.max_lambda
            and bool(np.all(self.counts == other.counts))
        )

    def prefix(self, max_lambda: int) -> RepCountTable:
        if max_lambda > self.max_lambda:
            raise InvalidArgument("prefix longer than table")
        return RepCountTable(self.dimension, max_lambda, self.counts[: max_lambda + 1])

    def save(self, path) -> None:
        """Write the binary cache: header then (max_lambda + 1) little-endian u64."""
        counts = self.counts
        if counts.dtype == object:
            big = [lam for lam, c in enumerate(counts) if c > _U64_MAX]
            if big:
                raise CapacityError(
                    f"r_{self.dimension}({big[0]}) does not fit in u64; cache not written"
                )
        payload = np.asarray(counts, dtype=np.uint64).astype("<u8").tobytes()
        header = _CACHE_HEADER.pack(CACHE_MAGIC, CACHE_VERSION, self.dimension, self.max_lambda)
        Path(path).write_bytes(header + payload)

    @classmethod
    def load(cls, path) -> RepCountTable:
        data = Path(path).read_bytes()
        if len(data) < _CACHE_HEADER.size:
            raise InvalidArgument(f"{path}: truncated cache header")
        magic, version, n, max_lambda = _CACHE_HEADER.unpack_from(data)
        if magic != CACHE_MAGIC:
            raise InvalidArgument(f"{path}: bad magic {magic!r}")
        if version != CACHE_VERSION:
            raise InvalidArgument(f"{path}: unsupported cache version {version}")
        body = data[_CACHE_HEADER.size:]
        if len(body) != 8 * (max_lambda + 1):
            raise InvalidArgument(f"{path}: expected {max_lambda + 1} counts")
        raw = np.frombuffer(body, dtype="<u8")
        if raw.size and int(raw.max()) >= _INT64_SAFE:
            counts = np.array([int(v) for v in raw], dtype=object)
        else:
            counts = raw.astype(np.int64)
        counts.flags.writeable = False
        return cls(int(n), int(max_lambda), counts)


def theta_sequence(limit: int) -> np.ndarray:
    """t[s] = number of integers x with x^2 = s, for 0 <= s <= limit."""
    t = np.zeros(limit + 1, dtype=np.int64)
    t[0] = 1
    k = np.arange(1, math.isqrt(limit) + 1)
    t[k * k] = 2
    return t


def _theta_power(n: int, limit: int) -> np.ndarray:
    acc = np.zeros(limit + 1, dtype=np.int64)
    acc[0] = 1
    if n == 0:
        return acc
    acc = theta_sequence(limit)
    squares = [k * k for k in range(1, math.isqrt(limit) + 1)]
    for _ in range(n - 1):
        if int(acc.max()) * (2 * len(squares) + 1) >= _INT64_SAFE:
            acc = acc.astype(object)
        shifted = np.zeros_like(acc)
        for s in squares:
            shifted[s:] += acc[: limit + 1 - s]
        acc = acc + 2 * shifted
    return acc


def rep_count_table(n: int, max_lambda: int) -> RepCountTable:
    """Exact r_n(lam) for every 0 <= lam <= max_lambda.

    Counts exceeding int64 are carried as Python ints (object array), so the
    table itself never overflows; ``RepCountTable.save`` refuses counts that do
    not fit the u64 cache format.
    """
    if n < 1:
        raise InvalidArgument(f"dimension must be >= 1, got {n}")
    if max_lambda < 0:
        raise InvalidArgument(f"max_lambda must be >= 0, got {max_lambda}")
    counts = _theta_power(n, max_lambda)
    counts.flags.writeable = False
    return RepCountTable(n, max_lambda, counts)


def rep_count_single(n: int, lam: int) -> int:
    """r_n(lam) by meet-in-the-middle.

    The coordinates are split into halves of sizes n//2 and n - n//2; the
    multiset of squared lengths of each half (restricted to <= lam) is built
    independently and the two are joined on complementary sums.
    """
    if n < 1:
        raise InvalidArgument(f"dimension must be >= 1, got {n}")
    if lam < 0:
        raise InvalidArgument(f"lam must be >= 0, got {lam}")
    left = _theta_power(n // 2, lam)
    right = _theta_power(n - n // 2, lam)
    return sum(int(a) * int(b) for a, b in zip(left, right[::-1]) if a and b)


def _factorize(m: int) -> dict[int, int]:
    factors: dict[int, int] = {}
    for p in (2, 3):
        while m % p == 0:
            factors[p] = factors.get(p, 0) + 1
            m //= p
    p = 5
    while p * p <= m:
        for q in (p, p + 2):
            while m % q == 0:
                factors[q] = factors.get(q, 0) + 1
                m //= q
        p += 6
    if m > 1:
        factors[m] = factors.get(m, 0) + 1
    return factors


def jacobi_four_square(lam: int) -> int:
    """r_4(lam) = 8 * sum of the divisors d of lam with 4 not dividing d."""
    if lam < 1:
        raise InvalidArgument(f"jacobi_four_square needs lam >= 1, got {lam}")
    divisors = [1]
    for p, e in _factorize(lam).items():
        divisors = [d * p**k for d in divisors for k in range(e + 1)]
    return 8 * sum(d for d in divisors if d % 4)


def enumerate_sphere(n: int, lam: int, limit: int | None = None) -> list[LatticePoint]:
    """All x in Z^n with |x|^2 = lam, in lexicographic order.

    Raises CapacityError when r_n(lam) exceeds ``limit`` (default: the
    ``SPHEREAVG_BUDGET`` cap).
    """
    if n < 1:
        raise InvalidArgument(f"dimension must be >= 1, got {n}")
    if lam < 0:
        raise InvalidArgument(f"lam must be >= 0, got {lam}")
    limit = budget() if limit is None else limit
    size = rep_count_single(n, lam)
    if size > limit:
        raise CapacityError(f"r_{n}({lam}) = {size} points exceeds output limit {limit}")

    out: list[LatticePoint] = []
    prefix: list[int] = []

    def walk(remaining: int, slots: int) -> None:
        if slots == 1:
            r = math.isqrt(remaining)
            if r * r == remaining:
                for x in ((-r, r) if r else (0,)):
                    out.append((*prefix, x))
            return
        b = math.isqrt(remaining)
        for x in range(-b, b + 1):
            prefix.append(x)
            walk(remaining - x * x, slots - 1)
            prefix.pop()

    walk(lam, n)
    return out


@numba.njit(cache=True)
def _isqrt_nb(m):
    r = int(np.sqrt(m))
    while r * r > m:
        r -= 1
    while (r + 1) * (r + 1) <= m:
        r += 1
    return r


@numba.njit(cache=True)
def _ball_histogram(n, limit):
    hist = np.zeros(limit + 1, np.int64)
    if n == 1:
        b = _isqrt_nb(limit)
        for v in range(-b, b + 1):
            hist[v * v] += 1
        return hist
    outer = n - 1
    x = np.zeros(outer, np.int64)
    bound = np.zeros(outer, np.int64)
    partial = np.zeros(outer, np.int64)
    lev = 0
    bound[0] = _isqrt_nb(limit)
    x[0] = -bound[0]
    while True:
        if x[lev] > bound[lev]:
            lev -= 1
            if lev < 0:
                break
            x[lev] += 1
            continue
        s = partial[lev] + x[lev] * x[lev]
        if lev == outer - 1:
            bb = _isqrt_nb(limit - s)
            for v in range(-bb, bb + 1):
                hist[s + v * v] += 1
            x[lev] += 1
        else:
            lev += 1
            partial[lev] = s
            bound[lev] = _isqrt_nb(limit - s)
            x[lev] = -bound[lev]
    return hist


def enumerated_counts(n: int, max_lambda: int) -> np.ndarray:
    """r_n(lam) for lam <= max_lambda by visiting every lattice point of the ball.

    Independent brute-force oracle; cost is the ball's point count.
    """
    if n < 1 or max_lambda < 0:
        raise InvalidArgument("need n >= 1 and max_lambda >= 0")
    return _ball_histogram(n, max_lambda)


class RatioStats(NamedTuple):
    min_ratio: float
    max_ratio: float
    argmin: int
    argmax: int


def asymptotic_ratio_stats(table: RepCountTable, lam_min: int = 1,
                           lam_max: int | None = None) -> RatioStats:
    """Extremes of r_n(lam) / lam^(n/2 - 1) over lam_min <= lam <= lam_max.

    Ties resolve to the smallest lam.
    """
    lam_max = table.max_lambda if lam_max is None else lam_max
    if lam_min < 1:
        raise InvalidArgument("lam_min must be >= 1 (lam = 0 is excluded)")
    if lam_max > table.max_lambda or lam_max < lam_min:
        raise InvalidArgument(f"empty or out-of-table range [{lam_min}, {lam_max}]")
    lam = np.arange(lam_min, lam_max + 1, dtype=np.float64)
    counts = np.array([float(c) for c in table.counts[lam_min:lam_max + 1]]) \
        if table.counts.dtype == object else table.counts[lam_min:lam_max + 1].astype(np.float64)
    ratios = counts / lam ** (table.dimension / 2 - 1)
    i_min, i_max = int(np.argmin(ratios)), int(np.argmax(ratios))
    return RatioStats(float(ratios[i_min]), float(ratios[i_max]), lam_min + i_min, lam_min + i_max)
