"""Finitely supported functions on the integers."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Integral, Rational

import numpy as np

from ._poly import as_exact_ints


def _exact_scalar(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else v
    if isinstance(v, (Integral, np.integer)):
        return int(v)
    if isinstance(v, Rational):
        return _exact_scalar(Fraction(v))
    raise TypeError(v)


def _is_exact_scalar(v) -> bool:
    return isinstance(v, (Rational, np.integer)) and not isinstance(v, bool)


def _normalize(values) -> np.ndarray:
    seq = list(values)
    if all(_is_exact_scalar(v) for v in seq):
        arr = np.empty(len(seq), dtype=object)
        for i, v in enumerate(seq):
            arr[i] = _exact_scalar(v)
        return arr
    arr = np.asarray(seq)
    if np.iscomplexobj(arr):
        return arr.astype(np.complex128)
    return arr.astype(np.float64)


class GridFunction:
    """A function Z -> scalars that vanishes outside ``[offset, offset + len(values))``.

    Values are stored exactly (Python ints / Fractions in an object array) when
    every input value is rational, and as float64 / complex128 otherwise. The
    window is trimmed so the first and last stored values are nonzero; the zero
    function has an empty window and offset 0.
    """

    __slots__ = ("offset", "values")

    def __init__(self, offset: int, values=()):
        arr = _normalize(values)
        nz = np.flatnonzero(arr != 0)
        if nz.size == 0:
            self.offset = 0
            self.values = arr[:0]
        else:
            self.offset = int(offset) + int(nz[0])
            self.values = arr[nz[0]:nz[-1] + 1]
        self.values.flags.writeable = False

    # constructors

    @classmethod
    def zero(cls) -> GridFunction:
        return cls(0, [])

    @classmethod
    def delta(cls, at: int = 0, value=1) -> GridFunction:
        return cls(at, [value])

    @classmethod
    def indicator(cls, lo: int, hi: int) -> GridFunction:
        """Indicator of the integer interval [lo, hi]."""
        return cls(lo, [1] * max(0, hi - lo + 1))

    @classmethod
    def from_dict(cls, mapping) -> GridFunction:
        if not mapping:
            return cls.zero()
        lo, hi = min(mapping), max(mapping)
        return cls(lo, [mapping.get(x, 0) for x in range(lo, hi + 1)])

    # basic queries

    @property
    def exact(self) -> bool:
        return self.values.dtype == object

    @property
    def is_zero(self) -> bool:
        return self.values.size == 0

    @property
    def lo(self) -> int | None:
        return None if self.is_zero else self.offset

    @property
    def hi(self) -> int | None:
        return None if self.is_zero else self.offset + self.values.size - 1

    def __len__(self) -> int:
        return self.values.size

    def __call__(self, y: int):
        i = y - self.offset
        if 0 <= i < self.values.size:
            return self.values[i]
        return 0 if self.exact or self.is_zero else self.values.dtype.type(0)

    def items(self):
        for i, v in enumerate(self.values):
            yield self.offset + i, v

    def window(self, a: int, b: int) -> np.ndarray:
        """Dense values on [a, b] (zero-padded)."""
        if b < a:
            return self.values[:0].copy()
        dtype = self.values.dtype if self.values.size else object
        out = np.zeros(b - a + 1, dtype=dtype)
        if self.is_zero:
            return out
        lo, hi = max(a, self.lo), min(b, self.hi)
        if lo <= hi:
            out[lo - a:hi - a + 1] = self.values[lo - self.offset:hi - self.offset + 1]
        return out

    def distance_bound(self, y: int) -> int:
        """Largest |y - s| over s in the support hull (0 for the zero function)."""
        if self.is_zero:
            return 0
        return max(abs(y - self.lo), abs(y - self.hi))

    # transformations

    def shift(self, t: int) -> GridFunction:
        """The function y -> f(y - t)."""
        return GridFunction(self.offset + t, self.values)

    def scale(self, c) -> GridFunction:
        return GridFunction(self.offset, [c * v for v in self.values])

    def abs(self) -> GridFunction:
        return GridFunction(self.offset, [abs(v) for v in self.values])

    def abs_squared(self) -> GridFunction:
        if self.exact:
            return GridFunction(self.offset, [v * v for v in self.values])
        return GridFunction(self.offset, np.abs(self.values) ** 2)

    def to_float(self) -> GridFunction:
        if not self.exact:
            return self
        vals = [complex(v) if isinstance(v, complex) else float(v) for v in self.values]
        return GridFunction(self.offset, np.asarray(vals, dtype=np.float64))

    def integer_scaled(self) -> tuple[np.ndarray, int]:
        """(integer values, denominator) with f = values / denominator; exact mode only."""
        if not self.exact:
            raise TypeError("integer_scaled requires an exact GridFunction")
        den = 1
        for v in self.values:
            if isinstance(v, Fraction):
                den = math.lcm(den, v.denominator)
        ints = [int(v * den) for v in self.values]
        return as_exact_ints(ints), den

    def __eq__(self, other) -> bool:
        if not isinstance(other, GridFunction):
            return NotImplemented
        return (
            self.offset == other.offset
            and self.values.size == other.values.size
            and bool(np.all(self.values == other.values))
        )

    def __repr__(self) -> str:
        if self.is_zero:
            return "GridFunction.zero()"
        shown = list(self.values[:8])
        more = ", ..." if self.values.size > 8 else ""
        return f"GridFunction(offset={self.offset}, values={shown}{more})"
