"""Quadratic Weyl sums, circle-method reconstruction of A_lam, and numerical
checks of the restriction estimate and the Hoelder step built on it.

Integrals over the torus R/Z of trigonometric polynomials are computed by
coefficient extraction (orthogonality of e(m alpha)); uniform-grid quadrature
is used only for odd moments |W|^n, which are not polynomials in e(alpha).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from ._poly import sparse_mul
from .averages import apply_average, counts_upto, r_count
from .errors import DegenerateInput, InvalidArgument, NonConvergenceError
from .grid import GridFunction

EXACT_EVEN = "exact-even"
QUADRATURE = "quadrature"
_METHOD_ALIASES = {"exact": EXACT_EVEN, "exact-even": EXACT_EVEN,
                   "quad": QUADRATURE, "quadrature": QUADRATURE}
MAX_QUADRATURE_POINTS = 2**24


def e(t):
    """The additive character e(t) = exp(2 pi i t)."""
    return np.exp(2j * np.pi * np.asarray(t, dtype=np.float64))


def n_lambda(lam: int) -> int:
    """Nearest integer to 2*sqrt(lam).

    Computed exactly as the largest N with (2N - 1)^2 <= 16 lam; a tie would
    need 16 lam to be an odd square, so half-up rounding never triggers.
    """
    if lam < 1:
        raise InvalidArgument(f"lam must be >= 1, got {lam}")
    return (math.isqrt(16 * lam) + 1) // 2


def weyl_sum(f: GridFunction, N: int, alpha, y: int = 0):
    """W(alpha) = sum_{|x| <= N} f(y - x) e(x^2 alpha); ``alpha`` may be an array."""
    if N < 0:
        raise InvalidArgument(f"N must be >= 0, got {N}")
    alpha = np.asarray(alpha, dtype=np.float64)
    xs = np.arange(-N, N + 1)
    vals = np.array([complex(f(y - x)) for x in xs])
    keep = vals != 0
    phases = e(np.multiply.outer(alpha, xs[keep] ** 2))
    out = phases @ vals[keep]
    return complex(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class WeylCoefficients:
    """Sparse trigonometric polynomial alpha -> sum_s coeffs[s] e(s alpha).

    Frequencies are the perfect squares x^2 with |x| <= N; ``y`` records the
    evaluation point of the underlying W(alpha, y).
    """

    coeffs: dict
    N: int
    y: int = 0

    def __call__(self, alpha):
        if not self.coeffs:
            return np.zeros_like(np.asarray(alpha, dtype=np.complex128))
        s = np.array(list(self.coeffs))
        c = np.array([complex(v) for v in self.coeffs.values()])
        out = e(np.multiply.outer(np.asarray(alpha, dtype=np.float64), s)) @ c
        return complex(out) if out.ndim == 0 else out

    @property
    def exact(self) -> bool:
        return all(isinstance(v, (int, Fraction)) for v in self.coeffs.values())

    def dense(self) -> tuple[np.ndarray, int]:
        """(vector v, d) with coefficient at frequency s equal to v[s] / d, 0 <= s <= N^2."""
        if self.exact:
            den = math.lcm(1, *(Fraction(v).denominator for v in self.coeffs.values()))
            out = np.zeros(self.N * self.N + 1, dtype=object)
            for s, v in self.coeffs.items():
                out[s] = int(v * den)
            return out, den
        out = np.zeros(self.N * self.N + 1, dtype=np.complex128)
        for s, v in self.coeffs.items():
            out[s] = v
        return out, 1


def weyl_coefficients(f: GridFunction, N: int, y: int = 0) -> WeylCoefficients:
    """Coefficients of W(., y): f(y) at s = 0, f(y - x) + f(y + x) at s = x^2, 1 <= x <= N."""
    if N < 0:
        raise InvalidArgument(f"N must be >= 0, got {N}")
    coeffs = {}
    c0 = f(y)
    if c0 != 0:
        coeffs[0] = c0
    for x in range(1, N + 1):
        c = f(y - x) + f(y + x)
        if c != 0:
            coeffs[x * x] = c
    return WeylCoefficients(coeffs, N, y)


def _convolve_dicts(a: dict, b: dict, limit: int) -> dict:
    out: dict = {}
    for s, u in a.items():
        for t, v in b.items():
            if s + t <= limit:
                out[s + t] = out.get(s + t, 0) + u * v
    return out


def reconstruct_average(n: int, lam: int, fs, y: int):
    """A_lam[fs](y) as the frequency-lam coefficient of prod_i W_i(alpha, y), over r_n(lam).

    W_i uses N = n_lambda(lam), which covers every coordinate of the sphere;
    integrating against e(-lam alpha) picks out that coefficient exactly.
    """
    fs = list(fs)
    if n < 4 or len(fs) != n:
        raise InvalidArgument("need n >= 4 and exactly n functions")
    if lam < 1:
        raise InvalidArgument(f"lam must be >= 1, got {lam}")
    N = n_lambda(lam)
    prod = {0: 1}
    for f in fs:
        prod = _convolve_dicts(prod, weyl_coefficients(f, N, y).coeffs, lam)
    top = prod.get(lam, 0)
    r = r_count(n, lam)
    if isinstance(top, (int, Fraction)):
        return Fraction(top) / r
    return top / r


class Moment(NamedTuple):
    value: object
    method: str
    quadrature_points: int | None
    tolerance_achieved: float | None


def _even_moment(w: WeylCoefficients, n: int):
    dense, den = w.dense()
    if not np.any(dense):
        return 0
    half = n // 2
    terms = [(s, dense[s]) for s in range(dense.size) if dense[s] != 0]
    power = np.zeros((1, 1), dtype=dense.dtype)
    power[0, 0] = 1
    for _ in range(half):
        width = power.shape[1] - 1 + dense.size - 1
        power = sparse_mul(power, terms, width)
    p = power[0]
    if w.exact:
        total = sum(int(v) * int(v) for v in p if v)
        return Fraction(total, den**n) if den != 1 else total
    return float(np.sum(np.abs(p) ** 2))


def _quadrature_moment(w: WeylCoefficients, n: float, tol: float, max_points: int):
    dense, den = w.dense()
    c = np.asarray(dense, dtype=np.complex128) / den
    if not np.any(c):
        return 0.0, 8 * w.N**2 + 1, 0.0
    m = 8 * w.N**2 + 1
    prev = None
    while True:
        if m > max_points:
            raise NonConvergenceError(f"|W|^{n} quadrature did not reach tol {tol} by {max_points} points")
        grid = np.zeros(m, dtype=np.complex128)
        grid[: c.size] = c
        vals = np.fft.ifft(grid) * m
        cur = float(np.mean(np.abs(vals) ** n))
        if prev is not None:
            err = abs(cur - prev) / abs(cur)
            if err <= tol:
                return cur, m, err
        prev = cur
        m *= 2


def torus_moment(w: WeylCoefficients, n, method: str = EXACT_EVEN, tol: float = 1e-6,
                 max_points: int = MAX_QUADRATURE_POINTS) -> Moment:
    """Integral over R/Z of |W(alpha)|^n (n >= 1)."""
    method = _METHOD_ALIASES.get(method, method)
    if method == EXACT_EVEN:
        if n != int(n) or int(n) % 2:
            raise InvalidArgument(f"exact-even needs an even integer exponent, got {n}")
        return Moment(_even_moment(w, int(n)), EXACT_EVEN, None, None)
    if method == QUADRATURE:
        value, m, err = _quadrature_moment(w, n, tol, max_points)
        return Moment(value, QUADRATURE, m, err)
    raise InvalidArgument(f"unknown method {method!r}")


def restriction_lhs(f: GridFunction, N: int, n: int, method: str = EXACT_EVEN,
                    tol: float = 1e-6, max_points: int = MAX_QUADRATURE_POINTS) -> Moment:
    """Integral over R/Z of |sum_{|x|<=N} f(x) e(alpha x^2)|^n."""
    if n <= 4:
        raise InvalidArgument(f"the restriction estimate needs n > 4, got {n}")
    return torus_moment(weyl_coefficients(f, N, 0), n, method, tol, max_points)


@dataclass(frozen=True)
class RestrictionReport:
    n: int
    N: int
    lhs: object
    rhs: object
    ratio: object
    method: str
    quadrature_points: int | None = None
    tolerance_achieved: float | None = None
    label: str = ""


def restriction_rhs(f: GridFunction, N: int, n: int):
    """N^(n-2) (N^-1 sum_{|x|<=N} |f(x)|^2)^(n/2); exact for exact f and even n."""
    if f.exact:
        mass = sum((v * v for v in f.window(-N, N)), 0)
    else:
        mass = float(np.sum(np.abs(f.window(-N, N)) ** 2))
    if mass == 0:
        raise DegenerateInput(f"f vanishes on [-{N}, {N}]")
    if f.exact and n % 2 == 0:
        return Fraction(N) ** (n - 2) * (Fraction(mass) / N) ** (n // 2)
    return float(N) ** (n - 2) * (float(mass) / N) ** (n / 2)


def restriction_ratio(f: GridFunction, N: int, n: int, method: str = EXACT_EVEN,
                      tol: float = 1e-6, label: str = "",
                      max_points: int = MAX_QUADRATURE_POINTS) -> RestrictionReport:
    """lhs / rhs of the restriction estimate for one (f, N)."""
    rhs = restriction_rhs(f, N, n)
    lhs = restriction_lhs(f, N, n, method, tol, max_points)
    if isinstance(lhs.value, (int, Fraction)) and isinstance(rhs, Fraction):
        ratio = Fraction(lhs.value) / rhs
    else:
        ratio = float(lhs.value) / float(rhs)
    return RestrictionReport(n, N, lhs.value, rhs, ratio, lhs.method,
                             lhs.quadrature_points, lhs.tolerance_achieved, label)


@dataclass(frozen=True)
class HolderReport:
    lhs: float
    mid: float
    rhs: float
    ok: bool
    lemma2_ratio: float | None


def holder_chain_check(n: int, lam: int, fs, y: int, tol: float = 1e-10,
                       slack: float = 1e-9) -> HolderReport:
    """Compare |A_lam(y)| with the Hoelder bound and with the restriction-estimate bound.

    lhs = |A_lam[fs](y)| (exact), mid = r^-1 prod_i (int |W_i|^n)^(1/n),
    rhs = N^(n-2) r^-1 prod_i (N^-1 sum_{|x|<=N} |f_i(y-x)|^2)^(1/2), N = n_lambda(lam).
    Only lhs <= mid * (1 + slack) is asserted (``ok``); mid / rhs is the
    empirical restriction constant and is reported, not checked.
    """
    fs = list(fs)
    if n < 5 or len(fs) != n:
        raise InvalidArgument("need n >= 5 and exactly n functions")
    N = n_lambda(lam)
    r = r_count(n, lam)
    lhs = abs(float(apply_average(n, lam, fs)(y)))
    method = EXACT_EVEN if n % 2 == 0 else QUADRATURE
    mid = 1.0 / r
    rhs = float(N) ** (n - 2) / r
    for f in fs:
        w = weyl_coefficients(f, N, y)
        mid *= float(torus_moment(w, n, method, tol).value) ** (1 / n)
        window = f.window(y - N, y + N)
        mass = float(sum(abs(complex(v)) ** 2 for v in window))
        rhs *= math.sqrt(mass / N)
    ok = lhs <= mid * (1 + slack)
    return HolderReport(lhs, mid, rhs, ok, mid / rhs if rhs else None)


def _isqrt_vec(a: np.ndarray) -> np.ndarray:
    r = np.floor(np.sqrt(a.astype(np.float64))).astype(np.int64)
    r -= (r * r > a)
    r += ((r + 1) * (r + 1) <= a)
    return r


def normalization_ratio(n: int, lam: int) -> float:
    """n_lambda(lam)^(n-2) / r_n(lam)."""
    return float(Fraction(n_lambda(lam) ** (n - 2), r_count(n, lam)))


def uniform_normalization_ratio(n: int, max_lambda: int) -> tuple[float, int]:
    """(max, argmax) of n_lambda(lam)^(n-2) / r_n(lam) over 1 <= lam <= max_lambda."""
    if n < 4:
        raise InvalidArgument(f"need n >= 4, got {n}")
    if max_lambda < 1:
        raise InvalidArgument("max_lambda must be >= 1")
    counts = counts_upto(n, max_lambda)[1:]
    lam = np.arange(1, max_lambda + 1, dtype=np.int64)
    N = (_isqrt_vec(16 * lam) + 1) // 2
    ratios = N.astype(np.float64) ** (n - 2) / np.array(counts, dtype=np.float64)
    i = int(np.argmax(ratios))
    return float(ratios[i]), i + 1
