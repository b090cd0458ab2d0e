"""Multilinear spherical averages A_lam, the maximal operator A_*, and the
two necessity constructions (unit mass, scaled indicators).

``A_lam[f_1..f_n](y) = r_n(lam)^-1 * sum_{|x|^2 = lam} prod_i f_i(y - x_i)``.

For each output point the sum over the sphere is organised by squared
coordinate: with ``h_i(y, k) = f_i(y - k) + f_i(y + k)`` (and ``f_i(y)`` for
k = 0), A_lam(y) * r_n(lam) is the coefficient of z^lam in
``prod_i sum_k h_i(y, k) z^(k^2)``. The sphere itself is never materialised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ._budget import budget
from ._poly import sparse_mul
from .errors import BudgetExceeded, InvalidArgument
from .grid import GridFunction
from .sphere_counts import enumerate_sphere, jacobi_four_square, rep_count_single, rep_count_table

_table_cache: dict[int, object] = {}


def counts_upto(n: int, max_lambda: int) -> np.ndarray:
    """Cached r_n(0..max_lambda); the cached table only ever grows."""
    table = _table_cache.get(n)
    if table is None or table.max_lambda < max_lambda:
        grow = max_lambda if table is None else max(max_lambda, 2 * table.max_lambda)
        table = rep_count_table(n, grow)
        _table_cache[n] = table
    return table.counts[: max_lambda + 1]


@lru_cache(maxsize=4096)
def r_count(n: int, lam: int) -> int:
    if n == 4 and lam >= 1:
        return jacobi_four_square(lam)
    return rep_count_single(n, lam)


def _check_inputs(n: int, fs) -> list[GridFunction]:
    if n < 4:
        raise InvalidArgument(f"averages need n >= 4, got n = {n}")
    fs = list(fs)
    if len(fs) != n:
        raise InvalidArgument(f"expected {n} functions, got {len(fs)}")
    return fs


def _prepare(fs):
    """Common numeric representation: (arrays, denominator, exact flag)."""
    exact = all(f.exact or f.is_zero for f in fs)
    if exact:
        arrays, den = [], 1
        for f in fs:
            if f.is_zero:
                arrays.append((0, np.zeros(0, dtype=np.int64)))
                continue
            ints, d = f.integer_scaled()
            arrays.append((f.offset, ints))
            den *= d
        return arrays, den, True
    arrays = [(f.offset, f.to_float().values) for f in fs]
    return arrays, 1, False


def _h_rows(offset: int, vals: np.ndarray, ys: np.ndarray, kmax: int) -> np.ndarray:
    """h[j, k] = f(ys[j] - k) + f(ys[j] + k), with h[j, 0] = f(ys[j])."""
    a = int(ys.min()) - kmax
    b = int(ys.max()) + kmax
    dense = np.zeros(b - a + 1, dtype=vals.dtype if vals.size else np.int64)
    lo, hi = max(a, offset), min(b, offset + vals.size - 1)
    if lo <= hi:
        dense[lo - a:hi - a + 1] = vals[lo - offset:hi - offset + 1]
    ks = np.arange(kmax + 1)
    base = ys[:, None] - a
    h = dense[base - ks] + dense[base + ks]
    h[:, 0] = dense[base[:, 0]]
    return h


def _square_product(hs: list[np.ndarray], limits: list[int]) -> np.ndarray:
    """Coefficients of prod_i sum_k hs[i][:, k] z^(k^2), step i truncated at limits[i]."""
    first = hs[0]
    rows = first.shape[0]
    g = np.zeros((rows, limits[0] + 1), dtype=first.dtype)
    for k in range(first.shape[1]):
        if k * k <= limits[0]:
            g[:, k * k] = first[:, k]
    for h, limit in zip(hs[1:], limits[1:]):
        terms = [(k * k, h[:, k]) for k in range(h.shape[1]) if np.any(h[:, k])]
        g = sparse_mul(g, terms, limit)
    return g


def _finish(values, den_total, exact):
    if exact:
        return [Fraction(int(v), den_total) for v in values]
    return np.asarray(values) / den_total


def average_window(n: int, lam: int, fs) -> tuple[int, int] | None:
    """Integer hull outside which A_lam[fs] vanishes, or None if it vanishes everywhere."""
    if any(f.is_zero for f in fs):
        return None
    r = math.isqrt(lam)
    lo = max(f.lo - r for f in fs)
    hi = min(f.hi + r for f in fs)
    return (lo, hi) if lo <= hi else None


def apply_average(n: int, lam: int, fs) -> GridFunction:
    """A_lam[f_1, ..., f_n] as a trimmed GridFunction.

    Exact (Fraction-valued) when every input is exact, float/complex otherwise.
    """
    fs = _check_inputs(n, fs)
    if lam < 1:
        raise InvalidArgument(f"lam must be >= 1, got {lam}")
    r = r_count(n, lam)
    if r == 0:
        raise InvalidArgument(f"r_{n}({lam}) = 0: empty sphere")
    win = average_window(n, lam, fs)
    if win is None:
        return GridFunction.zero()
    ys = np.arange(win[0], win[1] + 1)
    arrays, den, exact = _prepare(fs)
    kmax = math.isqrt(lam)
    hs = [_h_rows(off, vals, ys, kmax) for off, vals in arrays]
    g = _square_product(hs, [lam] * n)
    return GridFunction(win[0], _finish(g[:, lam], r * den, exact))


def _exact_abs_max(nums, dens) -> tuple[Fraction, int]:
    """max_j |nums[j]| / dens[j] computed exactly; returns (value, index)."""
    if nums.dtype == object or dens.dtype == object:
        best, idx = Fraction(0), 0
        for j, (a, b) in enumerate(zip(nums, dens)):
            v = Fraction(abs(int(a)), int(b))
            if v > best:
                best, idx = v, j
        return best, idx
    approx = np.abs(nums).astype(np.float64) / dens.astype(np.float64)
    top = approx.max()
    if top == 0:
        return Fraction(0), 0
    cand = np.flatnonzero(approx >= top * (1 - 1e-9))
    best, idx = Fraction(0), int(cand[0])
    for j in cand:
        v = Fraction(abs(int(nums[j])), int(dens[j]))
        if v > best:
            best, idx = v, int(j)
    return best, idx


def lambda_bound(fs, y: int) -> int:
    """Every A_lam[fs](y) with lam above this bound vanishes.

    A sphere point x contributes only if y - x_i lies in supp f_i for every i,
    which forces |x_i| <= max distance from y to supp f_i.
    """
    return sum(f.distance_bound(y) ** 2 for f in fs)


def maximal_profile(n: int, fs, y: int):
    """All A_lam[fs](y) for 1 <= lam <= lambda_bound(fs, y).

    Returns (numerators g[lam] for lam = 0..T, common denominator D, exact flag);
    A_lam(y) = g[lam] / (r_n(lam) * D).
    """
    arrays, den, exact = _prepare(fs)
    dists = [f.distance_bound(y) for f in fs]
    ys = np.array([y])
    hs = [_h_rows(off, vals, ys, d) for (off, vals), d in zip(arrays, dists)]
    limits = list(np.cumsum([d * d for d in dists]))
    g = _square_product(hs, [int(v) for v in limits])
    return g[0], den, exact


def apply_maximal(n: int, fs, window: tuple[int, int] | None = None) -> GridFunction:
    """A_*[f_1, ..., f_n](y) = sup_{lam >= 1} |A_lam(y)| on ``window``.

    A_* generally has unbounded support (for the unit mass it is 1/r_n(n y^2)
    at every y != 0), so the result is the restriction to ``window``, which
    defaults to the hull of the union of the supports. For each y the sup is
    taken over the finite set 1 <= lam <= lambda_bound(fs, y) and is exact.
    """
    fs = _check_inputs(n, fs)
    if any(f.is_zero for f in fs):
        return GridFunction.zero()
    if window is None:
        window = (min(f.lo for f in fs), max(f.hi for f in fs))
    a, b = window
    if b < a:
        raise InvalidArgument(f"empty window {window}")
    work = sum(lambda_bound(fs, y) + 1 for y in range(a, b + 1))
    if work > budget():
        raise BudgetExceeded(f"apply_maximal needs {work} cells, budget is {budget()}")
    tmax = max(lambda_bound(fs, y) for y in range(a, b + 1))
    r = counts_upto(n, tmax)
    out = []
    for y in range(a, b + 1):
        g, den, exact = maximal_profile(n, fs, y)
        t = g.size - 1
        if t < 1:
            out.append(0)
            continue
        nums, dens = g[1:], r[1:t + 1]
        if exact:
            best, _ = _exact_abs_max(nums, dens)
            out.append(best / den)
        else:
            out.append(float(np.max(np.abs(nums) / dens)))
    return GridFunction(a, out)


def delta_maximal(n: int, y: int, counter=None) -> Fraction:
    """A_*[delta, ..., delta](y) = 1 / r_n(n y^2), and 0 at y = 0.

    Only the sphere of radius-squared n*y^2 contains x = (y, ..., y); y = 0
    would need lam = 0, which the sup over lam >= 1 excludes.
    """
    if n < 4:
        raise InvalidArgument(f"averages need n >= 4, got n = {n}")
    if y == 0:
        return Fraction(0)
    count = (counter or (lambda lam: r_count(n, lam)))(n * y * y)
    return Fraction(1, count)


@dataclass(frozen=True)
class DivergenceReport:
    K: int
    q: int
    points: tuple[int, ...]
    values: tuple[Fraction, ...]
    lq_power: Fraction
    expected_power: Fraction

    @property
    def lq_norm(self) -> float:
        return float(self.lq_power) ** (1 / self.q)


def divergence_demo(K: int, q: int = 1) -> DivergenceReport:
    """l^q mass of A_*[delta x4] on the powers of two 2^0..2^K (n = 4).

    Every value is 1/r_4(4^(k+1)) = 1/24, so the q-th power of the norm is
    (K+1)/24^q and grows without bound in K.
    """
    if K < 0 or q < 1:
        raise InvalidArgument("need K >= 0 and q >= 1")
    pts = tuple(2**k for k in range(K + 1))
    vals = tuple(delta_maximal(4, y, counter=jacobi_four_square) for y in pts)
    power = sum((v**q for v in vals), Fraction(0))
    return DivergenceReport(K, q, pts, vals, power, Fraction(K + 1, 24**q))


@dataclass(frozen=True)
class ScalingReport:
    n: int
    M: int
    p: float
    q: float
    max_plateau_dev: Fraction | float
    lq_lower: float
    lp_input_power: float
    ratio: float
    maximal: GridFunction


def scaling_witness(n: int, M: int, p: float, q: float,
                    window: tuple[int, int] | None = None) -> ScalingReport:
    """Scaling construction with chi = indicator of [-2M, 2M].

    On |y| <= M the sphere of radius M contains the points with one
    coordinate +-M, so A_*[chi, ..., chi] = 1 there. ``lq_lower`` is the
    l^q norm of A_* over ``window`` (default [-M, M]), a lower bound for the
    full norm; ``lp_input_power`` is ||chi||_p^n = (4M + 1)^(n/p).
    """
    if M < 1 or p < 1 or q < 1:
        raise InvalidArgument("need M >= 1, p >= 1, q >= 1")
    chi = GridFunction.indicator(-2 * M, 2 * M)
    window = (-M, M) if window is None else window
    amax = apply_maximal(n, [chi] * n, window)
    plateau = [amax(y) for y in range(max(-M, window[0]), min(M, window[1]) + 1)]
    dev = max(abs(1 - v) for v in plateau) if plateau else 0
    lq = sum(float(v) ** q for _, v in amax.items()) ** (1 / q)
    lp_power = (4 * M + 1) ** (n / p)
    return ScalingReport(n, M, p, q, dev, lq, lp_power, lq / lp_power, amax)


class TensorGridFunction:
    """Dense tensor product Phi(x) = prod_i f_i(x_i) on a box in Z^n."""

    def __init__(self, offsets, block: np.ndarray):
        self.offsets = tuple(int(o) for o in offsets)
        self.block = block
        if block.ndim != len(self.offsets):
            raise InvalidArgument("one offset per axis required")

    @property
    def dimension(self) -> int:
        return self.block.ndim

    @classmethod
    def from_factors(cls, fs, max_cells: int = 10**6) -> TensorGridFunction:
        fs = list(fs)
        if any(f.is_zero for f in fs):
            return cls([0] * len(fs), np.zeros((0,) * len(fs), dtype=object))
        cells = math.prod(len(f) for f in fs)
        if cells > min(max_cells, budget()):
            raise BudgetExceeded(f"tensor block of {cells} cells exceeds {max_cells}")
        block = np.array(1, dtype=object)
        for f in fs:
            block = np.multiply.outer(block, np.asarray(f.values, dtype=object))
        return cls([f.offset for f in fs], block)

    def __call__(self, point):
        idx = tuple(p - o for p, o in zip(point, self.offsets))
        if all(0 <= i < s for i, s in zip(idx, self.block.shape)):
            return self.block[idx]
        return 0


@lru_cache(maxsize=256)
def _sphere_array(n: int, lam: int) -> np.ndarray:
    pts = np.array(enumerate_sphere(n, lam), dtype=np.int64).reshape(-1, n)
    pts.flags.writeable = False
    return pts


def spherical_average_nd(phi: TensorGridFunction, lam: int, point) -> Fraction:
    """S_lam Phi(point) = r_n(lam)^-1 sum_{|x|^2 = lam} Phi(point - x), by enumeration."""
    if lam < 1:
        raise InvalidArgument(f"lam must be >= 1, got {lam}")
    n = phi.dimension
    pts = _sphere_array(n, lam)
    if pts.shape[0] == 0:
        raise InvalidArgument(f"r_{n}({lam}) = 0: empty sphere")
    idx = np.asarray(point, dtype=np.int64) - pts - np.asarray(phi.offsets, dtype=np.int64)
    inside = np.all((idx >= 0) & (idx < np.asarray(phi.block.shape)), axis=1)
    vals = phi.block[tuple(idx[inside].T)] if inside.any() else np.zeros(0, dtype=object)
    total = sum(vals.tolist(), 0)
    if isinstance(total, float):
        return total / pts.shape[0]
    return Fraction(total) / pts.shape[0]
