"""Discrete Hardy-Littlewood maximal function, l^p norms, and the pointwise
majorisation A_* <= C prod_i M(|f_i|^2)^(1/2).

The maximal function uses the normalisation
``Mf(y) = sup_{N >= 1} |N^-1 sum_{|x| <= N} f(y - x)|`` (window of 2N + 1
points divided by N), which can exceed sup |f| by a bounded factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np
from scipy.special import zeta

from .averages import apply_maximal, lambda_bound
from .errors import InvalidArgument, InvariantViolation
from .grid import GridFunction


class NormedValue(NamedTuple):
    value: float
    p: float


def lp_norm(f: GridFunction, p: float) -> NormedValue:
    """(sum_x |f(x)|^p)^(1/p) in double precision."""
    if p < 1:
        raise InvalidArgument(f"p must be >= 1, got {p}")
    vals = np.abs(np.array([complex(v) for v in f.values])) if f.exact else np.abs(f.values)
    if vals.size == 0:
        return NormedValue(0.0, p)
    # scale by the max entry so large p does not overflow
    top = float(vals.max())
    return NormedValue(top * float(np.sum((vals / top) ** p)) ** (1 / p), p)


def _hl_at(prefix: np.ndarray, lo: int, hi: int, y: int, exact: bool):
    # sums over [y-N, y+N] are constant once the window covers the support,
    # after which |sum|/N only decreases, so N <= max(1, distance) suffices
    nmax = max(1, abs(y - lo), abs(y - hi))
    N = np.arange(1, nmax + 1)
    right = np.clip(y + N - lo + 1, 0, hi - lo + 1)
    left = np.clip(y - N - lo, 0, hi - lo + 1)
    sums = prefix[right] - prefix[left]
    if exact:
        approx = np.abs(sums).astype(np.float64) / N
        top = approx.max()
        if top == 0:
            return Fraction(0)
        cand = np.flatnonzero(approx >= top * (1 - 1e-9))
        return max(Fraction(abs(int(sums[j])), int(N[j])) for j in cand)
    return float(np.max(np.abs(sums) / N))


def hl_window(f: GridFunction, margin: int | None = None) -> tuple[int, int]:
    """Support hull dilated by ``margin`` (default: the support length)."""
    if f.is_zero:
        return (0, 0)
    margin = len(f) if margin is None else margin
    return (f.lo - margin, f.hi + margin)


def hl_maximal(f: GridFunction, margin: int | None = None,
               window: tuple[int, int] | None = None) -> GridFunction:
    """Mf on ``window`` (default ``hl_window(f, margin)``), exact for exact f.

    Outside the window, at distance d from the support, Mf lies between
    |sum f| / D and ||f||_1 / d where D is the distance to the far end of the
    support; ``hl_norm_bounds`` uses the upper bound to certify norm tails.
    """
    if f.is_zero:
        return GridFunction.zero()
    a, b = window if window is not None else hl_window(f, margin)
    if b < a:
        raise InvalidArgument(f"empty window {(a, b)}")
    if f.exact:
        ints, den = f.integer_scaled()
        prefix = np.concatenate([np.zeros(1, dtype=ints.dtype), np.cumsum(ints)])
    else:
        den = 1
        prefix = np.concatenate([[0], np.cumsum(f.values)])
    out = [_hl_at(prefix, f.lo, f.hi, y, f.exact) for y in range(a, b + 1)]
    if f.exact:
        out = [v / den for v in out]
    return GridFunction(a, out)


def hl_tail_bound(f: GridFunction, y: int) -> float:
    """Upper bound ||f||_1 / dist(y, supp f) for y outside the support hull."""
    if f.is_zero:
        return 0.0
    d = max(f.lo - y, y - f.hi)
    if d <= 0:
        raise InvalidArgument(f"{y} lies inside the support hull")
    return lp_norm(f, 1).value / d


def hl_norm_bounds(f: GridFunction, p: float, margin: int | None = None) -> tuple[float, float]:
    """(lower, upper) bounds on ||Mf||_p for p > 1.

    Lower is the norm over the emitted window; upper adds the certified tail
    2 ||f||_1^p sum_{d > margin} d^-p (a Hurwitz zeta value).
    """
    if p <= 1:
        raise InvalidArgument("tail bound needs p > 1")
    if f.is_zero:
        return 0.0, 0.0
    margin = len(f) if margin is None else margin
    mf = hl_maximal(f, margin)
    inner = lp_norm(mf, p).value ** p
    tail = 2 * lp_norm(f, 1).value ** p * float(zeta(p, margin + 1))
    return inner ** (1 / p), (inner + tail) ** (1 / p)


def hl_ratio(f: GridFunction, p: float, margin: int | None = None) -> float:
    """Certified upper bound on ||Mf||_p / ||f||_p."""
    return hl_norm_bounds(f, p, margin)[1] / lp_norm(f, p).value


def delta_l1_window(W: int) -> float:
    """||M delta||_1 over [-W, W]: 1 + 2 * H_W."""
    return 1.0 + 2.0 * math.fsum(1.0 / k for k in range(1, W + 1))


@dataclass(frozen=True)
class MajorizationReport:
    C_used: float
    max_violation: float
    max_ratio: float
    ys: tuple[int, ...]
    a_star: tuple
    majorant: tuple[float, ...]


def majorization_check(n: int, fs, y_window: tuple[int, int],
                       lemma2_constant: float | None = None,
                       normalization_constant: float | None = None) -> MajorizationReport:
    """Check A_*[fs](y) <= C prod_i M(|f_i|^2)(y)^(1/2) on ``y_window``.

    C = (sup of n_lambda^(n-2)/r_n over the lam range that matters on the
    window) * (recorded restriction-estimate constant for exponent n).
    ``max_violation`` is max_y (A_*(y) - C * product); <= 0 means the
    inequality held everywhere.
    """
    from .constants import RESTRICTION_CONSTANT
    from .exponential import uniform_normalization_ratio

    fs = list(fs)
    if n < 5 or len(fs) != n:
        raise InvalidArgument("need n >= 5 and exactly n functions")
    a, b = y_window
    if b < a:
        raise InvalidArgument(f"empty window {y_window}")
    if lemma2_constant is None:
        if n not in RESTRICTION_CONSTANT:
            raise InvalidArgument(f"no recorded restriction constant for n = {n}")
        lemma2_constant = RESTRICTION_CONSTANT[n]
    ys = tuple(range(a, b + 1))
    if any(f.is_zero for f in fs):
        zeros = tuple(0 for _ in ys)
        return MajorizationReport(0.0, 0.0, 0.0, ys, zeros, tuple(0.0 for _ in ys))
    if normalization_constant is None:
        lam_max = max(1, max(lambda_bound(fs, y) for y in ys))
        normalization_constant = uniform_normalization_ratio(n, lam_max)[0]
    C = normalization_constant * lemma2_constant

    amax = apply_maximal(n, fs, (a, b))
    maxfns = []
    for f in fs:
        sq = f.abs_squared()
        maxfns.append(hl_maximal(sq, window=(a, b)))
    a_vals, prods, worst, worst_ratio = [], [], -math.inf, 0.0
    for y in ys:
        av = float(amax(y))
        prod = math.prod(math.sqrt(float(m(y))) for m in maxfns)
        if prod == 0 and av > 0:
            raise InvariantViolation(f"A_*({y}) = {av} > 0 but the majorant vanishes")
        a_vals.append(amax(y))
        prods.append(prod)
        worst = max(worst, av - C * prod)
        if prod > 0:
            worst_ratio = max(worst_ratio, av / prod)
    return MajorizationReport(C, worst, worst_ratio, ys, tuple(a_vals), tuple(prods))
