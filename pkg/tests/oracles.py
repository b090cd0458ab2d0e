"""Brute-force reference computations, deliberately naive and independent
of the package's algorithms."""

import itertools
import math
from collections import Counter
from fractions import Fraction


def box_points(n, lam):
    r = math.isqrt(lam)
    return [x for x in itertools.product(range(-r, r + 1), repeat=n)
            if sum(c * c for c in x) == lam]


def brute_count(n, lam):
    return len(box_points(n, lam))


def brute_ball_counts(n, lam_max):
    r = math.isqrt(lam_max)
    c = Counter(sum(v * v for v in x) for x in itertools.product(range(-r, r + 1), repeat=n))
    return [c.get(s, 0) for s in range(lam_max + 1)]


def brute_average(n, lam, fs, y):
    pts = box_points(n, lam)
    total = sum(math.prod(f(y - xi) for f, xi in zip(fs, x)) for x in pts)
    return Fraction(total) / len(pts)


def brute_hl(f, y, nmax):
    best = Fraction(0)
    for N in range(1, nmax + 1):
        s = sum(f(y - x) for x in range(-N, N + 1))
        best = max(best, abs(Fraction(s)) / N)
    return best
