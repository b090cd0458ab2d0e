import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_hl
from sphereavg.constants import HL_CONSTANT, RESTRICTION_CONSTANT
from sphereavg.corpus import LCG, NONNEGATIVE_VALUES, build_corpus, chi, random_function, random_tuple
from sphereavg.errors import InvalidArgument
from sphereavg.grid import GridFunction
from sphereavg.maximal_hl import (
    delta_l1_window,
    hl_maximal,
    hl_norm_bounds,
    hl_ratio,
    hl_tail_bound,
    lp_norm,
    majorization_check,
)

DELTA = GridFunction.delta()


def test_hl_delta():
    m = hl_maximal(DELTA, 50)
    assert m(0) == 1
    assert all(m(y) == Fraction(1, abs(y)) for y in range(-50, 51) if y)


def test_hl_indicator_center():
    for K in (1, 3, 10):
        assert hl_maximal(GridFunction.indicator(-K, K))(0) == 3


def test_hl_zero():
    assert hl_maximal(GridFunction.zero()).is_zero


@pytest.mark.parametrize("seed", [1, 2, 3, 4])
def test_hl_against_brute_force(seed):
    f = random_function(LCG(seed), -4, 3)
    m = hl_maximal(f, 6)
    for y in range(f.lo - 6, f.hi + 7):
        assert m(y) == brute_hl(f, y, 40)


def test_hl_sup_range_is_sufficient():
    f = random_function(LCG(8), -3, 5, NONNEGATIVE_VALUES)
    m = hl_maximal(f, 10)
    for y in range(-13, 16):
        assert brute_hl(f, y, 80) == m(y)


def test_hl_float_mode():
    f = random_function(LCG(4), -3, 3)
    exact, approx = hl_maximal(f, 5), hl_maximal(f.to_float(), 5)
    for y in range(-8, 9):
        assert approx(y) == pytest.approx(float(exact(y)))


def test_hl_properties():
    f = random_function(LCG(1), -3, 3, NONNEGATIVE_VALUES)
    g = random_function(LCG(2), -1, 4, NONNEGATIVE_VALUES)
    w = (-10, 10)
    mf, mg = hl_maximal(f, window=w), hl_maximal(g, window=w)
    msum = hl_maximal(GridFunction.from_dict({x: f(x) + g(x) for x in range(-3, 5)}), window=w)
    m3 = hl_maximal(f.scale(-3), window=w)
    mshift = hl_maximal(f.shift(2), window=(-8, 12))
    for y in range(*w):
        assert mf(y) >= 0
        assert msum(y) <= mf(y) + mg(y)
        assert m3(y) == 3 * mf(y)
        assert mshift(y + 2) == mf(y)


def test_tail_bound_dominates():
    f = random_function(LCG(3), -2, 2, NONNEGATIVE_VALUES)
    m = hl_maximal(f, 40)
    for y in list(range(-42, -2)) + list(range(3, 43)):
        assert float(m(y)) <= hl_tail_bound(f, y) + 1e-15
    with pytest.raises(InvalidArgument):
        hl_tail_bound(f, 0)


def test_lp_norm_examples():
    for p in (1, 2, 3.5):
        assert lp_norm(DELTA, p).value == pytest.approx(1)
        assert lp_norm(chi(4), p).value == pytest.approx(17 ** (1 / p))
    assert lp_norm(GridFunction(0, [1, 2]), 2).value == pytest.approx(math.sqrt(5))
    with pytest.raises(InvalidArgument):
        lp_norm(DELTA, 0.5)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=1, max_size=12),
       st.floats(1, 6), st.floats(1, 6))
def test_norm_nesting(vals, p1, p2):
    f = GridFunction(0, vals)
    lo, hi = min(p1, p2), max(p1, p2)
    assert lp_norm(f, hi).value <= lp_norm(f, lo).value * (1 + 1e-12)


def test_norm_bounds_bracket():
    lower, upper = hl_norm_bounds(DELTA, 2, 1000)
    exact = math.sqrt(1 + math.pi**2 / 3)
    # the tail bound 1/d is attained by the unit mass
    assert lower <= exact <= upper * (1 + 1e-12)


def test_hl_ratio_below_recorded():
    corpus = build_corpus(1, chi_sizes=(4, 16))
    corpus.update(build_corpus(2, chi_sizes=(), lo=-4, hi=4, values=NONNEGATIVE_VALUES))
    for p, bound in HL_CONSTANT.items():
        for f in corpus.values():
            assert hl_ratio(f, p, 10 * len(f)) <= bound


def test_delta_l1_window_is_harmonic():
    assert delta_l1_window(3) == pytest.approx(1 + 2 * (1 + 1 / 2 + 1 / 3))


def test_majorization_examples():
    r = majorization_check(5, [DELTA] * 5, (1, 10))
    assert r.max_violation <= 0
    for y, a in zip(r.ys, r.a_star):
        assert a == Fraction(1, __import__("sphereavg").rep_count_single(5, 5 * y * y))
    z = majorization_check(5, [GridFunction.zero()] * 5, (-3, 3))
    assert z.max_violation == 0 and all(a == 0 for a in z.a_star)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_majorization_random(seed):
    fs = random_tuple(seed, 5, -4, 4, NONNEGATIVE_VALUES)
    r = majorization_check(5, fs, (-6, 6))
    assert r.max_violation <= 0
    assert r.C_used > 0


def test_majorization_needs_constant():
    with pytest.raises(InvalidArgument):
        majorization_check(7, [DELTA] * 7, (0, 1))
    assert 7 not in RESTRICTION_CONSTANT
