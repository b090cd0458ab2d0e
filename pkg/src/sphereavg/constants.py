"""Empirical constants recorded from sweeps over the standard corpus.

They are regression baselines: tests assert that recomputed sweeps stay
below them. Regenerate with ``demos/record_constants.py``.
"""

# max of restriction lhs/rhs over {delta, ones on [-N, N], +-1 seeds 1..5};
# n = 6 exact-even for N in {4..64}: 7.743 (ones, N = 4);
# n = 5 quadrature for N in {4..512}: 7.870 (ones, N = 512), slowly increasing.
RESTRICTION_CONSTANT = {5: 8.0, 6: 8.0}

# certified upper bound of ||Mf||_p / ||f||_p (tail margin 10 * support length)
# over build_corpus(1, chi_sizes=(4, 16, 64)) and the nonnegative corpus of seed 2
# on [-4, 4]; measured maxima 4.403, 3.314, 3.031 (chi_64).
HL_CONSTANT = {1.5: 4.5, 2: 3.4, 3: 3.1}
