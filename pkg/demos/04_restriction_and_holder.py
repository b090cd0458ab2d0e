"""Empirical restriction estimate and the Hoelder step of the upper bound.

Run: python demos/04_restriction_and_holder.py
"""

from sphereavg import (
    GridFunction,
    holder_chain_check,
    random_signs,
    random_tuple,
    restriction_ratio,
    uniform_normalization_ratio,
)
from sphereavg.corpus import NONNEGATIVE_VALUES

print("int |W|^6 / (N^4 (N^-1 sum |f|^2)^3), exact coefficient extraction:")
for N in (4, 8, 16, 32, 64):
    ones = float(restriction_ratio(GridFunction.indicator(-N, N), N, 6).ratio)
    signs = max(float(restriction_ratio(random_signs(s, N), N, 6).ratio) for s in range(1, 6))
    delta = restriction_ratio(GridFunction.delta(), N, 6).ratio
    print(f"  N={N:3d}  ones={ones:.4f}  max(+-1 seeds)={signs:.4f}  delta={delta}")

print("\nodd exponent n = 5 by quadrature:")
for N in (8, 32):
    rep = restriction_ratio(GridFunction.indicator(-N, N), N, 5, "quadrature")
    print(f"  N={N:3d} ratio={rep.ratio:.4f} with {rep.quadrature_points} grid points")

fs = random_tuple(2, 5, -2, 2, NONNEGATIVE_VALUES)
print("\nHoelder chain for a random nonnegative tuple, y = 0:")
for lam in (5, 10, 25, 50):
    r = holder_chain_check(5, lam, fs, 0)
    print(f"  lam={lam:3d} |A|={r.lhs:.3e} <= mid={r.mid:.3e}  mid/rhs={r.lemma2_ratio:.3f}  ok={r.ok}")

for n, top in ((5, 10**4), (5, 2 * 10**4)):
    print(f"sup N_lam^(n-2)/r_n(lam), n={n}, lam<={top}:", uniform_normalization_ratio(n, top))
