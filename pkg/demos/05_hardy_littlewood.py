"""The discrete Hardy-Littlewood maximal function and the closing pointwise bound.

Run: python demos/05_hardy_littlewood.py
"""

from sphereavg import GridFunction, hl_maximal, lp_norm, majorization_check, random_tuple
from sphereavg.corpus import NONNEGATIVE_VALUES, chi
from sphereavg.maximal_hl import hl_norm_bounds

delta = GridFunction.delta()
m = hl_maximal(delta, 10)
print("M delta on [-10, 10]:", [str(v) for _, v in m.items()])

# l^1 fails: the windowed norm grows like 2 log W
for W in (10, 100, 1000, 10000):
    print(f"  ||M delta||_1 on [-{W}, {W}] = {lp_norm(hl_maximal(delta, W), 1).value:.3f}")

for p in (1.5, 2, 3):
    for label, f in (("delta", delta), ("chi_16", chi(16))):
        lo, hi = hl_norm_bounds(f, p, 10 * len(f))
        print(f"  p={p}: {label:7s} ||Mf||_p / ||f||_p in [{lo / lp_norm(f, p).value:.3f}, "
              f"{hi / lp_norm(f, p).value:.3f}]")

fs = random_tuple(1, 5, -4, 4, NONNEGATIVE_VALUES)
rep = majorization_check(5, fs, (-8, 8))
print(f"\nA_* <= C prod M(|f_i|^2)^(1/2) with C = {rep.C_used:.3f}: "
      f"max violation {rep.max_violation:.3g}, max A_*/product {rep.max_ratio:.4f}")
