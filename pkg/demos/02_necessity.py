"""The two constructions showing where the maximal operator cannot be bounded.

1. n = 4, all inputs the unit mass: A_* equals 1/24 at every power of two, so
   its l^q norm diverges.
2. n = 5, all inputs the indicator of [-2M, 2M]: A_* = 1 on |y| <= M, so the
   l^q norm grows like M^(1/q) while ||chi||_p^n grows like M^(n/p).

Run: python demos/02_necessity.py
"""

from sphereavg import GridFunction, apply_maximal, delta_maximal, divergence_demo, scaling_witness

delta = GridFunction.delta()
print("A_*[delta x4](y), y = 1..16:")
for y in range(1, 17):
    print(f"  {y:3d}  {delta_maximal(4, y)}")

m = apply_maximal(4, [delta] * 4, (1, 8))
print("cross-check by the operator itself:", [str(m(y)) for y in (1, 2, 4, 8)])

for K in (5, 20, 80):
    rep = divergence_demo(K, 2)
    print(f"K={K:3d}: l^2 mass on powers of two = {rep.lq_norm:.4f}  (exact square {rep.lq_power})")

print("\nscaling witness, n = 5, q = 1, p = nq + 1 = 6:")
for M in (4, 8, 16, 32):
    r = scaling_witness(5, M, 6, 1)
    print(f"  M={M:3d} plateau dev={r.max_plateau_dev}  ||A_*||_1 >= {r.lq_lower:.0f}  "
          f"||chi||_6^5 = {r.lp_input_power:.2f}  ratio = {r.ratio:.4f}")
