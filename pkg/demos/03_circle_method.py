"""Weyl sums and the exact circle-method identity.

A_lam(y) is the frequency-lam coefficient of prod_i W_i(alpha, y), divided by
r_n(lam); the torus integral is done by coefficient extraction, not quadrature.

Run: python demos/03_circle_method.py
"""

import numpy as np

from sphereavg import (
    apply_average,
    n_lambda,
    random_tuple,
    reconstruct_average,
    weyl_coefficients,
    weyl_sum,
)

fs = random_tuple(seed=3, n=5, lo=-2, hi=2)
lam = 17
N = n_lambda(lam)
print(f"lam = {lam}, N_lam = {N}")

w = weyl_coefficients(fs[0], N, y=1)
print("coefficients of W_1(., 1):", w.coeffs)
alphas = np.linspace(0, 1, 5, endpoint=False)
print("max |coefficient form - direct sum| on a grid:",
      np.max(np.abs(w(alphas) - np.array([weyl_sum(fs[0], N, a, 1) for a in alphas]))))

direct = apply_average(5, lam, fs)
for y in range(-3, 4):
    rec = reconstruct_average(5, lam, fs, y)
    print(f"  y={y:+d}  direct={str(direct(y)):>12}  reconstructed={str(rec):>12}")
