"""Lattice points on spheres: exact counts and their lam^(n/2-1) growth.

Run: python demos/01_sphere_counts.py
"""

import time

from sphereavg import asymptotic_ratio_stats, jacobi_four_square, rep_count_single, rep_count_table

# r_4 from the table and from the divisor formula
table4 = rep_count_table(4, 4**6)
print("r_4(lam), lam = 0..10:", list(table4.counts[:11]))
print("r_4(4^k), k = 1..6:   ", [table4[4**k] for k in range(1, 7)])
print("Jacobi at 4^10:       ", jacobi_four_square(4**10))

# in dimension 4 the normalised count r/lam collapses along powers of four
stats4 = asymptotic_ratio_stats(table4, 1)
print(f"n=4: min r/lam = {stats4.min_ratio:.3g} at lam = {stats4.argmin}")

# in dimension 5 r/lam^(3/2) stays between two positive constants
t0 = time.perf_counter()
table5 = rep_count_table(5, 10**5)
print(f"r_5 table up to 1e5 built in {time.perf_counter() - t0:.2f}s")
stats5 = asymptotic_ratio_stats(table5, 1)
print(f"n=5: r/lam^1.5 in [{stats5.min_ratio:.3f} (lam={stats5.argmin}), "
      f"{stats5.max_ratio:.3f} (lam={stats5.argmax})]")

# a single large count without building the table
print("r_5(10^6) by meet-in-the-middle:", rep_count_single(5, 10**6))
