"""Recompute the sweeps behind sphereavg.constants.

Run: python demos/record_constants.py
"""

from sphereavg import GridFunction, build_corpus, random_signs, restriction_ratio
from sphereavg.corpus import NONNEGATIVE_VALUES
from sphereavg.maximal_hl import hl_ratio


def restriction_sweep(n, method, Ns):
    best = (0.0, None)
    for N in Ns:
        fs = {"delta": GridFunction.delta(), "ones": GridFunction.indicator(-N, N)}
        fs.update({f"signs_{s}": random_signs(s, N) for s in range(1, 6)})
        for label, f in fs.items():
            r = float(restriction_ratio(f, N, n, method).ratio)
            best = max(best, (r, (label, N)), key=lambda t: t[0])
    return best


print("restriction n=6:", restriction_sweep(6, "exact-even", (4, 8, 16, 32, 64)))
print("restriction n=5:", restriction_sweep(5, "quadrature", (4, 8, 16, 32, 64, 128, 256, 512)))

corpus = build_corpus(1, chi_sizes=(4, 16, 64))
corpus.update({"nn_" + k: v for k, v in
               build_corpus(2, chi_sizes=(), lo=-4, hi=4, values=NONNEGATIVE_VALUES).items()})
for p in (1.5, 2, 3):
    worst = max((hl_ratio(f, p, 10 * len(f)), k) for k, f in corpus.items())
    print(f"HL p={p}:", worst)
