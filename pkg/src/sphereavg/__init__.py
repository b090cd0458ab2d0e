"""Discrete multilinear spherical averages on the integers.

Exact lattice-point counts, the averages A_lam and their maximal operator,
quadratic Weyl sums and torus integrals, and the discrete Hardy-Littlewood
maximal function.
"""

from .averages import (
    TensorGridFunction,
    apply_average,
    apply_maximal,
    delta_maximal,
    divergence_demo,
    scaling_witness,
    spherical_average_nd,
)
from .corpus import LCG, build_corpus, chi, random_signs, random_tuple
from .exponential import (
    WeylCoefficients,
    holder_chain_check,
    n_lambda,
    reconstruct_average,
    restriction_lhs,
    restriction_ratio,
    uniform_normalization_ratio,
    weyl_coefficients,
    weyl_sum,
)
from .grid import GridFunction
from .maximal_hl import hl_maximal, lp_norm, majorization_check
from .sphere_counts import (
    RepCountTable,
    asymptotic_ratio_stats,
    enumerate_sphere,
    enumerated_counts,
    jacobi_four_square,
    rep_count_single,
    rep_count_table,
)

__version__ = "0.1.0"
