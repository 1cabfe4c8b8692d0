"""Exact rank/weight statistics of matrices over finite fields.

Counts m-by-n matrices of rank k over F_q, gives closed forms for the
average weight and the full rank-one weight distribution, samples rank-k
matrices uniformly, and verifies every closed form against exhaustive
enumeration at small sizes.
"""

from .counting import (
    count_independent_tuples,
    count_invertible,
    count_rank_matrices,
    gaussian_binomial,
    subspace_ratio,
)
from .distributions import (
    MomentSummary,
    average_weight,
    cr_component_probs,
    entry_nonzero_prob,
    ks_distance_to_normal,
    normal_cdf,
    rank1_moments,
    rank1_vector_pmf,
    rank1_weight_pmf,
)
from .gf import Field, field_for_order, make_field
from .matrix import CRFactorization, Matrix, RrefResult, cr_factor
from .oracle import (
    DEFAULT_CAP,
    EntryCountTable,
    JointTable,
    enumerate_entry_counts,
    enumerate_joint,
)
from .sampling import (
    DEFAULT_SEED,
    EmpiricalPmf,
    RandomStream,
    empirical_weight_pmf,
    sample_full_rank,
    sample_rank_k,
    sample_rref,
)

__all__ = [
    "CRFactorization",
    "DEFAULT_CAP",
    "DEFAULT_SEED",
    "EmpiricalPmf",
    "EntryCountTable",
    "Field",
    "JointTable",
    "Matrix",
    "MomentSummary",
    "RandomStream",
    "RrefResult",
    "average_weight",
    "count_independent_tuples",
    "count_invertible",
    "count_rank_matrices",
    "cr_component_probs",
    "cr_factor",
    "empirical_weight_pmf",
    "entry_nonzero_prob",
    "enumerate_entry_counts",
    "enumerate_joint",
    "field_for_order",
    "gaussian_binomial",
    "ks_distance_to_normal",
    "make_field",
    "normal_cdf",
    "rank1_moments",
    "rank1_vector_pmf",
    "rank1_weight_pmf",
    "sample_full_rank",
    "sample_rank_k",
    "sample_rref",
    "subspace_ratio",
]

__version__ = "0.1.0"
