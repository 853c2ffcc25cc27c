"""Exact computations on finite two-variable functions.

Weights and probabilities are fractions.Fraction; value labels are strings.
"""

from ._core import (
    AmbiguousCell,
    BudgetExceeded,
    FiniteFunction,
    MclassError,
    SearchLimitExceeded,
    canonical_form,
    collision_search_length,
    collision_witness,
    congruence_group,
    corner_distribution,
    corner_total_variation,
    is_completely_pure,
    is_pure,
    isomorphic,
    philox4x32_10,
    purify,
    reconstruct,
    reconstruction_check,
    sample_matrix,
    simplicity_decision,
    verify_collision,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
