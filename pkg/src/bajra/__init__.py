"""Generalized Bajraktarevic decision-making means and effort functions."""

__version__ = "0.1.0"

from .convexity import HullQuery, check_fconvexity, in_fconvex_hull, sample_fconvex_hull
from .equality import fit_linear_map, test_mean_equality, verify_signed_claim
from .families import (
    GiniParams,
    gini_effort,
    gini_map,
    gini_mean,
    hyperboloid_map,
    power_map,
    quasi_arithmetic_map,
)
from .maps import AdmissibleMap, check_admissibility_2d, linear_transform, ratio_map, ray_solve
from .means import (
    AggregationOutcome,
    aggregate,
    aggregate_with_delegation,
    check_casuativity,
    delegate_matrix,
)
from .profiles import DecisionProfile, make_profile, normalize_profile, split_signed_weights
from .registry import resolve_map
from .selective import SelectiveRule, arithmetic_effort, select
from .synergy import (
    CoalitionGame,
    check_null_synergy,
    coalition_table,
    gini_synergy_sign,
    stable_coalitions,
    synergy,
)

__all__ = [
    "AdmissibleMap",
    "AggregationOutcome",
    "CoalitionGame",
    "DecisionProfile",
    "GiniParams",
    "HullQuery",
    "SelectiveRule",
    "aggregate",
    "aggregate_with_delegation",
    "arithmetic_effort",
    "check_admissibility_2d",
    "check_casuativity",
    "check_fconvexity",
    "check_null_synergy",
    "coalition_table",
    "delegate_matrix",
    "fit_linear_map",
    "gini_effort",
    "gini_map",
    "gini_mean",
    "gini_synergy_sign",
    "hyperboloid_map",
    "in_fconvex_hull",
    "linear_transform",
    "make_profile",
    "normalize_profile",
    "power_map",
    "quasi_arithmetic_map",
    "ratio_map",
    "ray_solve",
    "resolve_map",
    "sample_fconvex_hull",
    "select",
    "split_signed_weights",
    "stable_coalitions",
    "synergy",
    "test_mean_equality",
    "verify_signed_claim",
]
