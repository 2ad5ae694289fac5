"""Generalized survival functions and Choquet integrals on finite spaces."""

from gchoquet.aggregators import FCA, MAX, MIN, SUM, ChoquetAggregator, check_axioms, evaluate
from gchoquet.choquet import (
    ChoquetResult,
    choquet_all_routes,
    choquet_generalized,
    choquet_special,
    choquet_standard,
    owa,
    owa_weights,
)
from gchoquet.core import (
    INF,
    Collection,
    MonotoneMeasure,
    StepFunction,
    canonicalize_step,
    complement_collection,
    integrate_step,
    powerset,
    validate_collection,
    validate_measure,
)
from gchoquet.decision import (
    Alternative,
    CriterionSpec,
    calibrate_measure,
    knapsack_select,
    normalize_criteria,
    rank_alternatives,
    shapley_value,
    shapley_vector,
)
from gchoquet.equivalence import Triple, equivalence_condition, integral_equivalent
from gchoquet.gsf import (
    Arrangement,
    build_arrangement,
    gsf_agg_scan,
    gsf_definition,
    gsf_measure_scan,
    gsf_special,
    special_measure,
)
from gchoquet.index_maps import (
    PermutationTables,
    PlateauBounds,
    build_permutations,
    greatest_interval,
    gsf_compact,
    gsf_via_maps,
    indexed_gsf,
    is_value_achieved,
    plateau_bounds,
)

__all__ = [name for name in dir() if not name.startswith("_")]
