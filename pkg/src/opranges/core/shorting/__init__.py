from .shorting_models import (
    DisjointPairReport,
    GammaReport,
    ParallelLimitReport,
    ShortReport,
    SymmetryReport,
    WitnessReport,
)
from .parallel_sum import (
    default_eps_schedule,
    disjoint_pair_subspace,
    parallel_sum,
    parallel_sum_contraction,
    parallel_sum_form_value,
    parallel_sum_limit,
    parallel_sum_variational,
    route_disagreement,
)
from .shorted_operator import (
    common_witness,
    feasible_samples,
    gamma_form,
    omega_subspace,
    shorted,
    shorted_form_grid,
    symmetry_detector,
    trivial_intersection,
)

__all__ = [
    "DisjointPairReport",
    "GammaReport",
    "ParallelLimitReport",
    "ShortReport",
    "SymmetryReport",
    "WitnessReport",
    "common_witness",
    "default_eps_schedule",
    "disjoint_pair_subspace",
    "feasible_samples",
    "gamma_form",
    "omega_subspace",
    "parallel_sum",
    "parallel_sum_contraction",
    "parallel_sum_form_value",
    "parallel_sum_limit",
    "parallel_sum_variational",
    "route_disagreement",
    "shorted",
    "shorted_form_grid",
    "symmetry_detector",
    "trivial_intersection",
]
