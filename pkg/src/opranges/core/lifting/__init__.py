from .lifting_models import (
    ConditionFlags,
    ExampleReport,
    GradedModel,
    LiftingCriterion,
    RecoveredFactors,
    TruncationReport,
    TruncationRow,
)
from .lifting import (
    classify_conditions,
    example_v1,
    example_v2,
    lifting_criterion,
    recover_factors,
    truncation_diagnostic,
)

__all__ = [
    "ConditionFlags",
    "ExampleReport",
    "GradedModel",
    "LiftingCriterion",
    "RecoveredFactors",
    "TruncationReport",
    "TruncationRow",
    "classify_conditions",
    "example_v1",
    "example_v2",
    "lifting_criterion",
    "recover_factors",
    "truncation_diagnostic",
]
