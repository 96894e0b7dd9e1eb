from .compression_models import (
    BlockWitnessReport,
    ChainReport,
    ChainStep,
    CompositionReport,
    CompressionReport,
    CriterionReport,
    ExtremeSplit,
    GroupFamilyReport,
    GroupSample,
    IntertwinerReport,
    MiddleProjection,
    MonotoneFactorReport,
    ProjectionFamily,
    ProjectionSample,
)
from .compression import (
    chain,
    compose_compressions,
    compress,
    compressed,
    general_criterion,
    middle_projection,
    monotone_factor,
    pathological_block,
    split_extreme,
)
from .projection_family import (
    continuity_modulus,
    group_family,
    intertwiner,
    projection_family,
    projection_sample,
    require_disjoint_ranges,
)

__all__ = [
    "BlockWitnessReport",
    "ChainReport",
    "ChainStep",
    "CompositionReport",
    "CompressionReport",
    "CriterionReport",
    "ExtremeSplit",
    "GroupFamilyReport",
    "GroupSample",
    "IntertwinerReport",
    "MiddleProjection",
    "MonotoneFactorReport",
    "ProjectionFamily",
    "ProjectionSample",
    "chain",
    "compose_compressions",
    "compress",
    "compressed",
    "continuity_modulus",
    "general_criterion",
    "group_family",
    "intertwiner",
    "middle_projection",
    "monotone_factor",
    "pathological_block",
    "projection_family",
    "projection_sample",
    "require_disjoint_ranges",
    "split_extreme",
]
