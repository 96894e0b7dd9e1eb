from .blocks import BlockSplit, block_split, require_ambient
from .contraction import Contraction
from .forms import polarize, quadratic
from .psd_operator import (
    PsdOperator,
    as_matrix,
    hermitian_part,
    kernel_basis,
    loewner_gap,
    make_psd,
    partial_inverse,
    partial_inverse_sqrt,
    psd_power,
    range_basis,
    relative_residual,
    sandwich,
    spectral_norm,
    sqrt_psd,
)
from .subspace import (
    Subspace,
    fundamental_symmetry,
    intersection_dim,
    max_angle,
    principal_angles,
    reflected_intersection_dim,
    sum_of,
)

__all__ = [
    "BlockSplit",
    "Contraction",
    "PsdOperator",
    "Subspace",
    "as_matrix",
    "block_split",
    "fundamental_symmetry",
    "hermitian_part",
    "intersection_dim",
    "kernel_basis",
    "loewner_gap",
    "make_psd",
    "max_angle",
    "partial_inverse",
    "partial_inverse_sqrt",
    "polarize",
    "principal_angles",
    "psd_power",
    "quadratic",
    "range_basis",
    "reflected_intersection_dim",
    "relative_residual",
    "require_ambient",
    "sandwich",
    "spectral_norm",
    "sqrt_psd",
    "sum_of",
]
