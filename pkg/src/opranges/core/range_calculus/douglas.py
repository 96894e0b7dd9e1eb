from __future__ import annotations

import numpy as np
import numpy.typing as npt
import scipy.linalg
from loguru import logger

from opranges.config.range_config import DEFAULT_CONTEXT, ToleranceContext
from opranges.core.psd_core import PsdOperator, Subspace, as_matrix, partial_inverse, range_basis, spectral_norm
from opranges.errors.range_errors import DimensionMismatch, NoFactorization
from .range_models import DouglasResult, InclusionResult


def douglas_solve(A: npt.ArrayLike, B: npt.ArrayLike, ctx: ToleranceContext | None = None) -> DouglasResult:
    """Solve A = BC with ran C inside ran B*.

    Raises NoFactorization when ran A is not contained in ran B.
    """
    ctx = ctx or DEFAULT_CONTEXT
    a, b = as_matrix(A), as_matrix(B)
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatch(f"A has {a.shape[0]} rows, B has {b.shape[0]}")

    factor = scipy.linalg.pinv(b, atol=0.0, rtol=ctx.rank_rel_tol) @ a
    residual = float(scipy.linalg.norm(a - b @ factor))
    limit = ctx.cmp_tol * max(1.0, float(scipy.linalg.norm(a)))
    if residual > limit:
        raise NoFactorization(f"residual {residual:.3e} > {limit:.3e}: ran A is not inside ran B")

    in_adjoint = Subspace.span(b.conj().T, ctx).contains(Subspace.span(factor, ctx), ctx)
    kernel_matches = Subspace.span(factor, ctx).dim == Subspace.span(a, ctx).dim
    logger.debug("douglas factor: residual={:.3e} range_ok={} kernel_ok={}", residual, in_adjoint, kernel_matches)
    return DouglasResult(
        factor=factor,
        residual=residual,
        lam=spectral_norm(factor) ** 2,
        range_in_adjoint=in_adjoint,
        kernel_matches=kernel_matches,
    )


def _column_space(X: PsdOperator | np.ndarray, ctx: ToleranceContext) -> Subspace:
    if isinstance(X, PsdOperator):
        return range_basis(X)
    return Subspace.span(X, ctx)


def range_inclusion(
    A: PsdOperator | npt.ArrayLike,
    B: PsdOperator | npt.ArrayLike,
    ctx: ToleranceContext | None = None,
) -> InclusionResult:
    """Decide ran A ⊆ ran B from frames; report the least lambda with AA* <= lambda BB*."""
    ctx = ctx or DEFAULT_CONTEXT
    a = A if isinstance(A, PsdOperator) else as_matrix(A)
    b = B if isinstance(B, PsdOperator) else as_matrix(B)
    a_entries = a.entries if isinstance(a, PsdOperator) else a
    b_entries = b.entries if isinstance(b, PsdOperator) else b
    if a_entries.shape[0] != b_entries.shape[0]:
        raise DimensionMismatch(f"A acts into C^{a_entries.shape[0]}, B into C^{b_entries.shape[0]}")

    if not _column_space(b, ctx).contains(_column_space(a, ctx), ctx):
        return InclusionResult(False, float("inf"))

    if isinstance(b, PsdOperator):
        b_pinv = partial_inverse(b)
    else:
        b_pinv = scipy.linalg.pinv(b, atol=0.0, rtol=ctx.rank_rel_tol)
    return InclusionResult(True, spectral_norm(b_pinv @ a_entries) ** 2)
