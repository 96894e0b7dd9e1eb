from __future__ import annotations

from opranges.config.range_config import DEFAULT_CONTEXT, ToleranceContext
from opranges.core.psd_core import PsdOperator, Subspace, make_psd, max_angle, range_basis, sqrt_psd, sum_of
from opranges.errors.range_errors import DimensionMismatch, EmptyList
from .range_models import RangeSumReport, SandwichReport


def range_sum_identity_check(F_list: list[PsdOperator], ctx: ToleranceContext | None = None) -> RangeSumReport:
    ctx = ctx or DEFAULT_CONTEXT
    if not F_list:
        raise EmptyList("range_sum_identity_check needs at least one operator")
    n = F_list[0].dim
    if any(F.dim != n for F in F_list):
        raise DimensionMismatch("operators of different dimensions")

    total = make_psd(sum(F.entries for F in F_list), ctx, scale=sum(F.norm for F in F_list))
    spanned = sum_of([range_basis(F) for F in F_list], ctx)
    return RangeSumReport(rank_of_sum=total.rank, span_dim=spanned.dim, passed=total.rank == spanned.dim)


def sandwich_range_check(F: PsdOperator, M: PsdOperator, ctx: ToleranceContext | None = None) -> SandwichReport:
    ctx = ctx or DEFAULT_CONTEXT
    if F.dim != M.dim:
        raise DimensionMismatch(f"F in C^{F.dim}, M in C^{M.dim}")
    root = sqrt_psd(F).entries
    inner = make_psd(root @ M.entries @ root, ctx, scale=F.norm * M.norm)
    left = range_basis(inner)
    right = Subspace.span(root @ range_basis(M).frame, ctx)
    return SandwichReport(left=left, right=right, max_angle=max_angle(left, right), passed=left.equals(right, ctx))
