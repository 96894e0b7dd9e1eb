"""The compression calculus A -> A^{1/2} P_M A^{1/2}."""

from __future__ import annotations

import numpy as np
import scipy.linalg
from loguru import logger

from opranges.config.range_config import ToleranceContext
from opranges.core.psd_core import (
    PsdOperator,
    Subspace,
    as_matrix,
    block_split,
    intersection_dim,
    loewner_gap,
    make_psd,
    partial_inverse_sqrt,
    range_basis,
    require_ambient,
    sandwich,
    spectral_norm,
    sqrt_psd,
    sum_of,
)
from opranges.core.shorting import shorted
from opranges.errors.range_errors import CheckFailed, DimensionMismatch, NotNested

from .compression_models import (
    BlockWitnessReport,
    ChainReport,
    ChainStep,
    CompositionReport,
    CompressionReport,
    CriterionReport,
    ExtremeSplit,
    MiddleProjection,
    MonotoneFactorReport,
)

IDEMPOTENCE_TOL = 1e-7


def compressed(A: PsdOperator, M: Subspace, ctx: ToleranceContext | None = None) -> PsdOperator:
    ctx = ctx or A.ctx
    require_ambient(A.dim, M)
    return make_psd(sandwich(sqrt_psd(A).entries, M.projection), ctx, scale=A.norm)


def middle_projection(base: PsdOperator, target: PsdOperator, ctx: ToleranceContext | None = None) -> MiddleProjection:
    """Read P off target = base^{1/2} P base^{1/2} through the isometry of base^{1/2} on its range."""
    ctx = ctx or base.ctx
    inv_root = partial_inverse_sqrt(base)
    middle = sandwich(inv_root, target.entries)
    support = range_basis(make_psd(middle, ctx, scale=1.0))
    defect = float(scipy.linalg.norm(middle @ middle - middle))
    rebuilt = sandwich(sqrt_psd(base).entries, support.projection)
    residual = float(scipy.linalg.norm(target.entries - rebuilt)) / max(1.0, base.norm) ** 2
    return MiddleProjection(
        subspace=support,
        residual=residual,
        idempotence_defect=defect,
        exact=defect <= IDEMPOTENCE_TOL,
    )


def compress(A: PsdOperator, M: Subspace, ctx: ToleranceContext | None = None) -> CompressionReport:
    ctx = ctx or A.ctx
    A1 = compressed(A, M, ctx)
    ran_a1 = range_basis(A1)
    pushed = Subspace.span(sqrt_psd(A).entries @ M.frame, ctx)

    a1_inv_root, a_inv_root = partial_inverse_sqrt(A1), partial_inverse_sqrt(A)
    deviations = [
        abs(float(scipy.linalg.norm(a1_inv_root @ h)) - float(scipy.linalg.norm(a_inv_root @ h)))
        for h in ran_a1.frame.T
    ]
    return CompressionReport(
        A1=A1,
        kernel_trivial=A1.rank == A.dim,
        range_A_intersect=intersection_dim(ran_a1, range_basis(A), ctx),
        range_matches=ran_a1.equals(pushed, ctx),
        isometry_check=max(deviations, default=0.0),
        order_gap=loewner_gap(A1.entries, A.entries),
    )


def compose_compressions(A: PsdOperator, P1: Subspace, P2: Subspace, ctx: ToleranceContext | None = None) -> CompositionReport:
    """A2 = A1^{1/2} P2 A1^{1/2} with A1 = A^{1/2} P1 A^{1/2}, and P12 with A2 = A^{1/2} P12 A^{1/2}."""
    ctx = ctx or A.ctx
    require_ambient(A.dim, P1, P2)
    A1 = compressed(A, P1, ctx)
    A2 = compressed(A1, P2, ctx)
    P12 = middle_projection(A, A2, ctx)
    if not P12.exact:
        logger.debug("composed compression is not a compression of A: idempotence defect {:.3e}", P12.idempotence_defect)
    return CompositionReport(A1=A1, A2=A2, P12=P12)


def monotone_factor(A: PsdOperator, P1: Subspace, P2: Subspace, ctx: ToleranceContext | None = None) -> MonotoneFactorReport:
    ctx = ctx or A.ctx
    require_ambient(A.dim, P1, P2)
    if not P2.contains(P1, ctx):
        raise NotNested(f"P1 (dim {P1.dim}) is not inside P2 (dim {P2.dim})")
    A1 = compressed(A, P1, ctx)
    A2 = compressed(A, P2, ctx)
    P = middle_projection(A2, A1, ctx)
    return MonotoneFactorReport(
        A1=A1,
        A2=A2,
        P=P,
        complement_intersect=intersection_dim(P.subspace.complement(), range_basis(A2), ctx),
    )


def pathological_block(
    W: PsdOperator,
    U: np.ndarray,
    probes: np.ndarray | None = None,
    ctx: ToleranceContext | None = None,
) -> BlockWitnessReport:
    """Assemble X = [[W², WU], [U*W, U*U]] on C^m ⊕ C^{n-m}, M the first m coordinates."""
    ctx = ctx or W.ctx
    U = as_matrix(U)
    m = W.dim
    if U.shape[0] != m:
        raise DimensionMismatch(f"U has {U.shape[0]} rows, W acts on C^{m}")
    n = m + U.shape[1]

    row = np.hstack([W.entries, U])
    X = make_psd(row.conj().T @ row, ctx, scale=spectral_norm(row) ** 2)
    M = Subspace.coordinate(n, list(range(m)))
    ran_w, ran_u = range_basis(W), Subspace.span(U, ctx)

    probes = np.eye(n, dtype=complex) if probes is None else as_matrix(probes)
    form_residual = 0.0
    for f in probes.T:
        direct = float(np.real(np.vdot(f, X.entries @ f)))
        image = W.entries @ f[:m] + U @ f[m:]
        form_residual = max(form_residual, abs(direct - float(np.vdot(image, image).real)))

    return BlockWitnessReport(
        X=X,
        M=M,
        inner_short_vanishes=shorted(X, M, ctx).vanishes,
        outer_short_vanishes=shorted(X, M.complement(), ctx).vanishes,
        w_in_u=ran_u.contains(ran_w, ctx),
        u_in_w=ran_w.contains(ran_u, ctx),
        kernel_dim=n - X.rank,
        form_residual=form_residual,
    )


def general_criterion(X: PsdOperator, M: Subspace, ctx: ToleranceContext | None = None) -> CriterionReport:
    """Evaluate ker X11 = {0}, ker X22 = {0}, ran X12 ∩ ran X11 = {0} against the direct test."""
    ctx = ctx or X.ctx
    require_ambient(X.dim, M)
    split = block_split(X, M)
    x11 = make_psd(split.b11, ctx, scale=X.norm)
    x22 = make_psd(split.b22, ctx, scale=X.norm)
    cross = Subspace.span(split.b12, ctx)

    ker11 = x11.rank == M.dim
    ker22 = x22.rank == X.dim - M.dim
    meets_trivially = cross.dim > 0 and intersection_dim(cross, range_basis(x11), ctx) == 0
    conjunction = ker11 and ker22 and meets_trivially
    direct = (
        shorted(X, M, ctx).vanishes
        and shorted(X, split.outer, ctx).vanishes
        and X.rank == X.dim
    )
    if conjunction != direct:
        raise CheckFailed(f"block criterion says {conjunction}, direct test says {direct}")
    return CriterionReport(
        ker_x11_trivial=ker11,
        ker_x22_trivial=ker22,
        cross_meets_trivially=meets_trivially,
        conjunction=conjunction,
        direct=direct,
        agree=True,
    )


def split_extreme(A: PsdOperator, M: Subspace, ctx: ToleranceContext | None = None) -> ExtremeSplit:
    ctx = ctx or A.ctx
    A1 = compressed(A, M, ctx)
    A2 = compressed(A, M.complement(), ctx)
    sum_residual = float(scipy.linalg.norm(A1.entries + A2.entries - A.entries))
    if sum_residual > ctx.cmp_tol * max(1.0, A.norm):
        raise CheckFailed(f"A1 + A2 misses A by {sum_residual:.3e}")

    ran_1, ran_2 = range_basis(A1), range_basis(A2)
    direct_sum = intersection_dim(ran_1, ran_2, ctx) == 0 and sum_of([ran_1, ran_2], ctx).equals(range_basis(A), ctx)
    return ExtremeSplit(
        A1=A1,
        A2=A2,
        sum_residual=sum_residual,
        rank_sum_ok=A1.rank + A2.rank >= A.rank,
        direct_sum=direct_sum,
    )


def chain(A: PsdOperator, M: Subspace, k_max: int, ctx: ToleranceContext | None = None) -> ChainReport:
    """Iterate A_k = A_{k-1}^{1/2} P_M A_{k-1}^{1/2} and recover P_k with A_k = A^{1/2} P_k A^{1/2}."""
    ctx = ctx or A.ctx
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    require_ambient(A.dim, M)

    steps: list[ChainStep] = []
    previous = A
    a_monotone = p_monotone = True
    for k in range(1, k_max + 1):
        current = compressed(previous, M, ctx)
        P_k = middle_projection(A, current, ctx)
        if loewner_gap(current.entries, previous.entries) < -ctx.cmp_tol * max(1.0, A.norm):
            a_monotone = False
        if steps and not steps[-1].P_k.subspace.contains(P_k.subspace, ctx):
            p_monotone = False
        ratio = current.norm / previous.norm if k > 1 and previous.norm > 0 else None
        steps.append(ChainStep(k=k, A_k=current, P_k=P_k, norm=current.norm, ratio=ratio))
        logger.debug("chain step {}: ||A_k|| = {:.6e}", k, current.norm)
        previous = current

    last = steps[-1].A_k
    fixed_point = float(scipy.linalg.norm(last.entries - compressed(last, M, ctx).entries))
    if not (a_monotone and p_monotone):
        raise CheckFailed(f"chain lost monotonicity (operators: {a_monotone}, projections: {p_monotone})")
    return ChainReport(steps=steps, a_monotone=a_monotone, p_monotone=p_monotone, fixed_point_residual=fixed_point)
