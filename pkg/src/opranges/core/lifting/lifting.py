"""Liftings A = T^{1/2} P_M T^{1/2}: the block criterion, factor recovery and the condition taxonomy.

The sufficiency construction needs a Y with ran Y ∩ R = {0} while
ran Y^{1/2} contains R, which cannot happen once ran Y = ran Y^{1/2}.
Only the necessity direction is built; truncation_diagnostic probes how the
criterion factor degenerates instead.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg
from loguru import logger

from opranges.config.range_config import DEFAULT_CONTEXT, ToleranceContext
from opranges.core.compressions import compressed
from opranges.core.psd_core import (
    Contraction,
    PsdOperator,
    Subspace,
    block_split,
    intersection_dim,
    make_psd,
    range_basis,
    require_ambient,
    spectral_norm,
    sqrt_psd,
)
from opranges.core.range_calculus import douglas_solve, range_inclusion
from opranges.errors.range_errors import CheckFailed, DimensionMismatch
from opranges.tables.lifting_table import LiftingRegime, SeriesClass

from .lifting_models import (
    ConditionFlags,
    ExampleReport,
    GradedModel,
    LiftingCriterion,
    RecoveredFactors,
    TruncationReport,
    TruncationRow,
)

# a divergent p-series has exponent >= -1; the margin absorbs the finite-n fit error
DIVERGENCE_MARGIN = 0.125
NEGLIGIBLE_INCREMENT = 1e-13


def lifting_criterion(A: PsdOperator, M: Subspace, ctx: ToleranceContext | None = None) -> LiftingCriterion:
    """ran A12 inside ran A11^{3/4}, with ‖A11^{[-3/4]} A12‖ as the factor norm."""
    ctx = ctx or A.ctx
    require_ambient(A.dim, M)
    split = block_split(A, M)
    a11 = make_psd(split.b11, ctx, scale=A.norm)
    included, _ = range_inclusion(split.b12, a11.power(0.75), ctx)
    if not included:
        return LiftingCriterion(False, float("inf"))
    return LiftingCriterion(True, spectral_norm(a11.power(-0.75) @ split.b12))


def recover_factors(T: PsdOperator, M: Subspace, ctx: ToleranceContext | None = None) -> RecoveredFactors:
    ctx = ctx or T.ctx
    require_ambient(T.dim, M)
    A = compressed(T, M, ctx)
    root = sqrt_psd(T)
    x_split, a_split = block_split(root, M), block_split(A, M)

    W = make_psd(x_split.b11, ctx, scale=root.norm)
    U = x_split.b12
    X22 = make_psd(x_split.b22, ctx, scale=root.norm)
    block_residual = max(
        float(scipy.linalg.norm(a_split.b11 - W.entries @ W.entries)),
        float(scipy.linalg.norm(a_split.b12 - W.entries @ U)),
    )

    # U = W^{1/2} C, then C* = X22^{1/2} G*
    C = douglas_solve(U, sqrt_psd(W).entries, ctx).factor
    G_adjoint = douglas_solve(C.conj().T, sqrt_psd(X22).entries, ctx).factor
    G = Contraction.checked(G_adjoint.conj().T, ctx)
    logger.debug("recovered lifting factors: ||G|| = {:.6f}, block residual {:.3e}", G.norm, block_residual)
    return RecoveredFactors(A=A, W=W, U=U, X22=X22, G=G, block_residual=block_residual)


def classify_conditions(W: PsdOperator, V: PsdOperator, ctx: ToleranceContext | None = None) -> ConditionFlags:
    ctx = ctx or W.ctx
    if W.dim != V.dim:
        raise DimensionMismatch(f"W on C^{W.dim}, V on C^{V.dim}")
    ran_w, ran_v = range_basis(W), range_basis(V)
    trivial = intersection_dim(ran_v, ran_w, ctx) == 0
    v_in_w = ran_w.contains(ran_v, ctx)
    w_in_v = ran_v.contains(ran_w, ctx)

    subspace_lift = trivial and v_in_w
    complement_lift = trivial and w_in_v
    if subspace_lift and complement_lift:
        regime = LiftingRegime.BOTH
    elif subspace_lift:
        regime = LiftingRegime.SUBSPACE
    elif complement_lift:
        regime = LiftingRegime.COMPLEMENT
    else:
        regime = LiftingRegime.NONE
    return ConditionFlags(
        intersection_trivial=trivial,
        v_in_w_sqrt=v_in_w,
        w_in_v_sqrt=w_in_v,
        subspace_lift=subspace_lift,
        complement_lift=complement_lift,
        both=subspace_lift and complement_lift,
        regime=regime,
    )


def _example_report(W: PsdOperator, V: PsdOperator, ctx: ToleranceContext) -> ExampleReport:
    ran_w, ran_v = range_basis(W), range_basis(V)
    ran_w_root = range_basis(sqrt_psd(W))
    return ExampleReport(
        V=V,
        v_in_w_sqrt=ran_w_root.contains(ran_v, ctx),
        root_ranges_equal=range_basis(sqrt_psd(V)).equals(ran_w_root, ctx),
        meets_w_dim=intersection_dim(range_basis(sqrt_psd(V)), ran_w, ctx),
        finite_collapse=ran_w_root.equals(ran_w, ctx),
    )


def example_v1(W: PsdOperator, L: Subspace, ctx: ToleranceContext | None = None) -> ExampleReport:
    """V1 = W^{1/2} P_L W^{1/2}."""
    ctx = ctx or W.ctx
    return _example_report(W, compressed(W, L, ctx), ctx)


def example_v2(W: PsdOperator, L: Subspace, ctx: ToleranceContext | None = None) -> ExampleReport:
    """V2 = W^{1/2}(I + P_L)W^{1/2}; its square root has the range of W^{1/2}."""
    ctx = ctx or W.ctx
    V1 = compressed(W, L, ctx)
    V2 = make_psd(W.entries + V1.entries, ctx, scale=2 * W.norm)
    return _example_report(W, V2, ctx)


def _factor_column(model: GradedModel, n: int, ctx: ToleranceContext) -> np.ndarray:
    indices = np.arange(1, n + 1, dtype=float)
    a11 = make_psd(np.diag(indices ** -model.a_exponent), ctx)
    coupling = np.zeros(n) if np.isinf(model.b_exponent) else indices ** -model.b_exponent
    return a11.power(-0.75) @ coupling


def truncation_diagnostic(model: GradedModel, ctx: ToleranceContext | None = None) -> TruncationReport:
    """Factor norms ‖A11(n)^{-3/4} A12(n)‖ along the schedule and a bounded/divergent verdict.

    The verdict fits q in mean(|factor_i|², i in (n_k, n_k+1]) ~ n^q and calls
    the series divergent when q >= -1 (up to DIVERGENCE_MARGIN). It must agree
    with the exact test 2b - 3a/2 > 1.
    """
    ctx = ctx or DEFAULT_CONTEXT
    sizes = model.size_schedule
    column = _factor_column(model, sizes[-1], ctx)
    squares = np.abs(column) ** 2
    rows = [TruncationRow(n=n, factor_norm=float(np.sqrt(squares[:n].sum()))) for n in sizes]

    total = float(squares.sum())
    points, means = [], []
    for low, high in zip(sizes, sizes[1:]):
        increment = float(squares[low:high].sum())
        if increment <= NEGLIGIBLE_INCREMENT * max(total, 1.0):
            continue
        points.append(np.log(np.sqrt(low * high)))
        means.append(np.log(increment / (high - low)))

    fitted = growth = None
    numeric = SeriesClass.BOUNDED
    if len(points) >= 2:
        fitted = float(np.polyfit(points, means, 1)[0])
        if fitted + 1 >= -DIVERGENCE_MARGIN:
            numeric = SeriesClass.DIVERGENT
            growth = (fitted + 1) / 2

    analytic = model.analytic_class
    logger.debug("truncation a={} b={}: fitted q={} -> {} (exact {})", model.a_exponent, model.b_exponent, fitted, numeric, analytic)
    if numeric != analytic:
        raise CheckFailed(f"truncation fit says {numeric}, exponent test says {analytic}")
    return TruncationReport(
        model=model,
        rows=rows,
        fitted_exponent=fitted,
        growth_rate=growth,
        numeric_class=numeric,
        analytic_class=analytic,
    )
