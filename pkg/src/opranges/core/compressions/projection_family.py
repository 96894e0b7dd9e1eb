"""The projection family P(x) with A = (A + xB)^{1/2} P(x) (A + xB)^{1/2}.

Requires ran A^{1/2} ∩ ran B^{1/2} = {0}; then A : xB = 0 and the contraction
of A relative to A + xB is an orthogonal projection for every x > 0.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg
from loguru import logger

from opranges.config.range_config import ToleranceContext
from opranges.core.psd_core import (
    Contraction,
    PsdOperator,
    intersection_dim,
    make_psd,
    partial_inverse_sqrt,
    range_basis,
    sandwich,
    sqrt_psd,
)
from opranges.core.range_calculus import douglas_solve
from opranges.errors.range_errors import DimensionMismatch, HypothesisViolated, NotHermitian

from .compression_models import (
    GroupFamilyReport,
    GroupSample,
    IntertwinerReport,
    ProjectionFamily,
    ProjectionSample,
)

DEFAULT_DELTAS = tuple(10.0 ** -k for k in range(1, 7))


def require_disjoint_ranges(A: PsdOperator, B: PsdOperator, ctx: ToleranceContext) -> None:
    if A.dim != B.dim:
        raise DimensionMismatch(f"A in C^{A.dim}, B in C^{B.dim}")
    shared = intersection_dim(range_basis(A), range_basis(B), ctx)
    if shared:
        raise HypothesisViolated(f"ran A^(1/2) and ran B^(1/2) share a {shared}-dimensional subspace")


def _pencil(A: PsdOperator, B: PsdOperator, x: float, ctx: ToleranceContext) -> PsdOperator:
    return make_psd(A.entries + x * B.entries, ctx, scale=A.norm + x * B.norm)


def projection_sample(A: PsdOperator, B: PsdOperator, x: float, ctx: ToleranceContext | None = None) -> ProjectionSample:
    ctx = ctx or A.ctx
    if x <= 0:
        raise ValueError(f"x must be positive, got {x}")
    pencil = _pencil(A, B, x, ctx)
    S = partial_inverse_sqrt(pencil) @ sqrt_psd(A).entries
    P = S @ S.conj().T
    rebuilt = sandwich(sqrt_psd(pencil).entries, P)
    return ProjectionSample(
        x=x,
        projection=P,
        support=pencil.range_projection(),
        projection_defect=float(scipy.linalg.norm(P @ P - P)),
        reconstruction=float(scipy.linalg.norm(A.entries - rebuilt)),
    )


def projection_family(
    A: PsdOperator,
    B: PsdOperator,
    xs: list[float],
    ctx: ToleranceContext | None = None,
) -> ProjectionFamily:
    ctx = ctx or A.ctx
    require_disjoint_ranges(A, B, ctx)
    samples = [projection_sample(A, B, float(x), ctx) for x in xs]
    for sample in samples:
        logger.debug(
            "P({:g}): defect {:.3e}, reconstruction {:.3e}", sample.x, sample.projection_defect, sample.reconstruction
        )
    return ProjectionFamily(A=A, B=B, samples=samples)


def continuity_modulus(
    A: PsdOperator,
    B: PsdOperator,
    x0: float,
    deltas: tuple[float, ...] | list[float] = DEFAULT_DELTAS,
    ctx: ToleranceContext | None = None,
) -> list[float]:
    """‖P(x0 + delta) - P(x0)‖_F for each delta."""
    ctx = ctx or A.ctx
    require_disjoint_ranges(A, B, ctx)
    base = projection_sample(A, B, x0, ctx).projection
    return [
        float(scipy.linalg.norm(projection_sample(A, B, x0 + delta, ctx).projection - base))
        for delta in deltas
    ]


def intertwiner(A: PsdOperator, B: PsdOperator, x: float, y: float, ctx: ToleranceContext | None = None) -> IntertwinerReport:
    """Contraction Z with (A + xB)^{1/2} = Z (A + yB)^{1/2} for 0 < x <= y."""
    ctx = ctx or A.ctx
    if not 0 < x <= y:
        raise ValueError(f"need 0 < x <= y, got x={x}, y={y}")
    require_disjoint_ranges(A, B, ctx)
    low, high = _pencil(A, B, x, ctx), _pencil(A, B, y, ctx)

    # (A+xB)^{1/2} = (A+yB)^{1/2} Z* solved in adjoint form
    adjoint = douglas_solve(sqrt_psd(low).entries, sqrt_psd(high).entries, ctx).factor
    Z = Contraction.checked(adjoint.conj().T, ctx)

    px, py = projection_sample(A, B, x, ctx), projection_sample(A, B, y, ctx)
    conjugation = float(scipy.linalg.norm(py.projection - sandwich(Z.matrix.conj().T, px.projection)))

    outer_y = py.support - py.projection
    restricted = (px.support - px.projection) @ Z.matrix @ outer_y
    count = int(round(float(np.real(np.trace(outer_y)))))
    singular_values = [float(s) for s in scipy.linalg.svd(restricted, compute_uv=False)[:count]]
    target = float(np.sqrt(x / y))
    scaling_defect = max((abs(s - target) for s in singular_values), default=0.0)

    gram = (y - x) * py.projection - (y * Z.matrix.conj().T @ Z.matrix - x * py.support)
    return IntertwinerReport(
        Z=Z,
        conjugation_residual=conjugation,
        restricted_singular_values=singular_values,
        scaling_defect=scaling_defect,
        gram_residual=float(scipy.linalg.norm(gram)),
    )


def group_family(
    A: PsdOperator,
    H: np.ndarray,
    ts: list[float],
    ctx: ToleranceContext | None = None,
) -> GroupFamilyReport:
    """Check Q_{-t} - P_{-t} = U_{-t} P_t U_t for B_t = U_t A U_{-t}, U_t = exp(itH).

    P_t is the projection of the pair (A, B_t) at x = 1 and Q_t projects onto
    ran(A + B_t). Times at which ran B_t meets ran A are skipped.
    """
    ctx = ctx or A.ctx
    generator = np.asarray(H, dtype=complex)
    if generator.shape != (A.dim, A.dim):
        raise DimensionMismatch(f"generator of shape {generator.shape} for A in C^{A.dim}")
    if scipy.linalg.norm(generator - generator.conj().T) > ctx.asym_tol * max(1.0, float(scipy.linalg.norm(generator))):
        raise NotHermitian("generator H must be Hermitian")

    def unitary(t: float) -> np.ndarray:
        return scipy.linalg.expm(1j * t * generator)

    def rotated(t: float) -> PsdOperator:
        return make_psd(sandwich(unitary(t), A.entries), ctx, scale=A.norm)

    samples: list[GroupSample] = []
    skipped: list[float] = []
    for t in ts:
        t = float(t)
        forward, backward = rotated(t), rotated(-t)
        shared = intersection_dim(range_basis(A), range_basis(forward), ctx)
        if t == 0 or shared or intersection_dim(range_basis(A), range_basis(backward), ctx):
            logger.warning("group family: skipping t={:g}, ran B_t meets ran A", t)
            skipped.append(t)
            continue
        plus = projection_sample(A, forward, 1.0, ctx)
        minus = projection_sample(A, backward, 1.0, ctx)
        predicted = sandwich(unitary(-t), plus.projection)
        residual = float(scipy.linalg.norm((minus.support - minus.projection) - predicted))
        samples.append(GroupSample(t=t, residual=residual))
    return GroupFamilyReport(samples=samples, skipped=skipped)
