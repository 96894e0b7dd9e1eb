"""Parallel addition F : G by three independent routes.

The contraction route is canonical; the variational and the resolvent-limit
routes exist to cross-check it.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg
from loguru import logger

from opranges.config.range_config import ToleranceContext
from opranges.core.psd_core import (
    PsdOperator,
    Subspace,
    intersection_dim,
    make_psd,
    partial_inverse,
    partial_inverse_sqrt,
    polarize,
    quadratic,
    range_basis,
    relative_residual,
    sandwich,
    sqrt_psd,
)
from opranges.errors.range_errors import DimensionMismatch, HypothesisViolated, NotConverged

from .shorting_models import DisjointPairReport, ParallelLimitReport

EPS_DECADES = 10
CAUCHY_THRESHOLD = 1e-6
IDEMPOTENCE_TOL = 1e-7


def _check_pair(F: PsdOperator, G: PsdOperator) -> None:
    if F.dim != G.dim:
        raise DimensionMismatch(f"F in C^{F.dim}, G in C^{G.dim}")


def parallel_sum_contraction(F: PsdOperator, G: PsdOperator) -> tuple[PsdOperator, np.ndarray]:
    """F + G together with M = (F+G)^{[-1/2]} F (F+G)^{[-1/2]}, a contraction on ran(F+G)."""
    _check_pair(F, G)
    total = F + G
    return total, sandwich(partial_inverse_sqrt(total), F.entries)


def parallel_sum(F: PsdOperator, G: PsdOperator, ctx: ToleranceContext | None = None) -> PsdOperator:
    ctx = ctx or F.ctx
    total, M = parallel_sum_contraction(F, G)
    root = sqrt_psd(total).entries
    return make_psd(sandwich(root, M - M @ M), ctx, scale=total.norm)


def parallel_sum_form_value(F: PsdOperator, G: PsdOperator, h: np.ndarray) -> float:
    """inf over h = f + g of (Ff, f) + (Gg, g), attained at g = (F+G)^+ F h."""
    _check_pair(F, G)
    h = np.asarray(h, dtype=complex)
    g = partial_inverse(F + G) @ (F.entries @ h)
    return quadratic(F.entries, h - g) + quadratic(G.entries, g)


def parallel_sum_variational(
    F: PsdOperator,
    G: PsdOperator,
    basis_probes: np.ndarray | None = None,
    ctx: ToleranceContext | None = None,
) -> PsdOperator:
    ctx = ctx or F.ctx
    _check_pair(F, G)
    total_pinv = partial_inverse(F + G)

    def value(h: np.ndarray) -> float:
        g = total_pinv @ (F.entries @ h)
        return quadratic(F.entries, h - g) + quadratic(G.entries, g)

    basis = np.eye(F.dim, dtype=complex) if basis_probes is None else np.asarray(basis_probes, dtype=complex)
    return make_psd(polarize(value, basis), ctx, scale=F.norm + G.norm)


def default_eps_schedule(total: PsdOperator) -> list[float]:
    positive = total.eigvals[total.support]
    level = min(1.0, float(positive.min())) if positive.size else 1.0
    return [level * 10.0**-k for k in range(1, EPS_DECADES + 1)]


def parallel_sum_limit(
    F: PsdOperator,
    G: PsdOperator,
    eps_schedule: tuple[float, ...] | list[float] | None = None,
    ctx: ToleranceContext | None = None,
) -> ParallelLimitReport:
    """Evaluate F(F+G+eps)^{-1}G along a decreasing schedule.

    The default schedule is geometric over ``EPS_DECADES`` decades starting at
    a tenth of min(1, smallest nonzero eigenvalue of F + G), so every eps
    stays below the spectrum and the Cauchy increments shrink monotonically.

    The resolvent is taken in a frame of ran(F+G); outside it both F and G
    vanish, so nothing is lost and the kernel does not pollute the iterates.
    """
    ctx = ctx or F.ctx
    _check_pair(F, G)
    total = F + G
    schedule = default_eps_schedule(total) if eps_schedule is None else [float(eps) for eps in eps_schedule]
    if len(schedule) < 2 or any(eps <= 0 for eps in schedule) or any(b >= a for a, b in zip(schedule, schedule[1:])):
        raise ValueError("eps_schedule must be positive, strictly decreasing, with at least two entries")

    frame = range_basis(total).frame
    f_r = frame.conj().T @ F.entries @ frame
    g_r = frame.conj().T @ G.entries @ frame
    s_r = f_r + g_r
    identity = np.eye(frame.shape[1], dtype=complex)

    iterates = []
    for eps in schedule:
        reduced = f_r @ scipy.linalg.solve(s_r + eps * identity, g_r) if frame.shape[1] else f_r
        iterates.append(frame @ reduced @ frame.conj().T)
    increments = [float(scipy.linalg.norm(b - a)) for a, b in zip(iterates, iterates[1:])]

    threshold = CAUCHY_THRESHOLD * max(1.0, F.norm + G.norm)
    settled = [step for step in increments if step > threshold]
    if any(b > a for a, b in zip(settled, settled[1:])) or increments[-1] > threshold:
        logger.warning("parallel-sum limit stalled: increments {}", ["%.2e" % step for step in increments])
        raise NotConverged(f"last Cauchy increment {increments[-1]:.3e} above {threshold:.3e}")

    logger.debug("parallel-sum limit: last increment {:.3e}", increments[-1])
    result = make_psd((iterates[-1] + iterates[-1].conj().T) / 2, ctx, scale=total.norm)
    return ParallelLimitReport(result=result, eps=schedule, increments=increments, last_increment=increments[-1])


def route_disagreement(*routes: PsdOperator) -> float:
    """Largest pairwise Frobenius distance."""
    worst = 0.0
    for i, first in enumerate(routes):
        for second in routes[i + 1 :]:
            worst = max(worst, float(scipy.linalg.norm(first.entries - second.entries)))
    return worst


def disjoint_pair_subspace(F: PsdOperator, G: PsdOperator, ctx: ToleranceContext | None = None) -> DisjointPairReport:
    """When F : G = 0, write F and G as complementary compressions of F + G.

    The contraction M of F relative to F + G is then a projection P, and
    F = (F+G)^{1/2} P (F+G)^{1/2}, G = (F+G)^{1/2} (I - P) (F+G)^{1/2}.
    """
    ctx = ctx or F.ctx
    total, M = parallel_sum_contraction(F, G)
    defect = float(scipy.linalg.norm(M @ M - M))
    if defect > IDEMPOTENCE_TOL:
        raise HypothesisViolated(f"F : G != 0, ||M^2 - M|| = {defect:.3e}")

    P = Subspace.span(M, ctx)
    root = sqrt_psd(total).entries
    identity = np.eye(F.dim, dtype=complex)
    range_frame = range_basis(total)
    return DisjointPairReport(
        subspace=P,
        idempotence_defect=defect,
        f_residual=relative_residual(sandwich(root, P.projection), F.entries),
        g_residual=relative_residual(sandwich(root, identity - P.projection), G.entries),
        inner_intersection_dim=intersection_dim(P, range_frame, ctx),
        outer_intersection_dim=intersection_dim(P.complement(), range_frame, ctx),
    )
