"""Divergence-form operators L2* L2 on a subspace D and their extremal extensions.

The Friedrichs extension is the relation of the form ‖L2 u‖² with form
domain exactly D; the Kreĭn extension is the operator L2* P L2 with P the
projection onto L2 D. Every other nonnegative extension sits between them in
resolvent order.
"""

from __future__ import annotations

import numpy as np
import numpy.typing as npt
import scipy.linalg
import scipy.stats
from loguru import logger

from opranges.config.range_config import DEFAULT_CONTEXT, ToleranceContext
from opranges.core.cayley_relations import NonnegRelation, from_operator, relation_from_form
from opranges.core.psd_core import (
    Subspace,
    as_matrix,
    hermitian_part,
    loewner_gap,
    make_psd,
    sandwich,
    spectral_norm,
    sqrt_psd,
    sum_of,
)
from opranges.errors.range_errors import CheckFailed, DimensionMismatch, NotHermitian, NotPsd

from .divergence_models import ExtensionSample, ExtensionSandwichReport
from .partial_operator import PartialOperator

SANDWICH_TOL = 1e-8
DEFAULT_SAMPLES = 100


def _source_matrix(L2: npt.ArrayLike, D: Subspace) -> np.ndarray:
    l2 = as_matrix(L2)
    if D.ambient_dim != l2.shape[1]:
        raise DimensionMismatch(f"L2 acts on C^{l2.shape[1]}, D lives in C^{D.ambient_dim}")
    return l2


def divergence_form(L2: npt.ArrayLike, D: Subspace, ctx: ToleranceContext | None = None) -> PartialOperator:
    """f -> L2* L2 f for f in D."""
    ctx = ctx or DEFAULT_CONTEXT
    l2 = _source_matrix(L2, D)
    op = PartialOperator(D, l2.conj().T @ l2)
    scale = max(1.0, spectral_norm(l2) ** 2)
    if op.symmetry_defect > ctx.asym_tol * scale:
        raise NotHermitian(f"divergence form is not symmetric on D: defect {op.symmetry_defect:.3e}")
    if op.lowest_form_value < -ctx.cmp_tol * scale:
        raise NotPsd(f"divergence form takes the value {op.lowest_form_value:.3e} on D")
    return op


def friedrichs(L2: npt.ArrayLike, D: Subspace, ctx: ToleranceContext | None = None) -> NonnegRelation:
    ctx = ctx or DEFAULT_CONTEXT
    op = divergence_form(L2, D, ctx)
    form = hermitian_part(op.form_matrix)
    rel = relation_from_form(D, form, ctx)
    if not rel.form_domain.equals(D, ctx):
        raise CheckFailed(f"Friedrichs form domain has dimension {rel.form_domain.dim}, D has {D.dim}")
    J = D.frame
    residual = float(scipy.linalg.norm(J.conj().T @ rel.operator_matrix @ J - form))
    if residual > ctx.cmp_tol * max(1.0, spectral_norm(form)) ** 2:
        raise CheckFailed(f"Friedrichs form misses ‖L2 u‖² by {residual:.3e}")
    return rel


def krein(L2: npt.ArrayLike, D: Subspace, ctx: ToleranceContext | None = None) -> NonnegRelation:
    ctx = ctx or DEFAULT_CONTEXT
    l2 = _source_matrix(L2, D)
    image = Subspace.span(l2 @ D.frame, ctx)
    soft = l2.conj().T @ image.projection @ l2
    return from_operator(make_psd(soft, ctx, scale=spectral_norm(l2) ** 2))


def shifted_resolvent(rel: NonnegRelation, shift: float) -> np.ndarray:
    """(T + a)^{-1}, zero on the multivalued part."""
    return rel.spectral(lambda t: 1.0 / (t + shift))


def _sample_middles(n: int, samples: int, rng: np.random.Generator) -> list[tuple[str, np.ndarray]]:
    """Contractions 0 <= Y <= I: both endpoints, then convex mixes and random bumps in turn."""
    middles = [("friedrichs", np.zeros((n, n), dtype=complex)), ("krein", np.eye(n, dtype=complex))]
    for index in range(max(samples - 2, 0)):
        if index % 2 == 0:
            middles.append(("convex", rng.uniform() * np.eye(n, dtype=complex)))
        else:
            frame = scipy.stats.unitary_group.rvs(n, random_state=rng) if n > 1 else np.eye(n, dtype=complex)
            middles.append(("bump", (frame * rng.uniform(size=n)) @ frame.conj().T))
    return middles[:samples]


def extension_sandwich_check(
    L2: npt.ArrayLike,
    D: Subspace,
    samples: int = DEFAULT_SAMPLES,
    shift: float = 1.0,
    rng: np.random.Generator | None = None,
    ctx: ToleranceContext | None = None,
) -> ExtensionSandwichReport:
    """Sample extensions C with (C + a)^{-1} = R_F + Δ^{1/2} Y Δ^{1/2}, Δ = R_K - R_F, and test the sandwich."""
    ctx = ctx or DEFAULT_CONTEXT
    if samples < 1 or shift <= 0:
        raise ValueError(f"need samples >= 1 and shift > 0, got {samples}, {shift}")
    rng = rng or np.random.Generator(np.random.PCG64(0))
    op = divergence_form(L2, D, ctx)
    hard, soft = friedrichs(L2, D, ctx), krein(L2, D, ctx)
    low, high = shifted_resolvent(hard, shift), shifted_resolvent(soft, shift)
    n = op.dim

    order_gap = loewner_gap(low, high)
    gap_root = sqrt_psd(make_psd(high - low, ctx, scale=1.0 / shift)).entries
    lifted = (op.action + shift * np.eye(n)) @ D.frame

    rows = []
    for index, (kind, middle) in enumerate(_sample_middles(n, samples, rng)):
        candidate = low + sandwich(gap_root, middle)
        rows.append(
            ExtensionSample(
                index=index,
                kind=kind,
                lower_gap=loewner_gap(low, candidate),
                upper_gap=loewner_gap(candidate, high),
                extension_residual=float(scipy.linalg.norm(candidate @ lifted - D.frame)),
            )
        )

    scale = max(1.0, spectral_norm(op.action))
    holds = order_gap >= -SANDWICH_TOL and all(
        row.lower_gap >= -SANDWICH_TOL and row.upper_gap >= -SANDWICH_TOL and row.extension_residual <= SANDWICH_TOL * scale
        for row in rows
    )
    if not holds:
        failing = sum(row.lower_gap < -SANDWICH_TOL or row.upper_gap < -SANDWICH_TOL for row in rows)
        logger.warning("extension sandwich fails on {} of {} samples", failing, len(rows))
    return ExtensionSandwichReport(
        friedrichs=hard,
        krein=soft,
        shift=shift,
        samples=rows,
        order_gap=order_gap,
        transversal=sum_of([hard.dom_closure, soft.dom_closure], ctx).dim == n,
        holds=holds,
    )
