"""Restrictions B_k = B on D_k built from the splitting of T = B², and their polar counterpart."""

from __future__ import annotations

import numpy as np
import numpy.typing as npt
import scipy.linalg
from loguru import logger

from opranges.config.range_config import DEFAULT_CONTEXT, ToleranceContext
from opranges.core.cayley_relations import from_operator, split_pair
from opranges.core.psd_core import (
    Subspace,
    as_matrix,
    hermitian_part,
    intersection_dim,
    loewner_gap,
    make_psd,
    spectral_norm,
    sum_of,
)
from opranges.errors.range_errors import NotHermitian, NotInvertible, NotSquare, RankDeficientSource

from .divergence_models import PolarReport, ProductPairReport, ProductPiece
from .extensions import friedrichs, krein


def _hermitian_invertible(B: npt.ArrayLike, ctx: ToleranceContext) -> np.ndarray:
    b = as_matrix(B)
    if b.shape[0] != b.shape[1]:
        raise NotSquare(f"B of shape {b.shape} is not square")
    size = float(scipy.linalg.norm(b))
    if size > 0 and scipy.linalg.norm(b - b.conj().T) > ctx.asym_tol * size:
        raise NotHermitian("B is not Hermitian")
    b = hermitian_part(b)
    smallest = float(np.abs(scipy.linalg.eigvalsh(b)).min(initial=np.inf)) if b.size else 0.0
    if smallest <= ctx.cmp_tol * max(1.0, spectral_norm(b)):
        raise NotInvertible(f"B has an eigenvalue of modulus {smallest:.3e}")
    return b


def product_pair(B: npt.ArrayLike, M: Subspace, ctx: ToleranceContext | None = None) -> ProductPairReport:
    """Split dom B = D_1 + D_2 through T = B² and test the Friedrichs and Kreĭn claims for B_k B."""
    ctx = ctx or DEFAULT_CONTEXT
    b = _hermitian_invertible(B, ctx)
    n = b.shape[0]
    T = make_psd(b @ b, ctx, scale=spectral_norm(b) ** 2)
    split = split_pair(T, M)
    square_resolvent = from_operator(T).resolvent.entries
    b_inv = scipy.linalg.inv(b)

    domains = [split.rel1.form_domain, split.rel2.form_domain]
    pieces = []
    for k, domain in enumerate(domains, start=1):
        preimage = Subspace.span(b_inv @ domain.frame, ctx)
        hard = friedrichs(b, preimage, ctx)
        J = preimage.frame
        form_residual = float(scipy.linalg.norm(J.conj().T @ (hard.operator_matrix - T.entries) @ J))

        model = b @ domain.projection @ b
        soft = krein(b, preimage, ctx)
        pieces.append(
            ProductPiece(
                k=k,
                domain=domain,
                friedrichs=hard,
                friedrichs_order_gap=loewner_gap(hard.resolvent.entries, square_resolvent),
                friedrichs_form_residual=form_residual,
                krein_residual=float(scipy.linalg.norm(soft.operator_matrix - model)),
                krein_below_square=loewner_gap(model, T.entries),
                image_spans=Subspace.span(b @ domain.frame, ctx).dim == n,
            )
        )

    first, second = domains
    graph = 0.0
    if first.dim and second.dim:
        graph = float(np.abs(second.frame.conj().T @ (np.eye(n) + b @ b) @ first.frame).max())
    images = [Subspace.span(b @ domain.frame, ctx) for domain in domains]
    trivial = intersection_dim(first, second, ctx) == 0
    logger.debug("product pair: dims {} + {}, graph orthogonality {:.3e}", first.dim, second.dim, graph)
    return ProductPairReport(
        pieces=pieces,
        domains_trivial=trivial,
        direct_sum=trivial and sum_of(domains, ctx).dim == n,
        graph_orthogonality=graph,
        images_sum_span=sum_of(images, ctx).dim == n,
        resolvent_sum_residual=split.resolvent_sum_residual,
    )


def _preimage(adjoint: np.ndarray, domain: Subspace) -> Subspace:
    """{h : B* h in domain}."""
    outside = np.eye(domain.ambient_dim) - domain.projection
    return Subspace(scipy.linalg.null_space(outside @ adjoint))


def polar_restrictions(Bop: npt.ArrayLike, M: Subspace, ctx: ToleranceContext | None = None) -> PolarReport:
    """Restrictions U B_k of B = U|B| with B_k taken from the product pair of |B|."""
    ctx = ctx or DEFAULT_CONTEXT
    b = as_matrix(Bop)
    singular = scipy.linalg.svdvals(b)
    if b.shape[1] == 0 or singular.size < b.shape[1] or singular[-1] <= ctx.cmp_tol * singular[0]:
        raise RankDeficientSource(f"B of shape {b.shape} does not have full column rank")

    U, absolute = scipy.linalg.polar(b, side="right")
    absolute = hermitian_part(absolute)
    product = product_pair(absolute, M, ctx)
    adjoint = b.conj().T

    adjoint_residual = 0.0
    for piece in product.pieces:
        J = piece.domain.frame
        restricted = U @ absolute @ J
        adjoint_residual = max(adjoint_residual, float(scipy.linalg.norm(adjoint @ restricted - absolute @ absolute @ J)))

    kernel = Subspace(scipy.linalg.null_space(adjoint))
    preimages = [_preimage(adjoint, piece.domain) for piece in product.pieces]
    meet = preimages[0].intersection(preimages[1], ctx)
    support = make_psd(absolute, ctx).range_projection()
    return PolarReport(
        product=product,
        polar_residual=float(scipy.linalg.norm(b - U @ absolute)),
        isometry_residual=float(scipy.linalg.norm(U.conj().T @ U - support)),
        adjoint_product_residual=adjoint_residual,
        kernel_dim=kernel.dim,
        intersection_is_kernel=meet.equals(kernel, ctx),
        domains_span=sum_of(preimages, ctx).dim == b.shape[0],
    )
