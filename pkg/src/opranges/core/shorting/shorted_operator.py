"""Kreĭn shorted operator B_K and the trivial-intersection detectors built on it.

B_K is the largest Z with 0 <= Z <= B and ran Z inside K. It is computed from
the generalized Schur complement in the frame (K, K-perp); the variational
infimum over K-perp and the projection onto Omega_K = ran B ⊖ B^{1/2} K-perp
are kept as oracles.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg
from loguru import logger

from opranges.config.range_config import ToleranceContext
from opranges.core.psd_core import (
    Contraction,
    PsdOperator,
    Subspace,
    block_split,
    fundamental_symmetry,
    intersection_dim,
    make_psd,
    partial_inverse,
    partial_inverse_sqrt,
    polarize,
    quadratic,
    range_basis,
    reflected_intersection_dim,
    require_ambient,
    sandwich,
    sqrt_psd,
)
from opranges.errors.range_errors import DimensionMismatch, EmptyList

from .parallel_sum import route_disagreement
from .shorting_models import GammaReport, ShortReport, SymmetryReport, WitnessReport


def omega_subspace(B: PsdOperator, K: Subspace, ctx: ToleranceContext | None = None) -> Subspace:
    """Omega_K = ran B ⊖ B^{1/2} K-perp."""
    ctx = ctx or B.ctx
    require_ambient(B.dim, K)
    pushed = Subspace.span(sqrt_psd(B).entries @ K.complement().frame, ctx)
    return range_basis(B).orthogonal_part(pushed, ctx)


def _variational_short(B: PsdOperator, K: Subspace, b22_pinv: np.ndarray, ctx: ToleranceContext) -> PsdOperator:
    """Polarize f -> min over phi in K-perp of (B(f + phi), f + phi) over a frame of K."""
    outer = K.complement().frame
    # phi = -Kc B22^+ Kc* B f solves the stationarity equation P_{K-perp} B (f + phi) = 0
    minimizer = np.eye(B.dim, dtype=complex) - outer @ b22_pinv @ outer.conj().T @ B.entries

    def value(f: np.ndarray) -> float:
        return quadratic(B.entries, minimizer @ f)

    return make_psd(polarize(value, K.frame), ctx, scale=B.norm)


def shorted(B: PsdOperator, K: Subspace, ctx: ToleranceContext | None = None) -> ShortReport:
    ctx = ctx or B.ctx
    require_ambient(B.dim, K)
    split = block_split(B, K)
    b22 = make_psd(split.b22, ctx, scale=B.norm)

    cross = partial_inverse_sqrt(b22) @ split.b12.conj().T
    block = split.b11 - cross.conj().T @ cross
    result = make_psd(split.embed_inner(block), ctx, scale=B.norm)

    # ran B12* inside ran B22^{1/2}; always true for PSD B, kept as a sanity check
    residual = float(scipy.linalg.norm(sqrt_psd(b22).entries @ cross - split.b12.conj().T))
    cross_range_ok = residual <= ctx.cmp_tol * max(1.0, B.norm)
    if not cross_range_ok:
        logger.warning("ran B12* escapes ran B22^(1/2): residual {:.3e}", residual)

    variational = _variational_short(B, K, partial_inverse(b22), ctx)
    omega = omega_subspace(B, K, ctx)
    omega_route = make_psd(sandwich(sqrt_psd(B).entries, omega.projection), ctx, scale=B.norm)

    return ShortReport(
        shorted=result,
        variational=variational,
        omega_route=omega_route,
        route_disagreement=route_disagreement(result, variational, omega_route),
        vanishes=result.norm <= ctx.cmp_tol * B.norm,
        cross_range_ok=cross_range_ok,
    )


def gamma_form(B: PsdOperator, K: Subspace, ctx: ToleranceContext | None = None) -> GammaReport:
    """Contraction Gamma with B12 = B11^{1/2} Gamma B22^{1/2} and the two shorts it determines."""
    ctx = ctx or B.ctx
    require_ambient(B.dim, K)
    split = block_split(B, K)
    b11 = make_psd(split.b11, ctx, scale=B.norm)
    b22 = make_psd(split.b22, ctx, scale=B.norm)

    gamma = Contraction.checked(partial_inverse_sqrt(b11) @ split.b12 @ partial_inverse_sqrt(b22), ctx)
    g = gamma.matrix
    inner = sandwich(sqrt_psd(b11).entries, np.eye(g.shape[0]) - g @ g.conj().T)
    outer = sandwich(sqrt_psd(b22).entries, np.eye(g.shape[1]) - g.conj().T @ g)
    short_inner = make_psd(split.embed_inner(inner), ctx, scale=B.norm)
    short_outer = make_psd(split.embed_outer(outer), ctx, scale=B.norm)

    disagreement = max(
        float(scipy.linalg.norm(short_inner.entries - shorted(B, K, ctx).shorted.entries)),
        float(scipy.linalg.norm(short_outer.entries - shorted(B, split.outer, ctx).shorted.entries)),
    )
    return GammaReport(gamma=gamma, short_inner=short_inner, short_outer=short_outer, disagreement=disagreement)


def trivial_intersection(B: PsdOperator, K: Subspace, ctx: ToleranceContext | None = None) -> bool:
    """K ∩ ran B^{1/2} = {0}, read off the vanishing of B_K."""
    ctx = ctx or B.ctx
    vanishes = shorted(B, K, ctx).vanishes
    by_frames = intersection_dim(K, range_basis(B), ctx) == 0
    if vanishes != by_frames:
        logger.warning("shorted test says {} but frame test says {} (dim K={}, rank B={})", vanishes, by_frames, K.dim, B.rank)
    return vanishes


def shorted_form_grid(
    B: PsdOperator,
    K: Subspace,
    f: np.ndarray,
    radius: float = 4.0,
    points: int = 401,
) -> float:
    """Brute-force inf over phi in K-perp of (B(f + phi), f + phi) for n = 2, dim K = 1.

    A coarse grid over the complex coefficient of phi is refined once around
    its best node.
    """
    if B.dim != 2 or K.dim != 1 or K.ambient_dim != 2:
        raise DimensionMismatch("the grid oracle works on C^2 with a one-dimensional K")
    f = np.asarray(f, dtype=complex)
    direction = K.complement().frame[:, 0]

    def best_on(center: complex, half_width: float) -> tuple[complex, float]:
        axis = np.linspace(-half_width, half_width, points)
        coeffs = center + axis[:, None] + 1j * axis[None, :]
        vectors = f[:, None, None] + direction[:, None, None] * coeffs[None, :, :]
        values = np.real(np.einsum("iab,ij,jab->ab", vectors.conj(), B.entries, vectors))
        a, b = np.unravel_index(np.argmin(values), values.shape)
        return complex(coeffs[a, b]), float(values[a, b])

    step = 2 * radius / (points - 1)
    center, _ = best_on(0j, radius)
    _, value = best_on(center, 2 * step)
    return max(value, 0.0)


def common_witness(F_list: list[PsdOperator], M: Subspace, ctx: ToleranceContext | None = None) -> WitnessReport:
    """Witness test for the sum F_1 + ... + F_n and what it implies for each summand."""
    if not F_list:
        raise EmptyList("common_witness needs at least one operator")
    ctx = ctx or F_list[0].ctx
    n = F_list[0].dim
    if any(F.dim != n for F in F_list):
        raise DimensionMismatch("operators of different dimensions")
    require_ambient(n, M)

    complement = M.complement()
    total = make_psd(sum(F.entries for F in F_list), ctx, scale=sum(F.norm for F in F_list))
    sum_inner = intersection_dim(M, range_basis(total), ctx)
    sum_outer = intersection_dim(complement, range_basis(total), ctx)
    inner = [intersection_dim(M, range_basis(F), ctx) for F in F_list]
    outer = [intersection_dim(complement, range_basis(F), ctx) for F in F_list]

    witnessed = sum_inner == 0 and sum_outer == 0
    return WitnessReport(
        sum_inner_dim=sum_inner,
        sum_outer_dim=sum_outer,
        summand_inner_dims=inner,
        summand_outer_dims=outer,
        witnessed=witnessed,
        implied_ok=not witnessed or not any(inner + outer),
    )


def symmetry_detector(X: PsdOperator, M: Subspace, ctx: ToleranceContext | None = None) -> SymmetryReport:
    """Compare J ran X ∩ ran X = {0} (J = 2P_M - I) with both shorts of X vanishing."""
    ctx = ctx or X.ctx
    require_ambient(X.dim, M)
    reflected = reflected_intersection_dim(range_basis(X), fundamental_symmetry(M), ctx)
    inner = shorted(X, M, ctx).vanishes
    outer = shorted(X, M.complement(), ctx).vanishes
    return SymmetryReport(
        reflected_dim=reflected,
        inner_vanishes=inner,
        outer_vanishes=outer,
        agree=(inner and outer) == (reflected == 0),
    )


def feasible_samples(
    B: PsdOperator,
    K: Subspace,
    rng: np.random.Generator,
    count: int,
    ctx: ToleranceContext | None = None,
) -> list[np.ndarray]:
    """Random Z = B^{1/2} Q B^{1/2} with Q projecting onto a random subspace of Omega_K.

    Each sample satisfies 0 <= Z <= B and ran Z inside K, so Z <= B_K.
    """
    ctx = ctx or B.ctx
    omega = omega_subspace(B, K, ctx)
    root = sqrt_psd(B).entries
    samples = []
    for _ in range(count):
        if omega.dim == 0:
            samples.append(np.zeros((B.dim, B.dim), dtype=complex))
            continue
        size = int(rng.integers(1, omega.dim + 1))
        mix = rng.standard_normal((omega.dim, size)) + 1j * rng.standard_normal((omega.dim, size))
        picked = Subspace.span(omega.frame @ mix, ctx)
        samples.append(sandwich(root, picked.projection))
    return samples
