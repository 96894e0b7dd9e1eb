"""Splittings of a nonnegative operator into relations whose resolvents add up.

For R = (I + T)^{-1} and an orthogonal decomposition of the space, the
relations with resolvents R^{1/2} P_k R^{1/2} sum (in resolvent) to T. Their
form domains are R^{1/2} M_k, which are orthogonal in the graph inner
product of T.
"""

from __future__ import annotations

import itertools

import numpy as np
import numpy.typing as npt
import scipy.linalg
from loguru import logger

from opranges.core.compressions import middle_projection
from opranges.core.psd_core import (
    PsdOperator,
    Subspace,
    intersection_dim,
    loewner_gap,
    make_psd,
    partial_inverse,
    range_basis,
    require_ambient,
    sandwich,
    spectral_norm,
)
from opranges.errors.range_errors import (
    CheckFailed,
    DimensionMismatch,
    EmptyList,
    HypothesisViolated,
    NotContraction,
    NotNested,
    NotOrthogonal,
    NotSpanning,
)

from .cayley_models import ChainFamiliesReport, ChainFamilyStep, CompletionReport, SplitNReport, SplitPairReport
from .relation import NonnegRelation, form_value, from_operator
from .semigroups import semigroup

EXACT_SUM_TOL = 1e-12
RECONSTRUCTION_TOL = 1e-7
DEFAULT_PROBES = 20


def _resolvent_root(R: PsdOperator) -> np.ndarray:
    # full spectrum, no cutoff: R^{1/2} R^{1/2} must reproduce R to rounding
    return (R.eigvecs * np.sqrt(R.eigvals)) @ R.eigvecs.conj().T


def _split_resolvent(root: np.ndarray, part: Subspace) -> np.ndarray:
    return sandwich(root, part.projection)


def _as_relation(resolvent: np.ndarray, base: NonnegRelation) -> NonnegRelation:
    return NonnegRelation.from_resolvent(make_psd(resolvent, base.ctx, scale=1.0))


def _sum_residual(parts: list[np.ndarray], total: np.ndarray) -> float:
    return float(scipy.linalg.norm(sum(parts) - total) / scipy.linalg.norm(total))


def _graph_orthogonality(base: NonnegRelation, first: Subspace, second: Subspace) -> float:
    """max |(R^{-1} u, v)| = max |T[u, v] + (u, v)| over the two frames."""
    if first.dim == 0 or second.dim == 0:
        return 0.0
    gram = second.frame.conj().T @ partial_inverse(base.resolvent) @ first.frame
    return float(np.abs(gram).max())


def _kernel_claim(part: NonnegRelation, base: NonnegRelation) -> bool:
    """Null vectors of the operator part of a split piece are null for the form of T."""
    values, vectors = part.operator_spectrum
    ctx = base.ctx
    scale = max(1.0, float(base.operator_spectrum[0].max(initial=0.0)))
    for t, g in zip(values, vectors.T):
        if t > ctx.cmp_tol:
            continue
        if abs(form_value(base, g, g)) > t + ctx.cmp_tol * scale:
            return False
    return True


def split_pair(
    T: PsdOperator,
    M: Subspace,
    probes: int = DEFAULT_PROBES,
    rng: np.random.Generator | None = None,
) -> SplitPairReport:
    ctx = T.ctx
    require_ambient(T.dim, M)
    rng = rng or np.random.Generator(np.random.PCG64(0))
    base = from_operator(T)
    R = base.resolvent
    root = _resolvent_root(R)
    complement = M.complement()

    R1, R2 = _split_resolvent(root, M), _split_resolvent(root, complement)
    residual = _sum_residual([R1, R2], R.entries)
    if residual > EXACT_SUM_TOL:
        raise CheckFailed(f"R1 + R2 differs from R by {residual:.3e} relative")
    rel1, rel2 = _as_relation(R1, base), _as_relation(R2, base)

    expected1 = Subspace.span(root @ M.frame, ctx)
    expected2 = Subspace.span(root @ complement.frame, ctx)
    domains_match = rel1.form_domain.equals(expected1, ctx) and rel2.form_domain.equals(expected2, ctx)

    preservation = 0.0
    for _ in range(probes if expected1.dim else 0):
        coeffs = rng.standard_normal(expected1.dim) + 1j * rng.standard_normal(expected1.dim)
        g = expected1.frame @ coeffs
        whole = form_value(base, g, g).real
        piece = form_value(rel1, g, g).real
        preservation = max(preservation, abs(piece - whole) / (1.0 + abs(whole)))

    # f = R1(I+T)f + R2(I+T)f for every f in dom T
    lifted = np.eye(T.dim, dtype=complex) + T.entries
    decomposition = float(scipy.linalg.norm(np.eye(T.dim) - (R1 + R2) @ lifted, axis=0).max(initial=0.0))

    logger.debug(
        "split_pair dim M={}: sum residual {:.3e}, preservation {:.3e}, domains {}",
        M.dim,
        residual,
        preservation,
        domains_match,
    )
    return SplitPairReport(
        rel1=rel1,
        rel2=rel2,
        resolvent_sum_residual=residual,
        domains_match=domains_match,
        form_preservation=preservation,
        graph_orthogonality=_graph_orthogonality(base, rel1.form_domain, rel2.form_domain),
        decomposition_residual=decomposition,
        kernel_claim_ok=_kernel_claim(rel1, base) and _kernel_claim(rel2, base),
    )


def split_n(T: PsdOperator, parts: list[Subspace]) -> SplitNReport:
    ctx = T.ctx
    if not parts:
        raise EmptyList("split_n needs at least one part")
    require_ambient(T.dim, *parts)
    for (i, first), (j, second) in itertools.combinations(enumerate(parts), 2):
        overlap = spectral_norm(first.frame.conj().T @ second.frame)
        if overlap > ctx.cmp_tol:
            raise NotOrthogonal(f"parts {i} and {j} overlap with cosine {overlap:.3e}")
    if sum(part.dim for part in parts) != T.dim:
        raise NotSpanning(f"parts span {sum(part.dim for part in parts)} of {T.dim} dimensions")

    base = from_operator(T)
    if len(parts) == 1:
        return SplitNReport(relations=[base], resolvent_sum_residual=0.0, domains_pairwise_trivial=True, graph_orthogonality=0.0)

    root = _resolvent_root(base.resolvent)
    resolvents = [_split_resolvent(root, part) for part in parts]
    residual = _sum_residual(resolvents, base.resolvent.entries)
    if residual > EXACT_SUM_TOL:
        raise CheckFailed(f"resolvent sum differs from R by {residual:.3e} relative")
    relations = [_as_relation(piece, base) for piece in resolvents]

    trivial, orthogonality = True, 0.0
    for first, second in itertools.combinations(relations, 2):
        trivial = trivial and intersection_dim(first.form_domain, second.form_domain, ctx) == 0
        orthogonality = max(orthogonality, _graph_orthogonality(base, first.form_domain, second.form_domain))
    return SplitNReport(
        relations=relations,
        resolvent_sum_residual=residual,
        domains_pairwise_trivial=trivial,
        graph_orthogonality=orthogonality,
    )


def complete_pair(rel1: NonnegRelation, X: npt.ArrayLike | PsdOperator) -> CompletionReport:
    """Complete T1 to T = T1 (+) T2 along some P, given 0 <= X <= I with ran X ∩ ran A1 = {0}.

    B = (I - A1)^{1/2} X (I - A1)^{1/2} is the resolvent of T2 and A1 + B that
    of T.
    """
    ctx = rel1.ctx
    A1 = rel1.resolvent
    x = X if isinstance(X, PsdOperator) else make_psd(X, ctx)
    if x.dim != A1.dim:
        raise DimensionMismatch(f"X acts on C^{x.dim}, the relation on C^{A1.dim}")
    if x.norm > 1 + ctx.cmp_tol:
        raise NotContraction(f"||X|| = {x.norm:.12g} exceeds 1")
    meet = intersection_dim(range_basis(x), range_basis(A1), ctx)
    if meet:
        raise HypothesisViolated(f"ran X meets ran A1 in dimension {meet}")

    defect_root = _resolvent_root(make_psd(np.eye(A1.dim) - A1.entries, ctx, scale=1.0))
    B = make_psd(sandwich(defect_root, x.entries), ctx, scale=1.0)
    R = make_psd(A1.entries + B.entries, ctx, scale=1.0)

    middle = middle_projection(R, A1, ctx)
    reconstruction = float(scipy.linalg.norm(_split_resolvent(_resolvent_root(R), middle.subspace) - A1.entries))
    if reconstruction > RECONSTRUCTION_TOL:
        raise CheckFailed(f"R^(1/2) P R^(1/2) misses A1 by {reconstruction:.3e}")
    return CompletionReport(
        relation=NonnegRelation.from_resolvent(R),
        partner=NonnegRelation.from_resolvent(B),
        projection=middle.subspace,
        idempotence_defect=middle.idempotence_defect,
        reconstruction_residual=reconstruction,
    )


def chain_families(T: PsdOperator, Ns: list[Subspace]) -> ChainFamiliesReport:
    """Families T_{1,j}, T_{2,j} along an increasing chain N_1 < N_2 < ... < C^n."""
    ctx = T.ctx
    if not Ns:
        raise EmptyList("chain_families needs at least one subspace")
    require_ambient(T.dim, *Ns)
    for j, (low, high) in enumerate(zip(Ns, Ns[1:]), start=1):
        if high.dim <= low.dim or not high.contains(low, ctx):
            raise NotNested(f"N_{j} is not strictly inside N_{j + 1}")
    if Ns[-1].dim != T.dim:
        raise NotSpanning(f"the chain ends in a {Ns[-1].dim}-dimensional subspace of C^{T.dim}")

    base = from_operator(T)
    R = base.resolvent
    root = _resolvent_root(R)
    exp_t = semigroup(base, 1.0)
    inverse_base = base.inverse().resolvent.entries

    first, second, steps = [], [], []
    for j, N in enumerate(Ns, start=1):
        R1, R2 = _split_resolvent(root, N.complement()), _split_resolvent(root, N)
        rel1, rel2 = _as_relation(R1, base), _as_relation(R2, base)
        first.append(rel1)
        second.append(rel2)
        steps.append(
            ChainFamilyStep(
                j=j,
                subspace_dim=N.dim,
                r1_norm=spectral_norm(R1),
                r2_distance=spectral_norm(R2 - R.entries),
                sum_residual=_sum_residual([R1, R2], R.entries),
                semigroup1_norm=spectral_norm(semigroup(rel1, 1.0)),
                semigroup2_distance=spectral_norm(semigroup(rel2, 1.0) - exp_t),
            )
        )

    slack = -ctx.cmp_tol
    pairs1 = list(zip(first, first[1:]))
    pairs2 = list(zip(second, second[1:]))
    r1_monotone = all(loewner_gap(b.resolvent.entries, a.resolvent.entries) >= slack for a, b in pairs1)
    r2_monotone = all(loewner_gap(a.resolvent.entries, b.resolvent.entries) >= slack for a, b in pairs2)
    nested = all(a.form_domain.contains(b.form_domain, ctx) for a, b in pairs1) and all(
        b.form_domain.contains(a.form_domain, ctx) for a, b in pairs2
    )
    # T_{k,j}^{-1} <= T^{-1} reads I - R <= I - R_{k,j} on resolvents
    inverse_ok = all(
        loewner_gap(inverse_base, rel.inverse().resolvent.entries) >= slack for rel in itertools.chain(first, second)
    )
    endpoint = steps[-1].r1_norm <= ctx.cmp_tol and steps[-1].r2_distance <= ctx.cmp_tol
    if not (r1_monotone and r2_monotone and endpoint):
        logger.warning("chain families lost monotonicity or the exhaustion endpoint")
    return ChainFamiliesReport(
        first_family=first,
        second_family=second,
        steps=steps,
        r1_monotone=r1_monotone,
        r2_monotone=r2_monotone,
        domains_nested=nested,
        inverse_order_ok=inverse_ok,
        endpoint_exact=endpoint,
    )
