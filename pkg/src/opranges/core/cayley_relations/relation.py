"""Nonnegative self-adjoint relations held by their resolvent R = (I + T)^{-1}.

0 <= R <= I. ran R is the closure of dom T and ker R is the multivalued
part. On ran R the operator part has eigenvalues t = 1/mu - 1 for the
resolvent eigenvalues mu. The Cayley transform is S = 2R - I.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np
import numpy.typing as npt
import scipy.linalg

from opranges.config.range_config import DEFAULT_CONTEXT, ToleranceContext
from opranges.core.psd_core import (
    PsdOperator,
    Subspace,
    as_matrix,
    kernel_basis,
    make_psd,
    partial_inverse,
    range_basis,
)
from opranges.errors.range_errors import (
    DimensionMismatch,
    MultivaluedRelation,
    NotContraction,
    NotPsd,
    OutOfFormDomain,
)


@dataclass(frozen=True, eq=False)
class NonnegRelation:
    resolvent: PsdOperator

    @classmethod
    def from_resolvent(cls, raw: npt.ArrayLike | PsdOperator, ctx: ToleranceContext | None = None) -> NonnegRelation:
        ctx = ctx or DEFAULT_CONTEXT
        R = raw if isinstance(raw, PsdOperator) else make_psd(raw, ctx, scale=1.0)
        if R.norm > 1 + ctx.cmp_tol:
            raise NotContraction(f"resolvent norm {R.norm:.12g} exceeds 1")
        return cls(R)

    @property
    def ctx(self) -> ToleranceContext:
        return self.resolvent.ctx

    @property
    def dim(self) -> int:
        return self.resolvent.dim

    @cached_property
    def dom_closure(self) -> Subspace:
        return range_basis(self.resolvent)

    @cached_property
    def mul_part(self) -> Subspace:
        return kernel_basis(self.resolvent)

    @property
    def form_domain(self) -> Subspace:
        """D[T] = ran R^{1/2}; equal to ran R at finite dimension."""
        return self.dom_closure

    @cached_property
    def operator_spectrum(self) -> tuple[np.ndarray, np.ndarray]:
        """Eigenvalues t >= 0 of the operator part and their eigenvectors."""
        R = self.resolvent
        mu = R.eigvals[R.support]
        values = 1.0 / mu - 1.0
        if values.size and values.min() < -self.ctx.cmp_tol:
            raise NotPsd(f"operator part has eigenvalue {values.min():.3e}")
        return np.clip(values, 0.0, None), R.eigvecs[:, R.support]

    @cached_property
    def operator_matrix(self) -> np.ndarray:
        """Operator part in ambient coordinates, zero on the multivalued part."""
        values, vectors = self.operator_spectrum
        return (vectors * values) @ vectors.conj().T

    @property
    def is_operator(self) -> bool:
        return self.mul_part.dim == 0

    def spectral(self, fn: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        """Q f(t) Q* over the operator part; the multivalued part maps to zero."""
        values, vectors = self.operator_spectrum
        return (vectors * fn(values)) @ vectors.conj().T

    def to_operator(self) -> PsdOperator:
        if not self.is_operator:
            raise MultivaluedRelation(f"multivalued part of dimension {self.mul_part.dim}")
        values = self.operator_spectrum[0]
        return make_psd(self.operator_matrix, self.ctx, scale=float(values.max(initial=0.0)))

    def inverse(self) -> NonnegRelation:
        """T^{-1}, whose resolvent is I - R."""
        identity = np.eye(self.dim, dtype=complex)
        return NonnegRelation.from_resolvent(make_psd(identity - self.resolvent.entries, self.ctx, scale=1.0))

    def cayley(self) -> np.ndarray:
        return 2 * self.resolvent.entries - np.eye(self.dim, dtype=complex)

    def resolvent_at(self, a: float) -> np.ndarray:
        """(I + aT)^{-1} for a >= 0."""
        if a < 0:
            raise ValueError(f"resolvent parameter must be nonnegative, got {a}")
        if a == 0:
            return np.eye(self.dim, dtype=complex)
        return self.spectral(lambda t: 1.0 / (1.0 + a * t))

    def __repr__(self) -> str:
        return f"NonnegRelation(dim={self.dim}, dom={self.dom_closure.dim}, mul={self.mul_part.dim})"


def from_operator(T: PsdOperator) -> NonnegRelation:
    """R = (I + T)^{-1}, computed on the spectrum of T."""
    R = (T.eigvecs / (1.0 + T.eigvals)) @ T.eigvecs.conj().T
    return NonnegRelation.from_resolvent(make_psd(R, T.ctx, scale=1.0))


def from_cayley(S: npt.ArrayLike, ctx: ToleranceContext | None = None) -> NonnegRelation:
    """The relation whose Cayley transform is the self-adjoint contraction S."""
    ctx = ctx or DEFAULT_CONTEXT
    s = as_matrix(S)
    if s.shape[0] != s.shape[1]:
        raise DimensionMismatch(f"Cayley transform of shape {s.shape}")
    return NonnegRelation.from_resolvent(make_psd((np.eye(s.shape[0]) + s) / 2, ctx, scale=1.0))


def _require_in_domain(rel: NonnegRelation, vector: np.ndarray) -> None:
    domain = rel.form_domain
    miss = float(scipy.linalg.norm(vector - domain.projection @ vector))
    if miss > rel.ctx.cmp_tol * max(1.0, float(scipy.linalg.norm(vector))):
        raise OutOfFormDomain(f"vector is {miss:.3e} away from the form domain")


def form_value(rel: NonnegRelation, u: npt.ArrayLike, v: npt.ArrayLike) -> complex:
    """T[u, v] = -(u, v) + 2((I+S)^{-1/2} u, (I+S)^{-1/2} v), with I + S = 2R."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != (rel.dim,) or v.shape != (rel.dim,):
        raise DimensionMismatch(f"vectors of shape {u.shape}, {v.shape} for a relation on C^{rel.dim}")
    _require_in_domain(rel, u)
    _require_in_domain(rel, v)
    inv_root = rel.resolvent.power(-0.5) / np.sqrt(2.0)
    return complex(-np.vdot(v, u) + 2 * np.vdot(inv_root @ v, inv_root @ u))


def graph_product(rel: NonnegRelation, u: np.ndarray, v: np.ndarray) -> complex:
    """(u, v)_{T^{1/2}} = T[u, v] + (u, v) = (R^{-1} u, v) on the form domain."""
    return complex(np.vdot(v, partial_inverse(rel.resolvent) @ u))


def relation_from_form(domain: Subspace, form_matrix: npt.ArrayLike, ctx: ToleranceContext | None = None) -> NonnegRelation:
    """The relation of the closed form (H c, c) on u = J c, J a frame of ``domain``."""
    ctx = ctx or DEFAULT_CONTEXT
    H = make_psd(form_matrix, ctx)
    if H.dim != domain.dim:
        raise DimensionMismatch(f"form matrix of size {H.dim} on a {domain.dim}-dimensional domain")
    J = domain.frame
    inner = (H.eigvecs / (1.0 + H.eigvals)) @ H.eigvecs.conj().T
    return NonnegRelation.from_resolvent(make_psd(J @ inner @ J.conj().T, ctx, scale=1.0))


def form_sum(rel1: NonnegRelation, rel2: NonnegRelation) -> NonnegRelation:
    """Relation of the closed form t1 + t2 on D[T1] ∩ D[T2]."""
    if rel1.dim != rel2.dim:
        raise DimensionMismatch(f"relations on C^{rel1.dim} and C^{rel2.dim}")
    ctx = rel1.ctx
    domain = rel1.form_domain.intersection(rel2.form_domain, ctx)
    J = domain.frame
    form = J.conj().T @ (rel1.operator_matrix + rel2.operator_matrix) @ J
    return relation_from_form(domain, (form + form.conj().T) / 2, ctx)
