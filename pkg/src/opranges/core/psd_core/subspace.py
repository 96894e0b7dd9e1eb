from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import numpy.typing as npt
import scipy.linalg

from opranges.config.range_config import DEFAULT_CONTEXT, ToleranceContext
from opranges.errors.range_errors import DimensionMismatch


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of C^n held as an orthonormal column frame (n x k, k may be 0)."""

    frame: np.ndarray

    def __post_init__(self) -> None:
        frame = np.asarray(self.frame, dtype=complex)
        if frame.ndim != 2:
            raise DimensionMismatch(f"subspace frame must be 2-D, got shape {frame.shape}")
        object.__setattr__(self, "frame", frame)

    @property
    def ambient_dim(self) -> int:
        return self.frame.shape[0]

    @property
    def dim(self) -> int:
        return self.frame.shape[1]

    @cached_property
    def projection(self) -> np.ndarray:
        return self.frame @ self.frame.conj().T

    @classmethod
    def span(cls, vectors: npt.ArrayLike, ctx: ToleranceContext | None = None) -> Subspace:
        """Orthonormal frame of the column span, singular values cut at ``cmp_tol`` relative."""
        ctx = ctx or DEFAULT_CONTEXT
        columns = np.asarray(vectors, dtype=complex)
        if columns.ndim == 1:
            columns = columns[:, np.newaxis]
        if columns.shape[1] == 0 or not np.any(columns):
            return cls.trivial(columns.shape[0])
        return cls(scipy.linalg.orth(columns, rcond=ctx.cmp_tol))

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(np.eye(n, dtype=complex))

    @classmethod
    def trivial(cls, n: int) -> Subspace:
        return cls(np.zeros((n, 0), dtype=complex))

    @classmethod
    def coordinate(cls, n: int, indices: list[int]) -> Subspace:
        return cls(np.eye(n, dtype=complex)[:, list(indices)])

    def complement(self) -> Subspace:
        n = self.ambient_dim
        if self.dim == 0:
            return Subspace.full(n)
        if self.dim == n:
            return Subspace.trivial(n)
        return Subspace(scipy.linalg.null_space(self.frame.conj().T))

    def orthogonal_part(self, other: Subspace, ctx: ToleranceContext | None = None) -> Subspace:
        """self ⊖ other: the vectors of this subspace orthogonal to ``other``.

        Cosines between the two frames at or below ``cmp_tol`` count as zero.
        """
        ctx = ctx or DEFAULT_CONTEXT
        if self.dim == 0 or other.dim == 0:
            return self
        _, cosines, vh = scipy.linalg.svd(other.frame.conj().T @ self.frame)
        rank = int(np.count_nonzero(cosines > ctx.cmp_tol))
        return Subspace(self.frame @ vh[rank:].conj().T)

    def contains(self, other: Subspace, ctx: ToleranceContext | None = None) -> bool:
        """True when ``other`` lies inside this subspace."""
        return intersection_dim(self, other, ctx) == other.dim

    def equals(self, other: Subspace, ctx: ToleranceContext | None = None) -> bool:
        return self.dim == other.dim and self.contains(other, ctx)

    def intersection(self, other: Subspace, ctx: ToleranceContext | None = None) -> Subspace:
        count = intersection_dim(self, other, ctx)
        if count == 0:
            return Subspace.trivial(self.ambient_dim)
        left, _, _ = scipy.linalg.svd(self.frame.conj().T @ other.frame)
        return Subspace(self.frame @ left[:, :count])

    def __repr__(self) -> str:
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"


def principal_angles(first: Subspace, second: Subspace) -> np.ndarray:
    """Principal angles in radians, nonincreasing.

    Cosines are the singular values of frame1* frame2; sines come from the
    residual of the smaller frame against the larger one, which keeps small
    angles accurate.
    """
    if first.ambient_dim != second.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {first.ambient_dim} and {second.ambient_dim}")
    big, small = (first.frame, second.frame) if first.dim >= second.dim else (second.frame, first.frame)
    if small.shape[1] == 0:
        return np.zeros(0)
    cosines = np.clip(scipy.linalg.svd(big.conj().T @ small, compute_uv=False), 0.0, 1.0)
    residual = small - big @ (big.conj().T @ small)
    sines = np.clip(np.sort(scipy.linalg.svd(residual, compute_uv=False)), 0.0, 1.0)
    angles = np.arctan2(sines, cosines)
    return np.sort(angles)[::-1]


def intersection_dim(first: Subspace, second: Subspace, ctx: ToleranceContext | None = None) -> int:
    ctx = ctx or DEFAULT_CONTEXT
    return int(np.count_nonzero(principal_angles(first, second) < ctx.angle_tol))


def max_angle(first: Subspace, second: Subspace) -> float:
    """Largest principal angle, or pi/2 when the dimensions differ."""
    if first.dim != second.dim:
        return float(np.pi / 2)
    angles = principal_angles(first, second)
    return float(angles[0]) if angles.size else 0.0


def fundamental_symmetry(P: Subspace) -> np.ndarray:
    """J = 2P - I: the identity on P and minus the identity on its complement."""
    return 2 * P.projection - np.eye(P.ambient_dim, dtype=complex)


def reflected_intersection_dim(R: Subspace, J: np.ndarray, ctx: ToleranceContext | None = None) -> int:
    """dim(R ∩ J R)."""
    return intersection_dim(R, Subspace.span(J @ R.frame, ctx), ctx)


def sum_of(subspaces: list[Subspace], ctx: ToleranceContext | None = None) -> Subspace:
    if not subspaces:
        raise DimensionMismatch("sum of an empty list of subspaces")
    n = subspaces[0].ambient_dim
    if any(s.ambient_dim != n for s in subspaces):
        raise DimensionMismatch("subspaces of different ambient dimensions")
    return Subspace.span(np.hstack([s.frame for s in subspaces]), ctx)
