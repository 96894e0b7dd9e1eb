"""Dense Hermitian positive semidefinite operators with a cached spectrum.

Every rank decision in the package goes through :class:`PsdOperator`: an
eigenvalue counts as zero when it is at or below ``cutoff``. For operands the
cutoff is ``rank_rel_tol * lambda_max``; operators computed from other
operators pass ``scale`` (the operands' norm) and are cut at
``cmp_tol * scale`` as well, so floating-point residue of an exact zero never
shows up as rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable

import numpy as np
import numpy.typing as npt
import scipy.linalg
from loguru import logger

from opranges.config.range_config import DEFAULT_CONTEXT, ToleranceContext
from opranges.errors.range_errors import DimensionMismatch, NotHermitian, NotPsd, NotSquare

if TYPE_CHECKING:
    from .subspace import Subspace


def as_matrix(raw: npt.ArrayLike) -> np.ndarray:
    matrix = np.asarray(raw, dtype=complex)
    if matrix.ndim != 2:
        raise NotSquare(f"expected a 2-D array, got shape {matrix.shape}")
    return matrix


def hermitian_part(matrix: np.ndarray) -> np.ndarray:
    return (matrix + matrix.conj().T) / 2


@dataclass(frozen=True, eq=False)
class PsdOperator:
    entries: np.ndarray
    eigvals: np.ndarray
    eigvecs: np.ndarray
    cutoff: float
    ctx: ToleranceContext

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def norm(self) -> float:
        """Spectral norm (largest eigenvalue)."""
        return float(self.eigvals[0]) if self.dim else 0.0

    @property
    def support(self) -> np.ndarray:
        return self.eigvals > self.cutoff

    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self.support))

    @property
    def spectrum(self) -> tuple[np.ndarray, np.ndarray]:
        return self.eigvals, self.eigvecs

    def apply_spectral(self, fn: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        """V f(Lambda) V* over the support; the kernel maps to zero."""
        mask = self.support
        vecs = self.eigvecs[:, mask]
        return (vecs * fn(self.eigvals[mask])) @ vecs.conj().T

    def power(self, exponent: float) -> np.ndarray:
        return self.apply_spectral(lambda values: values**exponent)

    def range_projection(self) -> np.ndarray:
        vecs = self.eigvecs[:, self.support]
        return vecs @ vecs.conj().T

    def __add__(self, other: PsdOperator) -> PsdOperator:
        _require_same_dim(self, other)
        return make_psd(self.entries + other.entries, self.ctx, scale=self.norm + other.norm)

    def scaled(self, factor: float) -> PsdOperator:
        if factor < 0:
            raise NotPsd(f"negative scaling {factor} of a PSD operator")
        return _from_spectrum(self.eigvals * factor, self.eigvecs, self.cutoff * factor, self.ctx)

    def __repr__(self) -> str:
        return f"PsdOperator(dim={self.dim}, rank={self.rank}, norm={self.norm:.6g})"


def _require_same_dim(*operators: PsdOperator) -> None:
    dims = {op.dim for op in operators}
    if len(dims) > 1:
        raise DimensionMismatch(f"operators of dimensions {sorted(dims)}")


def _from_spectrum(values: np.ndarray, vectors: np.ndarray, cutoff: float, ctx: ToleranceContext) -> PsdOperator:
    entries = (vectors * values) @ vectors.conj().T
    return PsdOperator(entries=entries, eigvals=values, eigvecs=vectors, cutoff=cutoff, ctx=ctx)


def make_psd(
    raw: npt.ArrayLike,
    ctx: ToleranceContext | None = None,
    *,
    scale: float | None = None,
) -> PsdOperator:
    """Validate, symmetrize and eigendecompose a square matrix.

    ``scale`` marks the matrix as computed from operands of that norm; it
    raises the rank cutoff to ``cmp_tol * scale`` and serves as the reference
    for both the clamp and the asymmetry checks, so rounding residue of an
    exact zero is symmetrized rather than rejected.
    """
    ctx = ctx or DEFAULT_CONTEXT
    matrix = as_matrix(raw)
    if matrix.shape[0] != matrix.shape[1]:
        raise NotSquare(f"matrix of shape {matrix.shape} is not square")
    n = matrix.shape[0]
    herm = hermitian_part(matrix)

    if n == 0:
        empty = np.zeros(0)
        return PsdOperator(herm, empty, np.zeros((0, 0), dtype=complex), 0.0, ctx)

    values, vectors = scipy.linalg.eigh(herm)
    values = values[::-1].copy()
    vectors = vectors[:, ::-1].copy()

    reference = max(float(values[0]), 0.0, scale or 0.0)
    if values[-1] < -ctx.psd_clamp_tol * reference or (reference == 0.0 and values[-1] < 0.0):
        raise NotPsd(f"eigenvalue {values[-1]:.3e} below clamp level (lambda_max={values[0]:.3e})")

    size = max(float(scipy.linalg.norm(matrix)), scale or 0.0)
    asymmetry = float(scipy.linalg.norm(matrix - herm))
    if size > 0 and asymmetry > ctx.asym_tol * size:
        raise NotHermitian(f"relative asymmetry {asymmetry / size:.3e} exceeds {ctx.asym_tol:g}")

    if values[-1] < 0:
        logger.debug("clamping {} negative eigenvalue(s), smallest {:.3e}", int(np.sum(values < 0)), values[-1])
    values = np.clip(values, 0.0, None)

    cutoff = ctx.rank_rel_tol * float(values[0])
    if scale is not None:
        cutoff = max(cutoff, ctx.cmp_tol * scale)
    return PsdOperator(entries=herm, eigvals=values, eigvecs=vectors, cutoff=cutoff, ctx=ctx)


def sqrt_psd(A: PsdOperator) -> PsdOperator:
    """Spectral square root; eigenvalues at or below the cutoff become exact zeros."""
    values = np.where(A.support, np.sqrt(A.eigvals), 0.0)
    return _from_spectrum(values, A.eigvecs, float(np.sqrt(A.cutoff)), A.ctx)


def psd_power(A: PsdOperator, exponent: float) -> PsdOperator:
    if exponent <= 0:
        raise ValueError("psd_power takes positive exponents; use PsdOperator.power for negative ones")
    values = np.where(A.support, A.eigvals**exponent, 0.0)
    return _from_spectrum(values, A.eigvecs, float(A.cutoff**exponent), A.ctx)


def partial_inverse_sqrt(A: PsdOperator) -> np.ndarray:
    return A.power(-0.5)


def partial_inverse(A: PsdOperator) -> np.ndarray:
    return A.power(-1.0)


def range_basis(A: PsdOperator) -> Subspace:
    from .subspace import Subspace

    return Subspace(A.eigvecs[:, A.support])


def kernel_basis(A: PsdOperator) -> Subspace:
    from .subspace import Subspace

    return Subspace(A.eigvecs[:, ~A.support])


def loewner_gap(lower: npt.ArrayLike, upper: npt.ArrayLike) -> float:
    """Smallest eigenvalue of upper - lower; nonnegative iff lower <= upper."""
    difference = hermitian_part(as_matrix(upper) - as_matrix(lower))
    if difference.shape[0] == 0:
        return 0.0
    return float(scipy.linalg.eigvalsh(difference)[0])


def sandwich(outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    """outer · inner · outer* (outer Hermitian in every caller)."""
    return outer @ inner @ outer.conj().T


def relative_residual(actual: np.ndarray, expected: np.ndarray, floor: float = 1.0) -> float:
    return float(scipy.linalg.norm(actual - expected) / max(floor, float(scipy.linalg.norm(expected))))


def spectral_norm(matrix: np.ndarray) -> float:
    if matrix.size == 0:
        return 0.0
    return float(scipy.linalg.norm(matrix, 2))
