from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import numpy.typing as npt
import scipy.linalg

from opranges.core.psd_core import Subspace, as_matrix, hermitian_part
from opranges.errors.range_errors import DimensionMismatch


@dataclass(frozen=True, eq=False)
class PartialOperator:
    """A matrix acting on the vectors of ``domain`` only, with values in the whole space."""

    domain: Subspace
    action: np.ndarray

    def __post_init__(self) -> None:
        action = as_matrix(self.action)
        if action.shape != (self.domain.ambient_dim, self.domain.ambient_dim):
            raise DimensionMismatch(f"action of shape {action.shape} on a subspace of C^{self.domain.ambient_dim}")
        object.__setattr__(self, "action", action)

    @property
    def dim(self) -> int:
        return self.domain.ambient_dim

    @cached_property
    def form_matrix(self) -> np.ndarray:
        """J* A J in the coordinates of the domain frame J."""
        J = self.domain.frame
        return J.conj().T @ self.action @ J

    @property
    def symmetry_defect(self) -> float:
        form = self.form_matrix
        return float(scipy.linalg.norm(form - form.conj().T))

    @property
    def lowest_form_value(self) -> float:
        """min (Af, f) over unit f in the domain."""
        if self.domain.dim == 0:
            return 0.0
        return float(scipy.linalg.eigvalsh(hermitian_part(self.form_matrix))[0])

    def apply(self, coefficients: npt.ArrayLike) -> np.ndarray:
        """A f for f = J c."""
        c = np.asarray(coefficients, dtype=complex)
        if c.shape != (self.domain.dim,):
            raise DimensionMismatch(f"{c.shape[0]} coefficients for a {self.domain.dim}-dimensional domain")
        return self.action @ (self.domain.frame @ c)

    def __repr__(self) -> str:
        return f"PartialOperator(dim={self.dim}, domain_dim={self.domain.dim})"
