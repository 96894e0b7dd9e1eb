from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from opranges.config.range_config import DEFAULT_CONTEXT, ToleranceContext
from opranges.errors.range_errors import NotContraction

from .psd_operator import as_matrix, spectral_norm


@dataclass(frozen=True, eq=False)
class Contraction:
    """A matrix between two spaces with operator norm at most 1 + cmp_tol."""

    matrix: np.ndarray
    norm: float

    @classmethod
    def checked(cls, matrix: np.ndarray, ctx: ToleranceContext | None = None, *, slack: float | None = None) -> Contraction:
        ctx = ctx or DEFAULT_CONTEXT
        block = as_matrix(matrix)
        norm = spectral_norm(block)
        limit = 1.0 + (ctx.cmp_tol if slack is None else slack)
        if norm > limit:
            raise NotContraction(f"operator norm {norm:.12g} exceeds {limit:.12g}")
        return cls(matrix=block, norm=norm)

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape
