from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from opranges.errors.range_errors import DimensionMismatch

from .psd_operator import PsdOperator, as_matrix
from .subspace import Subspace


@dataclass(frozen=True, eq=False)
class BlockSplit:
    """An operator written in the frame (K, K-perp)."""

    inner: Subspace
    outer: Subspace
    b11: np.ndarray
    b12: np.ndarray
    b22: np.ndarray

    def embed_inner(self, block: np.ndarray) -> np.ndarray:
        return self.inner.frame @ block @ self.inner.frame.conj().T

    def embed_outer(self, block: np.ndarray) -> np.ndarray:
        return self.outer.frame @ block @ self.outer.frame.conj().T


def block_split(A: PsdOperator | np.ndarray, K: Subspace) -> BlockSplit:
    entries = A.entries if isinstance(A, PsdOperator) else as_matrix(A)
    if entries.shape[0] != K.ambient_dim:
        raise DimensionMismatch(f"operator of dimension {entries.shape[0]} vs subspace in C^{K.ambient_dim}")
    Kc = K.complement()
    kf, cf = K.frame, Kc.frame
    return BlockSplit(
        inner=K,
        outer=Kc,
        b11=kf.conj().T @ entries @ kf,
        b12=kf.conj().T @ entries @ cf,
        b22=cf.conj().T @ entries @ cf,
    )


def require_ambient(n: int, *subspaces: Subspace) -> None:
    for subspace in subspaces:
        if subspace.ambient_dim != n:
            raise DimensionMismatch(f"subspace in C^{subspace.ambient_dim}, expected C^{n}")
