from __future__ import annotations

from typing import Callable

import numpy as np

QuadraticForm = Callable[[np.ndarray], float]


def polarize(q: QuadraticForm, basis: np.ndarray) -> np.ndarray:
    """Matrix of the Hermitian form behind ``q`` in ambient coordinates.

    ``basis`` is an orthonormal basis (columns). Entries are recovered from
    (Q u, v) = 1/4 * sum_k i^k q(u + i^k v).
    """
    n = basis.shape[1]
    phases = (1, 1j, -1, -1j)
    in_basis = np.zeros((n, n), dtype=complex)
    for j in range(n):
        u = basis[:, j]
        in_basis[j, j] = q(u)
        for i in range(j):
            v = basis[:, i]
            value = sum(phase * q(u + phase * v) for phase in phases) / 4
            in_basis[i, j] = value
            in_basis[j, i] = np.conj(value)
    return basis @ in_basis @ basis.conj().T


def quadratic(matrix: np.ndarray, vector: np.ndarray) -> float:
    return float(np.real(np.vdot(vector, matrix @ vector)))
