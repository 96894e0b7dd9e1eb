"""Seeded random operators and subspaces for sweeps and self-checks.

All randomness flows through ``numpy.random.Generator(PCG64(seed))``.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg
import scipy.stats

from opranges.core.psd_core import Subspace


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def complex_gaussian(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def random_psd(rng: np.random.Generator, n: int, rank: int | None = None, scale: float = 1.0) -> np.ndarray:
    """G G* / r for an n x r complex Gaussian G; rank r = n unless given."""
    r = n if rank is None else rank
    if r == 0:
        return np.zeros((n, n), dtype=complex)
    G = complex_gaussian(rng, n, r)
    return scale * (G @ G.conj().T) / r


def random_subspace(rng: np.random.Generator, n: int, k: int) -> Subspace:
    if k == 0:
        return Subspace.trivial(n)
    return Subspace(scipy.linalg.orth(complex_gaussian(rng, n, k)))


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    if n == 1:
        return np.exp(2j * np.pi * rng.uniform()) * np.eye(1, dtype=complex)
    return scipy.stats.unitary_group.rvs(n, random_state=rng)


def random_hermitian_invertible(rng: np.random.Generator, n: int, floor: float = 0.5) -> np.ndarray:
    """Hermitian with eigenvalues of both signs and modulus in [floor, floor + 2]."""
    Q = random_unitary(rng, n)
    signs = rng.choice([-1.0, 1.0], size=n)
    values = signs * (floor + 2 * rng.uniform(size=n))
    return (Q * values) @ Q.conj().T


def random_full_rank(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """rows x cols with rows >= cols and singular values in [1, 2]."""
    left = scipy.linalg.orth(complex_gaussian(rng, rows, cols))
    right = random_unitary(rng, cols)
    return (left * (1 + rng.uniform(size=cols))) @ right


def psd_on(rng: np.random.Generator, frame: np.ndarray, floor: float = 0.25) -> np.ndarray:
    """PSD with range span(frame) (orthonormal columns) and nonzero spectrum in [floor, floor + 1]."""
    r = frame.shape[1]
    if r == 0:
        return np.zeros((frame.shape[0],) * 2, dtype=complex)
    Q = random_unitary(rng, r)
    inner = (Q * (floor + rng.uniform(size=r))) @ Q.conj().T
    return frame @ inner @ frame.conj().T


def _frame(columns: np.ndarray) -> np.ndarray:
    if columns.shape[1] == 0:
        return np.zeros((columns.shape[0], 0), dtype=complex)
    return scipy.linalg.orth(columns)


def random_overlapping_pair(rng: np.random.Generator, n: int, floor: float = 0.25) -> tuple[np.ndarray, np.ndarray, int]:
    """F, G whose ranges share exactly ``shared`` generic directions, and ``shared``.

    The shared block and each operator's own block are independent Gaussian
    draws, so outside ran F ∩ ran G the two ranges sit at generic principal
    angles. Blocks add up to at most n columns, which keeps the intersection
    exactly the shared span. F + G is at least ``floor`` times P_F + P_G.
    """
    shared = int(rng.integers(0, n + 1))
    own_f = int(rng.integers(0, n - shared + 1))
    own_g = int(rng.integers(0, n - shared - own_f + 1))
    common = complex_gaussian(rng, n, shared)
    F = psd_on(rng, _frame(np.hstack([common, complex_gaussian(rng, n, own_f)])), floor)
    G = psd_on(rng, _frame(np.hstack([common, complex_gaussian(rng, n, own_g)])), floor)
    return F, G, shared
