import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from opranges.core.psd_core import loewner_gap, make_psd, spectral_norm
from opranges.core.range_calculus import (
    douglas_solve,
    range_inclusion,
    range_sum_identity_check,
    sandwich_range_check,
)
from opranges.errors.range_errors import DimensionMismatch, EmptyList, NoFactorization
from opranges.fixtures import complex_gaussian, make_rng, random_full_rank, random_psd

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@settings(max_examples=40, deadline=None)
@given(seed=seeds)
def test_douglas_solves_and_majorizes(seed):
    rng = make_rng(seed)
    B = random_full_rank(rng, 4, 3)
    A = B @ complex_gaussian(rng, 3, 2)
    result = douglas_solve(A, B)

    assert_allclose(B @ result.factor, A, atol=1e-10)
    assert result.range_in_adjoint
    assert result.kernel_matches
    assert result.lam == pytest.approx(spectral_norm(result.factor) ** 2)
    gap = loewner_gap(A @ A.conj().T, (1 + 1e-8) * result.lam * (B @ B.conj().T))
    assert gap >= -1e-8 * max(1.0, float(np.linalg.norm(A)) ** 2)


def test_douglas_without_inclusion():
    with pytest.raises(NoFactorization):
        douglas_solve([[0.0], [1.0]], [[1.0], [0.0]])


def test_douglas_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        douglas_solve(np.eye(2), np.eye(3))


def test_douglas_on_diagonal_operands():
    result = douglas_solve(np.diag([1.0, 4.0]), np.diag([1.0, 3.0]))
    assert_allclose(result.factor, np.diag([1.0, 4.0 / 3.0]), atol=1e-14)
    assert result.lam == pytest.approx(16.0 / 9.0)


def test_range_inclusion_of_matrices():
    included = range_inclusion(np.diag([1.0, 0.0]), np.eye(2))
    assert included.included
    assert included.lam == pytest.approx(1.0)

    excluded = range_inclusion(np.diag([0.0, 1.0]), np.diag([1.0, 0.0]))
    assert not excluded.included
    assert excluded.lam == float("inf")


def test_range_inclusion_of_psd_operators():
    verdict = range_inclusion(make_psd(np.diag([1.0, 0.0])), make_psd(2 * np.eye(2)))
    assert verdict.included
    assert verdict.lam == pytest.approx(0.25)


def test_range_sum_identity():
    F_list = [
        make_psd(np.diag([1.0, 0.0, 0.0, 0.0, 0.0])),
        make_psd(np.outer([1.0, 1.0, 0, 0, 0], [1.0, 1.0, 0, 0, 0]) / 2),
        make_psd(np.diag([0.0, 0.0, 1.0, 1.0, 0.0])),
    ]
    report = range_sum_identity_check(F_list)
    assert report.passed
    assert report.rank_of_sum == report.span_dim == 4


@settings(max_examples=30, deadline=None)
@given(seed=seeds)
def test_range_sum_identity_for_random_summands(seed):
    rng = make_rng(seed)
    report = range_sum_identity_check([make_psd(random_psd(rng, 4, rank=1)) for _ in range(2)])
    assert report.passed
    assert report.span_dim == 2


def test_range_sum_identity_rejects_empty_list():
    with pytest.raises(EmptyList):
        range_sum_identity_check([])


def test_sandwich_range_with_invertible_outer_factor(rng):
    F = make_psd(random_psd(rng, 4))
    M = make_psd(random_psd(rng, 4, rank=2))
    report = sandwich_range_check(F, M)
    assert report.passed
    assert report.left.dim == 2


def test_sandwich_range_with_singular_outer_factor():
    v = np.array([0.0, 1.0, 1.0, 0.0]) / np.sqrt(2)
    report = sandwich_range_check(make_psd(np.diag([1.0, 1.0, 0.0, 0.0])), make_psd(np.outer(v, v)))
    assert report.passed
    assert report.left.dim == report.right.dim == 1
