import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from opranges.core.psd_core import (
    Contraction,
    Subspace,
    block_split,
    fundamental_symmetry,
    intersection_dim,
    kernel_basis,
    loewner_gap,
    make_psd,
    max_angle,
    partial_inverse,
    polarize,
    principal_angles,
    quadratic,
    range_basis,
    sqrt_psd,
    sum_of,
)
from opranges.errors.range_errors import DimensionMismatch, NotContraction, NotHermitian, NotPsd, NotSquare
from opranges.fixtures import complex_gaussian, make_rng, random_psd

seeds = st.integers(min_value=0, max_value=2**32 - 1)
dims = st.integers(min_value=1, max_value=6)


def test_rejects_non_square():
    with pytest.raises(NotSquare):
        make_psd(np.ones((2, 3)))


def test_rejects_negative_eigenvalue():
    with pytest.raises(NotPsd):
        make_psd(np.diag([1.0, -1.0]))


def test_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        make_psd([[1.0, 1.0], [0.0, 1.0]])


def test_derived_residue_is_symmetrized(rng):
    residue = 1e-17 * complex_gaussian(rng, 4, 4)
    A = make_psd(residue, scale=1.0)
    assert A.rank == 0
    assert_allclose(A.entries, A.entries.conj().T)
    with pytest.raises(NotHermitian):
        make_psd([[1.0, 1.0], [0.0, 1.0]], scale=1.0)


def test_clamps_rounding_negatives():
    A = make_psd(np.diag([1.0, -1e-12]))
    assert A.rank == 1
    assert A.eigvals.min() == 0.0


def test_empty_operator():
    A = make_psd(np.zeros((0, 0)))
    assert A.dim == 0
    assert A.rank == 0
    assert A.norm == 0.0


@settings(max_examples=30, deadline=None)
@given(seed=seeds, n=dims)
def test_square_root_squares_back(seed, n):
    A = make_psd(random_psd(make_rng(seed), n))
    root = sqrt_psd(A)
    assert_allclose(root.entries @ root.entries, A.entries, atol=1e-10)


@settings(max_examples=30, deadline=None)
@given(seed=seeds)
def test_range_and_kernel_split_the_space(seed):
    A = make_psd(random_psd(make_rng(seed), 5, rank=2))
    assert A.rank == 2
    assert range_basis(A).dim == 2
    assert kernel_basis(A).dim == 3
    assert_allclose(A.entries @ partial_inverse(A) @ A.entries, A.entries, atol=1e-9)


def test_sum_and_scaling():
    A = make_psd(np.eye(2))
    with pytest.raises(DimensionMismatch):
        A + make_psd(np.eye(3))
    with pytest.raises(NotPsd):
        A.scaled(-1.0)
    assert (A + A).norm == pytest.approx(2.0)
    assert A.scaled(3.0).norm == pytest.approx(3.0)


def test_loewner_gap():
    assert loewner_gap(np.diag([1.0, 0.0]), np.diag([2.0, 1.0])) == pytest.approx(1.0)
    assert loewner_gap(np.diag([2.0, 0.0]), np.diag([1.0, 1.0])) == pytest.approx(-1.0)


def test_polarize_recovers_hermitian_matrix():
    G = complex_gaussian(make_rng(3), 4, 4)
    H = (G + G.conj().T) / 2
    recovered = polarize(lambda v: quadratic(H, v), np.eye(4, dtype=complex))
    assert_allclose(recovered, H, atol=1e-12)


def test_block_split_of_coordinate_subspace():
    split = block_split(make_psd(np.diag([1.0, 2.0, 3.0])), Subspace.coordinate(3, [0, 2]))
    assert_allclose(split.b11, np.diag([1.0, 3.0]), atol=1e-12)
    assert_allclose(np.abs(split.b22), [[2.0]], atol=1e-12)
    assert_allclose(split.b12, np.zeros((2, 1)), atol=1e-12)


def test_contraction_check():
    assert Contraction.checked(np.eye(2)).norm == pytest.approx(1.0)
    with pytest.raises(NotContraction):
        Contraction.checked(2 * np.eye(2))


class TestSubspace:

    def test_span_and_complement(self):
        line = Subspace.span([[1.0], [1.0]])
        assert line.dim == 1
        complement = line.complement()
        assert complement.dim == 1
        assert_allclose(line.frame.conj().T @ complement.frame, [[0.0]], atol=1e-12)

    def test_span_of_zero_is_trivial(self):
        assert Subspace.span(np.zeros((3, 2))).dim == 0

    def test_intersection(self):
        first = Subspace.coordinate(3, [0, 1])
        second = Subspace.coordinate(3, [1, 2])
        assert intersection_dim(first, second) == 1
        meet = first.intersection(second)
        assert_allclose(np.abs(meet.frame[:, 0]), [0.0, 1.0, 0.0], atol=1e-12)

    def test_orthogonal_part_and_containment(self):
        plane = Subspace.coordinate(3, [0, 1])
        axis = Subspace.coordinate(3, [0])
        assert plane.contains(axis)
        assert not axis.contains(plane)
        rest = plane.orthogonal_part(axis)
        assert rest.equals(Subspace.coordinate(3, [1]))

    def test_principal_angles(self):
        flat = Subspace.span([[1.0], [0.0]])
        diagonal = Subspace.span([[1.0], [1.0]])
        assert_allclose(principal_angles(flat, diagonal), [np.pi / 4], atol=1e-12)
        assert max_angle(flat, Subspace.full(2)) == pytest.approx(np.pi / 2)

    def test_fundamental_symmetry_is_an_involution(self):
        J = fundamental_symmetry(Subspace.span([[1.0], [2.0], [0.0]]))
        assert_allclose(J @ J, np.eye(3), atol=1e-12)

    def test_sum_of(self):
        total = sum_of([Subspace.coordinate(3, [0]), Subspace.span([[1.0], [1.0], [0.0]])])
        assert total.equals(Subspace.coordinate(3, [0, 1]))
        with pytest.raises(DimensionMismatch):
            sum_of([])
        with pytest.raises(DimensionMismatch):
            sum_of([Subspace.full(2), Subspace.full(3)])
