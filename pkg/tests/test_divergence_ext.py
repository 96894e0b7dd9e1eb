import numpy as np
import pytest
from numpy.testing import assert_allclose

from opranges.core.divergence_ext import (
    PartialOperator,
    divergence_form,
    extension_sandwich_check,
    friedrichs,
    krein,
    polar_restrictions,
    product_pair,
    shifted_resolvent,
)
from opranges.core.psd_core import Subspace, loewner_gap
from opranges.errors.range_errors import (
    DimensionMismatch,
    NotHermitian,
    NotInvertible,
    NotSquare,
    RankDeficientSource,
)
from opranges.fixtures import build_fixture, random_full_rank


@pytest.fixture
def divext():
    return build_fixture("divext-l2"), build_fixture("divext-d")


class TestExtensions:

    def test_divergence_form_lives_on_d(self, divext):
        L2, D = divext
        op = divergence_form(L2, D)
        assert op.domain.dim == 2
        assert op.symmetry_defect <= 1e-12
        assert op.lowest_form_value > 0
        assert_allclose(op.apply([1.0, 0.0]), L2.conj().T @ L2 @ D.frame[:, 0], atol=1e-12)

    def test_partial_operator_shape(self, divext):
        _, D = divext
        with pytest.raises(DimensionMismatch):
            PartialOperator(D, np.eye(2))
        with pytest.raises(DimensionMismatch):
            divergence_form(np.eye(2), D)

    def test_extremal_extensions(self, divext):
        L2, D = divext
        hard, soft = friedrichs(L2, D), krein(L2, D)
        assert hard.form_domain.equals(D)
        assert hard.mul_part.dim == 1
        assert soft.is_operator
        assert soft.to_operator().rank == 2
        assert loewner_gap(shifted_resolvent(hard, 1.0), shifted_resolvent(soft, 1.0)) >= -1e-10

    def test_shifted_resolvent(self):
        assert_allclose(shifted_resolvent(build_fixture("trotter-diag"), 1.0), np.diag([0.5, 0.25]), atol=1e-12)
        assert_allclose(shifted_resolvent(build_fixture("trotter-line-0"), 1.0), np.diag([0.5, 0.0]), atol=1e-12)

    def test_sandwich(self, divext, rng):
        L2, D = divext
        report = extension_sandwich_check(L2, D, samples=20, rng=rng)
        assert report.holds
        assert report.transversal
        assert report.order_gap >= -1e-10
        assert len(report.samples) == 20
        assert [row.kind for row in report.samples[:2]] == ["friedrichs", "krein"]

    def test_sandwich_arguments(self, divext):
        L2, D = divext
        with pytest.raises(ValueError):
            extension_sandwich_check(L2, D, samples=0)
        with pytest.raises(ValueError):
            extension_sandwich_check(L2, D, shift=0.0)


class TestProducts:

    def test_product_pair_on_fixture(self):
        report = product_pair(build_fixture("prodpair-b"), build_fixture("chain-m"))
        assert report.domains_trivial
        assert report.direct_sum
        assert report.images_sum_span
        assert report.graph_orthogonality <= 1e-8
        assert report.resolvent_sum_residual <= 1e-12
        assert [piece.k for piece in report.pieces] == [1, 2]
        for piece in report.pieces:
            assert piece.friedrichs_order_gap >= -1e-8
            assert piece.friedrichs_form_residual <= 1e-8
            assert piece.krein_residual <= 1e-8
            assert piece.krein_below_square >= -1e-8

    def test_product_pair_needs_invertible_hermitian_b(self):
        M = Subspace.coordinate(2, [0])
        with pytest.raises(NotInvertible):
            product_pair(np.diag([1.0, 0.0]), M)
        with pytest.raises(NotHermitian):
            product_pair(np.array([[1.0, 2.0], [0.0, 1.0]]), M)
        with pytest.raises(NotSquare):
            product_pair(np.ones((2, 3)), M)

    def test_polar_restrictions(self, rng):
        B = random_full_rank(rng, 3, 2)
        report = polar_restrictions(B, Subspace.coordinate(2, [0]))
        assert report.kernel_dim == 1
        assert report.domains_span
        assert report.intersection_is_kernel
        assert report.polar_residual <= 1e-10
        assert report.isometry_residual <= 1e-10
        assert report.adjoint_product_residual <= 1e-8

    def test_polar_needs_full_column_rank(self):
        with pytest.raises(RankDeficientSource):
            polar_restrictions(np.array([[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]]), Subspace.coordinate(2, [0]))
        with pytest.raises(RankDeficientSource):
            polar_restrictions(np.ones((2, 3)), Subspace.coordinate(3, [0]))
