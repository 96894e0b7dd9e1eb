import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from opranges.core.cayley_relations import (
    NonnegRelation,
    chain_families,
    complete_pair,
    euler_approx,
    euler_sweep,
    form_sum,
    form_value,
    from_cayley,
    from_operator,
    graph_product,
    semigroup,
    split_n,
    split_pair,
    trotter_product,
    trotter_sweep,
)
from opranges.core.psd_core import Subspace, make_psd, quadratic
from opranges.errors.range_errors import (
    HypothesisViolated,
    InvalidZ,
    MultivaluedRelation,
    NotContraction,
    NotNested,
    NotOrthogonal,
    NotSpanning,
    OutOfFormDomain,
)
from opranges.fixtures import build_fixture, make_rng, random_psd, random_subspace

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def _diag_relation(*values: float) -> NonnegRelation:
    return from_operator(make_psd(np.diag(values)))


class TestRelation:

    def test_operator_round_trip(self, rng):
        T = make_psd(random_psd(rng, 4, scale=2.0))
        rel = from_operator(T)
        assert rel.is_operator
        assert_allclose(rel.to_operator().entries, T.entries, atol=1e-10)

    def test_resolvent_must_be_a_contraction(self):
        with pytest.raises(NotContraction):
            NonnegRelation.from_resolvent(2 * np.eye(2))

    def test_line_relation_is_multivalued(self):
        rel = build_fixture("trotter-line-0")
        assert rel.dom_closure.dim == 1
        assert rel.mul_part.dim == 1
        assert not rel.is_operator
        assert_allclose(rel.operator_spectrum[0], [1.0], atol=1e-12)
        with pytest.raises(MultivaluedRelation):
            rel.to_operator()

    def test_inverse(self):
        assert_allclose(_diag_relation(1.0, 3.0).inverse().operator_matrix, np.diag([1.0, 1.0 / 3.0]), atol=1e-12)
        assert _diag_relation(0.0, 1.0).inverse().mul_part.dim == 1

    def test_cayley_round_trip(self):
        rel = build_fixture("trotter-line-45")
        assert_allclose(from_cayley(rel.cayley()).resolvent.entries, rel.resolvent.entries, atol=1e-14)

    def test_form_value_and_graph_product(self, rng):
        T = make_psd(random_psd(rng, 3))
        rel = from_operator(T)
        u = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        assert form_value(rel, u, u).real == pytest.approx(quadratic(T.entries, u), rel=1e-8)
        assert graph_product(rel, u, u).real == pytest.approx(quadratic(T.entries, u) + np.vdot(u, u).real, rel=1e-8)

    def test_form_value_outside_domain(self):
        with pytest.raises(OutOfFormDomain):
            form_value(build_fixture("trotter-line-0"), np.array([0.0, 1.0]), np.array([0.0, 1.0]))

    def test_form_sum_of_operators(self, rng):
        T1, T2 = make_psd(random_psd(rng, 3)), make_psd(random_psd(rng, 3))
        total = form_sum(from_operator(T1), from_operator(T2))
        assert_allclose(total.to_operator().entries, T1.entries + T2.entries, atol=1e-9)

    def test_form_sum_of_transversal_lines_is_purely_multivalued(self):
        total = form_sum(build_fixture("trotter-line-0"), build_fixture("trotter-line-45"))
        assert total.dom_closure.dim == 0
        assert total.mul_part.dim == 2


class TestSemigroups:

    def test_semigroup_matches_matrix_exponential(self):
        T = np.diag([1.0, 3.0])
        rel = from_operator(make_psd(T))
        z = 0.5 + 0.5j
        assert_allclose(semigroup(rel, z), scipy.linalg.expm(-z * T), atol=1e-12)
        with pytest.raises(InvalidZ):
            semigroup(rel, -1.0)

    def test_semigroup_annihilates_multivalued_part(self):
        assert_allclose(semigroup(build_fixture("trotter-line-0"), 1.0), np.diag([np.exp(-1.0), 0.0]), atol=1e-12)

    def test_euler_rate(self):
        rel = _diag_relation(1.0, 3.0)
        for z in (1.0, np.exp(1j * np.pi / 4)):
            report = euler_sweep(rel, z, [8 * 2**k for k in range(8)])
            assert -1.2 <= report.slope <= -0.8
            errors = [row.error for row in report.rows]
            assert errors == sorted(errors, reverse=True)

    def test_euler_arguments(self):
        rel = _diag_relation(1.0)
        with pytest.raises(InvalidZ):
            euler_approx(rel, 1j, 4)
        with pytest.raises(ValueError):
            euler_approx(rel, 1.0, 0)

    def test_trotter_on_transversal_lines_vanishes(self):
        result = trotter_product(build_fixture("trotter-line-0"), build_fixture("trotter-line-45"), 1.0, 256)
        assert result.domains_meet_trivially
        assert result.norm <= 1e-3
        assert result.distance == pytest.approx(result.norm)

    def test_trotter_on_a_split_piece_approaches_the_doubled_piece(self):
        T = make_psd(build_fixture("split-t"))
        whole = from_operator(T)
        piece = split_pair(T, build_fixture("chain-m")).rel1
        assert piece.form_domain.dim == 1

        sweep = trotter_sweep(whole, piece, 1.0, [2, 4, 8, 16, 32, 64, 128, 256])
        distances = [row.distance for row in sweep.rows]
        assert sweep.distance_monotone
        assert distances[0] > 1e-3
        assert distances[-1] < distances[0] / 10

        predicted = trotter_product(whole, piece, 1.0, 2).predicted
        assert_allclose(predicted, semigroup(piece, 2.0), atol=1e-8)

    def test_trotter_of_a_relation_with_itself(self):
        rel = build_fixture("trotter-diag")
        sweep = trotter_sweep(rel, rel, 1.0, [2, 4, 8, 16])
        assert sweep.distance_monotone
        assert all(row.distance <= 1e-12 for row in sweep.rows)
        predicted = trotter_product(rel, rel, 1.0, 2).predicted
        assert_allclose(predicted, scipy.linalg.expm(-2.0 * np.diag([1.0, 3.0])), atol=1e-12)


class TestSplitting:

    @settings(max_examples=30, deadline=None)
    @given(seed=seeds)
    def test_split_pair(self, seed):
        rng = make_rng(seed)
        n = int(rng.integers(2, 6))
        T = make_psd(random_psd(rng, n, int(rng.integers(0, n + 1)), scale=2.0))
        report = split_pair(T, random_subspace(rng, n, int(rng.integers(1, n))), rng=rng)
        assert report.resolvent_sum_residual <= 1e-12
        assert report.graph_orthogonality <= 1e-8
        assert report.form_preservation <= 1e-8

    def test_split_pair_on_fixture(self):
        report = split_pair(make_psd(build_fixture("split-t")), build_fixture("chain-m"))
        assert report.domains_match
        assert report.kernel_claim_ok
        assert report.decomposition_residual <= 1e-12
        assert report.rel1.form_domain.dim == report.rel2.form_domain.dim == 1

    def test_split_n_into_coordinates(self, rng):
        T = make_psd(random_psd(rng, 3))
        report = split_n(T, [Subspace.coordinate(3, [i]) for i in range(3)])
        assert len(report.relations) == 3
        assert report.resolvent_sum_residual <= 1e-12
        assert report.domains_pairwise_trivial
        assert report.graph_orthogonality <= 1e-8

    def test_split_n_validates_parts(self):
        T = make_psd(np.eye(2))
        with pytest.raises(NotOrthogonal):
            split_n(T, [Subspace.coordinate(2, [0]), Subspace.span([[1.0], [1.0]])])
        with pytest.raises(NotSpanning):
            split_n(T, [Subspace.coordinate(2, [0])])

    def test_complete_pair(self):
        rel1 = NonnegRelation.from_resolvent(np.diag([0.25, 0.0]))
        report = complete_pair(rel1, np.diag([0.0, 1.0]))
        assert_allclose(report.relation.resolvent.entries, np.diag([0.25, 1.0]), atol=1e-12)
        assert report.projection.equals(Subspace.coordinate(2, [0]))
        assert report.reconstruction_residual <= 1e-12

    def test_complete_pair_accepts_zero(self):
        rel1 = NonnegRelation.from_resolvent(np.diag([0.25, 0.0]))
        report = complete_pair(rel1, np.zeros((2, 2)))
        assert report.partner.dom_closure.dim == 0

    def test_complete_pair_hypotheses(self):
        rel1 = NonnegRelation.from_resolvent(np.diag([0.25, 0.0]))
        with pytest.raises(HypothesisViolated):
            complete_pair(rel1, np.diag([1.0, 0.0]))
        with pytest.raises(NotContraction):
            complete_pair(rel1, np.diag([0.0, 2.0]))

    def test_chain_families(self):
        T = make_psd(np.diag([1.0, 2.0, 3.0]))
        report = chain_families(T, [Subspace.coordinate(3, [0]), Subspace.coordinate(3, [0, 1]), Subspace.full(3)])
        assert report.r1_monotone and report.r2_monotone
        assert report.domains_nested
        assert report.inverse_order_ok
        assert report.endpoint_exact
        assert len(report.steps) == 3

    def test_chain_families_validates_the_chain(self):
        T = make_psd(np.eye(3))
        with pytest.raises(NotNested):
            chain_families(T, [Subspace.coordinate(3, [0, 1]), Subspace.coordinate(3, [0])])
        with pytest.raises(NotSpanning):
            chain_families(T, [Subspace.coordinate(3, [0])])
