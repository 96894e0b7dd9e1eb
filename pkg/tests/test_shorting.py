import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from opranges.core.psd_core import Subspace, intersection_dim, loewner_gap, make_psd, quadratic, range_basis, sqrt_psd
from opranges.core.shorting import (
    common_witness,
    default_eps_schedule,
    disjoint_pair_subspace,
    feasible_samples,
    gamma_form,
    omega_subspace,
    parallel_sum,
    parallel_sum_form_value,
    parallel_sum_limit,
    parallel_sum_variational,
    route_disagreement,
    shorted,
    shorted_form_grid,
    symmetry_detector,
    trivial_intersection,
)
from opranges.errors.range_errors import HypothesisViolated, NotConverged
from opranges.fixtures import build_fixture, make_rng, psd_on, random_overlapping_pair, random_subspace, random_unitary
from opranges.tables.cli_table import ExitCode

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def _pair(seed: int):
    rng = make_rng(seed)
    n = int(rng.integers(2, 7))
    F, G, shared = random_overlapping_pair(rng, n)
    return make_psd(F), make_psd(G), shared


class TestParallelSum:

    def test_commuting_scalars(self):
        F, G = make_psd(np.diag([2.0, 0.0])), make_psd(np.diag([2.0, 3.0]))
        assert_allclose(parallel_sum(F, G).entries, np.diag([1.0, 0.0]), atol=1e-12)
        assert_allclose(parallel_sum_variational(F, G).entries, np.diag([1.0, 0.0]), atol=1e-12)
        assert_allclose(parallel_sum_limit(F, G).result.entries, np.diag([1.0, 0.0]), atol=1e-9)

    @settings(max_examples=40, deadline=None)
    @given(seed=seeds)
    def test_three_routes_agree(self, seed):
        F, G, _ = _pair(seed)
        routes = (parallel_sum(F, G), parallel_sum_variational(F, G), parallel_sum_limit(F, G).result)
        assert route_disagreement(*routes) <= 1e-6 * (F.norm + G.norm)

    @settings(max_examples=40, deadline=None)
    @given(seed=seeds)
    def test_root_rank_is_range_intersection(self, seed):
        F, G, shared = _pair(seed)
        assert sqrt_psd(parallel_sum(F, G)).rank == shared
        assert intersection_dim(range_basis(sqrt_psd(F)), range_basis(sqrt_psd(G))) == shared

    def test_form_value_matches_operator(self, rng):
        F, G, _ = _pair(11)
        h = rng.standard_normal(F.dim) + 1j * rng.standard_normal(F.dim)
        expected = quadratic(parallel_sum(F, G).entries, h)
        assert parallel_sum_form_value(F, G, h) == pytest.approx(expected, abs=1e-8 * (F.norm + G.norm) * np.vdot(h, h).real)

    def test_limit_rejects_bad_schedule(self):
        F = make_psd(np.eye(2))
        with pytest.raises(ValueError):
            parallel_sum_limit(F, F, eps_schedule=[1e-3])
        with pytest.raises(ValueError):
            parallel_sum_limit(F, F, eps_schedule=[1e-3, 1e-2])

    def test_disjoint_pair_is_a_projection_split(self):
        report = disjoint_pair_subspace(make_psd(np.diag([1.0, 0.0])), make_psd(np.diag([0.0, 1.0])))
        assert report.idempotence_defect <= 1e-12
        assert report.f_residual <= 1e-12
        assert report.g_residual <= 1e-12
        assert report.subspace.equals(Subspace.coordinate(2, [0]))

    def test_disjoint_pair_needs_vanishing_parallel_sum(self):
        with pytest.raises(HypothesisViolated):
            disjoint_pair_subspace(make_psd(np.eye(2)), make_psd(np.eye(2)))


class TestShorted:

    def test_two_by_two_schur_complement(self):
        B = make_psd([[2.0, 1.0], [1.0, 1.0]])
        report = shorted(B, Subspace.coordinate(2, [0]))
        assert_allclose(report.shorted.entries, np.diag([1.0, 0.0]), atol=1e-12)
        assert report.route_disagreement <= 1e-10
        assert not report.vanishes
        assert report.cross_range_ok

    def test_rank_one_witness_has_vanishing_shorts(self):
        X = make_psd(build_fixture("rank1-witness"))
        M = build_fixture("rank1-witness-m")
        assert shorted(X, M).vanishes
        assert shorted(X, M.complement()).vanishes
        assert trivial_intersection(X, M)
        assert not trivial_intersection(make_psd(np.eye(2)), M)

    @settings(max_examples=30, deadline=None)
    @given(seed=seeds)
    def test_routes_agree_and_short_is_maximal(self, seed):
        rng = make_rng(seed)
        n = int(rng.integers(2, 6))
        B = make_psd(psd_on(rng, random_unitary(rng, n)[:, : int(rng.integers(1, n + 1))]))
        K = random_subspace(rng, n, int(rng.integers(1, n)))
        report = shorted(B, K)
        assert report.route_disagreement <= 1e-7 * B.norm
        for Z in feasible_samples(B, K, rng, 10):
            assert loewner_gap(Z, report.shorted.entries) >= -1e-7 * B.norm
            assert loewner_gap(Z, B.entries) >= -1e-7 * B.norm

    def test_omega_has_the_dimension_of_k_for_invertible_b(self, rng):
        B = make_psd(psd_on(rng, random_unitary(rng, 4)))
        assert omega_subspace(B, random_subspace(rng, 4, 2)).dim == 2

    def test_gamma_form_reproduces_both_shorts(self, rng):
        B = make_psd(psd_on(rng, random_unitary(rng, 4)))
        report = gamma_form(B, random_subspace(rng, 4, 2))
        assert report.gamma.norm <= 1.0
        assert report.disagreement <= 1e-8

    def test_grid_oracle(self):
        B = make_psd([[2.0, 1.0], [1.0, 1.0]])
        value = shorted_form_grid(B, Subspace.coordinate(2, [0]), np.array([1.0, 0.0]))
        assert value == pytest.approx(1.0, abs=1e-3)


def test_common_witness_on_rank_one_block():
    X = make_psd(build_fixture("rank1-witness"))
    report = common_witness([X], build_fixture("rank1-witness-m"))
    assert report.witnessed
    assert report.implied_ok


def test_symmetry_detector():
    M = build_fixture("rank1-witness-m")
    witness = symmetry_detector(make_psd(build_fixture("rank1-witness")), M)
    assert witness.reflected_dim == 0
    assert witness.inner_vanishes and witness.outer_vanishes
    assert witness.agree

    identity = symmetry_detector(make_psd(np.eye(2)), M)
    assert identity.reflected_dim == 2
    assert not identity.inner_vanishes
    assert identity.agree


def test_limit_reports_a_stalled_schedule():
    F = make_psd(np.eye(2))
    with pytest.raises(NotConverged) as excinfo:
        parallel_sum_limit(F, F, eps_schedule=[1.0, 0.5])
    assert excinfo.value.exit_code == ExitCode.NOT_CONVERGED


def _generic_frames(rng, n: int, first: int, second: int):
    return random_subspace(rng, n, first).frame, random_subspace(rng, n, second).frame


class TestTrivialIntersections:

    @settings(max_examples=50, deadline=None)
    @given(seed=seeds)
    def test_parallel_sum_with_zero(self, seed):
        rng = make_rng(seed)
        F = make_psd(psd_on(rng, random_subspace(rng, 2, 1).frame))
        zero = make_psd(np.zeros((2, 2)))
        routes = (parallel_sum(F, zero), parallel_sum_variational(F, zero), parallel_sum_limit(F, zero).result)
        assert all(route.rank == 0 for route in routes)
        assert route_disagreement(*routes) <= 1e-12

    @settings(max_examples=40, deadline=None)
    @given(seed=seeds)
    def test_generic_disjoint_ranges(self, seed):
        rng = make_rng(seed)
        n = int(rng.integers(2, 9))
        first = int(rng.integers(1, n))
        frame_f, frame_g = _generic_frames(rng, n, first, int(rng.integers(1, n - first + 1)))
        F, G = make_psd(psd_on(rng, frame_f)), make_psd(psd_on(rng, frame_g))
        routes = (parallel_sum(F, G), parallel_sum_variational(F, G), parallel_sum_limit(F, G).result)
        assert routes[0].rank == 0
        assert route_disagreement(*routes) <= 1e-6 * (F.norm + G.norm)
        assert disjoint_pair_subspace(F, G).idempotence_defect <= 1e-7

    @settings(max_examples=40, deadline=None)
    @given(seed=seeds)
    def test_short_vanishes_off_the_range(self, seed):
        rng = make_rng(seed)
        n = int(rng.integers(2, 9))
        rank = int(rng.integers(1, n))
        frame_b, frame_k = _generic_frames(rng, n, rank, int(rng.integers(1, n - rank + 1)))
        B, K = make_psd(psd_on(rng, frame_b)), Subspace(frame_k)
        report = shorted(B, K)
        assert report.vanishes
        assert report.route_disagreement <= 1e-7 * B.norm
        assert trivial_intersection(B, K)


def test_default_schedule_sits_below_the_spectrum():
    total = make_psd(np.diag([2.0, 1e-4, 0.0]))
    schedule = default_eps_schedule(total)
    assert len(schedule) == 10
    assert schedule[0] == pytest.approx(1e-5)
    assert schedule[-1] == pytest.approx(1e-14)
    assert default_eps_schedule(make_psd(np.diag([3.0, 2.0])))[0] == pytest.approx(0.1)


def test_limit_converges_on_a_nearly_parallel_pair():
    angle = 1e-2
    F = make_psd(np.diag([1.0, 0.0]))
    v = np.array([np.cos(angle), np.sin(angle)])
    G = make_psd(np.outer(v, v))
    limit = parallel_sum_limit(F, G)
    assert route_disagreement(limit.result, parallel_sum(F, G)) <= 1e-6
    assert limit.result.rank == 0
