import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from opranges.core.lifting import (
    GradedModel,
    classify_conditions,
    example_v1,
    example_v2,
    lifting_criterion,
    recover_factors,
    truncation_diagnostic,
)
from opranges.core.psd_core import Subspace, make_psd
from opranges.fixtures import build_fixture, make_rng, psd_on, random_unitary
from opranges.pipelines.acceptance import EXPONENT_GRID
from opranges.tables.lifting_table import LiftingRegime, SeriesClass

seeds = st.integers(min_value=0, max_value=2**32 - 1)
SCHEDULE = [8, 16, 32, 64, 128, 256]


def test_criterion_on_graded_fixture():
    verdict = lifting_criterion(make_psd(build_fixture("graded-lift")), build_fixture("graded-lift-m"))
    assert verdict.included
    # |A11^{-3/4} A12|^2 = sum 1/i for a = b = 2
    assert verdict.factor_norm == pytest.approx(math.sqrt(sum(1.0 / i for i in range(1, 9))), rel=1e-8)


def test_criterion_with_singular_corner():
    verdict = lifting_criterion(make_psd(np.diag([0.0, 1.0])), Subspace.coordinate(2, [0]))
    assert verdict.included
    assert verdict.factor_norm == 0.0


def test_recover_factors(rng):
    T = make_psd(psd_on(rng, random_unitary(rng, 3)))
    factors = recover_factors(T, Subspace.coordinate(3, [0, 1]))
    assert factors.block_residual <= 1e-10
    assert factors.G.norm <= 1.0
    assert factors.A.rank == 2


class TestConditions:

    def test_disjoint_ranges_admit_no_lifting(self):
        flags = classify_conditions(make_psd(np.diag([1.0, 1.0, 0.0])), make_psd(np.diag([0.0, 0.0, 1.0])))
        assert flags.intersection_trivial
        assert not flags.v_in_w_sqrt and not flags.w_in_v_sqrt
        assert flags.regime == LiftingRegime.NONE

    def test_zero_partner_collapses_to_subspace_regime(self):
        flags = classify_conditions(make_psd(np.diag([1.0, 0.0])), make_psd(np.zeros((2, 2))))
        assert flags.subspace_lift and not flags.complement_lift
        assert flags.regime == LiftingRegime.SUBSPACE

    def test_both_zero(self):
        zero = make_psd(np.zeros((2, 2)))
        assert classify_conditions(zero, zero).regime == LiftingRegime.BOTH

    @settings(max_examples=40, deadline=None)
    @given(seed=seeds, scales=st.tuples(st.floats(1e-3, 1e3), st.floats(1e-3, 1e3)))
    def test_flags_are_scale_invariant(self, seed, scales):
        rng = make_rng(seed)
        n = int(rng.integers(2, 6))
        W = psd_on(rng, random_unitary(rng, n)[:, : int(rng.integers(1, n + 1))])
        V = psd_on(rng, random_unitary(rng, n)[:, : int(rng.integers(1, n + 1))])
        c, d = scales
        assert classify_conditions(make_psd(W), make_psd(V)) == classify_conditions(make_psd(c * W), make_psd(d * V))


def test_examples_show_finite_collapse():
    W = make_psd(np.diag([1.0, 2.0, 0.0]))
    L = Subspace.coordinate(3, [0])
    first = example_v1(W, L)
    assert first.v_in_w_sqrt
    assert first.finite_collapse
    assert first.meets_w_dim == 1

    second = example_v2(W, L)
    assert second.root_ranges_equal
    assert second.meets_w_dim == 2


class TestTruncation:

    def test_divergent_series(self):
        report = truncation_diagnostic(GradedModel(size_schedule=SCHEDULE, a_exponent=2.0, b_exponent=1.0))
        assert report.numeric_class == report.analytic_class == SeriesClass.DIVERGENT
        norms = [row.factor_norm for row in report.rows]
        assert norms == sorted(norms)
        assert report.growth_rate is not None and report.growth_rate > 0

    def test_bounded_series(self):
        report = truncation_diagnostic(GradedModel(size_schedule=SCHEDULE, a_exponent=1.0, b_exponent=2.0))
        assert report.numeric_class == SeriesClass.BOUNDED
        assert report.growth_rate is None

    def test_switched_off_coupling(self):
        report = truncation_diagnostic(GradedModel(size_schedule=SCHEDULE, a_exponent=1.0, b_exponent=math.inf))
        assert report.analytic_class == SeriesClass.BOUNDED
        assert all(row.factor_norm == 0.0 for row in report.rows)

    def test_schedule_must_increase(self):
        with pytest.raises(ValidationError):
            GradedModel(size_schedule=[8, 8, 16], a_exponent=1.0, b_exponent=1.0)


@pytest.mark.parametrize("b", EXPONENT_GRID)
@pytest.mark.parametrize("a", EXPONENT_GRID)
def test_truncation_grid_matches_the_series_class(a, b):
    report = truncation_diagnostic(GradedModel(size_schedule=SCHEDULE, a_exponent=a, b_exponent=b))
    assert report.numeric_class == report.analytic_class
