import pytest

from opranges.errors.range_errors import CheckFailed
from opranges.fixtures import make_rng
from opranges.pipelines import acceptance
from opranges.pipelines.acceptance import ACCEPTANCE, run_acceptance


def test_criteria_are_numbered_in_order():
    assert [number for number, _, _ in ACCEPTANCE] == list(range(1, 13))


# make_rng(number) is the stream run_acceptance(seed=0) hands to criterion ``number``
@pytest.mark.parametrize(("number", "title", "check"), ACCEPTANCE, ids=[check.__name__ for _, _, check in ACCEPTANCE])
def test_every_criterion_passes(number, title, check, ctx):
    assert check(ctx, make_rng(number)) == []


def _draw(ctx, rng):
    return [f"drew {rng.integers(10**9)}"]


def _raise_check(ctx, rng):
    raise CheckFailed("residual too large")


def _many(ctx, rng):
    return ["a", "b", "c", "d", "e"]


def test_run_acceptance_collects_outcomes(monkeypatch, ctx):
    monkeypatch.setattr(
        acceptance,
        "ACCEPTANCE",
        [(1, "passes", lambda ctx, rng: []), (2, "raises", _raise_check), (3, "noisy", _many), (4, "random", _draw)],
    )
    outcomes = run_acceptance(ctx, seed=11)

    assert [outcome.passed for outcome in outcomes] == [True, False, False, False]
    assert outcomes[0].detail == "ok"
    assert outcomes[1].detail == "CheckFailed: residual too large"
    assert outcomes[2].detail == "a; b; c; ... 2 more"
    assert outcomes[3].detail == run_acceptance(ctx, seed=11)[3].detail
    assert outcomes[3].detail != run_acceptance(ctx, seed=12)[3].detail
