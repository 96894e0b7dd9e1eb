import numpy as np
import pytest
from pydantic import ValidationError

from opranges.config.range_config import DEFAULT_CONTEXT, RangeSettings, ToleranceContext


def test_default_tolerances():
    assert DEFAULT_CONTEXT.rank_rel_tol == pytest.approx(64 * np.finfo(np.float64).eps)
    assert DEFAULT_CONTEXT.psd_clamp_tol == 1e-8
    assert DEFAULT_CONTEXT.cmp_tol == 1e-8
    assert DEFAULT_CONTEXT.angle_tol == 1e-6
    assert DEFAULT_CONTEXT.asym_tol == 1e-6


def test_overrides_skip_missing_values():
    assert DEFAULT_CONTEXT.with_overrides(cmp_tol=None) is DEFAULT_CONTEXT
    changed = DEFAULT_CONTEXT.with_overrides(cmp_tol=1e-6, rank_rel_tol=None)
    assert changed.cmp_tol == 1e-6
    assert changed.rank_rel_tol == DEFAULT_CONTEXT.rank_rel_tol


def test_tolerances_must_lie_in_unit_interval():
    with pytest.raises(ValidationError):
        ToleranceContext(cmp_tol=2.0)
    with pytest.raises(ValidationError):
        ToleranceContext(angle_tol=0.0)


def test_settings_read_prefixed_environment(monkeypatch):
    monkeypatch.setenv("OPRANGES_CMP_TOL", "1e-6")
    monkeypatch.setenv("OPRANGES_SEED", "42")
    settings = RangeSettings()
    assert settings.SEED == 42
    assert settings.tolerance_context().cmp_tol == 1e-6
