"""Resolve command-line operands: a file path or ``fixture:NAME``."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from opranges.config.range_config import DEFAULT_CONTEXT, ToleranceContext
from opranges.core.cayley_relations import NonnegRelation
from opranges.core.psd_core import Subspace
from opranges.matio import read_matrix, read_relation, read_subspace
from opranges.tables.cli_table import FixtureKind

from .fixture_library import build_fixture

FIXTURE_PREFIX = "fixture:"


def _fixture_name(ref: str) -> str | None:
    return ref[len(FIXTURE_PREFIX):] if ref.startswith(FIXTURE_PREFIX) else None


def load_matrix(ref: str | Path) -> np.ndarray:
    name = _fixture_name(str(ref))
    if name is not None:
        return build_fixture(name, FixtureKind.MATRIX)
    return read_matrix(Path(ref))


def load_subspace(ref: str | Path, ctx: ToleranceContext | None = None) -> Subspace:
    name = _fixture_name(str(ref))
    if name is not None:
        return build_fixture(name, FixtureKind.SUBSPACE)
    return read_subspace(Path(ref), ctx or DEFAULT_CONTEXT)


def load_relation(ref: str | Path, ctx: ToleranceContext | None = None) -> NonnegRelation:
    name = _fixture_name(str(ref))
    if name is not None:
        return build_fixture(name, FixtureKind.RELATION)
    return read_relation(Path(ref), ctx)
