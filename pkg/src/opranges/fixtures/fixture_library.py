"""Bundled witness fixtures, addressable on the command line as ``fixture:NAME``."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from loguru import logger

from opranges.core.cayley_relations import NonnegRelation, from_operator
from opranges.core.compressions import pathological_block
from opranges.core.psd_core import Subspace, make_psd
from opranges.errors.range_errors import UnknownFixture
from opranges.matio import write_matrix, write_relation, write_subspace
from opranges.tables.cli_table import FixtureKind

FixtureValue = np.ndarray | Subspace | NonnegRelation

GRADED_SIZE = 8
GRADED_A = 2.0
GRADED_B = 2.0

_SUFFIX = {FixtureKind.MATRIX: ".mat", FixtureKind.SUBSPACE: ".sub", FixtureKind.RELATION: ".rel"}


@dataclass(frozen=True)
class Fixture:
    name: str
    kind: FixtureKind
    description: str
    build: Callable[[], FixtureValue]

    @property
    def file_name(self) -> str:
        return self.name + _SUFFIX[self.kind]


def _rank1_witness() -> np.ndarray:
    # X = [[W², WU], [U*W, U*U]] with W = U = [1]: both shorts vanish, ker X is a line
    return pathological_block(make_psd([[1.0]]), np.array([[1.0]])).X.entries


def _line(angle: float) -> np.ndarray:
    return np.array([[np.cos(angle)], [np.sin(angle)]], dtype=complex)


def _line_relation(angle: float) -> NonnegRelation:
    """T = 1 on the line at ``angle``, multivalued on its orthogonal complement."""
    v = _line(angle)
    return NonnegRelation.from_resolvent(0.5 * (v @ v.conj().T))


def _graded_lift() -> np.ndarray:
    indices = np.arange(1, GRADED_SIZE + 1, dtype=float)
    a11 = np.diag(indices**-GRADED_A)
    a12 = (indices**-GRADED_B)[:, np.newaxis]
    # Schur complement of A11 equals one
    a22 = float(np.sum(indices ** (GRADED_A - 2 * GRADED_B))) + 1.0
    return np.block([[a11, a12], [a12.T, np.array([[a22]])]]).astype(complex)


_FIXTURES = [
    Fixture("rank1-witness", FixtureKind.MATRIX, "rank-1 block witness X = [[1, 1], [1, 1]]", _rank1_witness),
    Fixture("rank1-witness-m", FixtureKind.SUBSPACE, "first coordinate of C^2, the M of rank1-witness",
            lambda: Subspace.coordinate(2, [0])),
    Fixture("px-a", FixtureKind.MATRIX, "A = e1 e1* for the P(x) family", lambda: np.diag([1.0, 0.0]).astype(complex)),
    Fixture("px-b-noncommuting", FixtureKind.MATRIX, "B = v v*, v = (1, 1)/sqrt 2; P(x) moves with x",
            lambda: _line(np.pi / 4) @ _line(np.pi / 4).conj().T),
    Fixture("px-b-commuting", FixtureKind.MATRIX, "B = e2 e2*; P(x) is constant",
            lambda: np.diag([0.0, 1.0]).astype(complex)),
    Fixture("chain-a", FixtureKind.MATRIX, "A = diag(1, 4) for the compression chain",
            lambda: np.diag([1.0, 4.0]).astype(complex)),
    Fixture("chain-m", FixtureKind.SUBSPACE, "span (1, 1)/sqrt 2", lambda: Subspace(_line(np.pi / 4))),
    Fixture("graded-lift", FixtureKind.MATRIX, f"graded lifting model a={GRADED_A:g}, b={GRADED_B:g} truncated at n={GRADED_SIZE}",
            _graded_lift),
    Fixture("graded-lift-m", FixtureKind.SUBSPACE, f"first {GRADED_SIZE} coordinates of C^{GRADED_SIZE + 1}",
            lambda: Subspace.coordinate(GRADED_SIZE + 1, list(range(GRADED_SIZE)))),
    Fixture("split-t", FixtureKind.MATRIX, "T = diag(1, 3) for splittings and Euler sweeps",
            lambda: np.diag([1.0, 3.0]).astype(complex)),
    Fixture("scalar-t", FixtureKind.MATRIX, "T = [1]", lambda: np.eye(1, dtype=complex)),
    Fixture("divext-l2", FixtureKind.MATRIX, "L2 = diag(1, 2, 3)", lambda: np.diag([1.0, 2.0, 3.0]).astype(complex)),
    Fixture("divext-d", FixtureKind.SUBSPACE, "span{(1, 1, 0), (0, 1, 1)}",
            lambda: Subspace.span(np.array([[1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]))),
    Fixture("prodpair-b", FixtureKind.MATRIX, "invertible Hermitian B = [[2, 1], [1, -3]]",
            lambda: np.array([[2.0, 1.0], [1.0, -3.0]], dtype=complex)),
    Fixture("trotter-line-0", FixtureKind.RELATION, "T = 1 on span e1, multivalued on span e2",
            lambda: _line_relation(0.0)),
    Fixture("trotter-line-45", FixtureKind.RELATION, "T = 1 on span (1, 1)/sqrt 2, multivalued on its complement",
            lambda: _line_relation(np.pi / 4)),
    Fixture("trotter-diag", FixtureKind.RELATION, "operator relation of T = diag(1, 3)",
            lambda: from_operator(make_psd(np.diag([1.0, 3.0])))),
]

FIXTURES: dict[str, Fixture] = {fixture.name: fixture for fixture in _FIXTURES}


def list_fixtures() -> list[Fixture]:
    return list(FIXTURES.values())


def get_fixture(name: str) -> Fixture:
    try:
        return FIXTURES[name]
    except KeyError:
        raise UnknownFixture(f"no fixture named {name!r}; known: {', '.join(FIXTURES)}") from None


def build_fixture(name: str, kind: FixtureKind | None = None) -> FixtureValue:
    fixture = get_fixture(name)
    if kind is not None and fixture.kind != kind:
        raise UnknownFixture(f"fixture {name!r} is a {fixture.kind}, not a {kind}")
    return fixture.build()


def emit_fixture(name: str, out_dir: Path) -> Path:
    """Write the fixture to ``out_dir`` in the matching file format."""
    fixture = get_fixture(name)
    value = fixture.build()
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / fixture.file_name
    if fixture.kind == FixtureKind.MATRIX:
        write_matrix(path, value)
    elif fixture.kind == FixtureKind.SUBSPACE:
        write_subspace(path, value)
    else:
        write_relation(path, value)
    logger.info("wrote fixture {} to {}", name, path)
    return path
