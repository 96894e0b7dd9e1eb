import numpy as np
import pytest
from numpy.testing import assert_array_equal

from opranges.core.psd_core import Subspace
from opranges.errors.range_errors import MatrixFormatError
from opranges.fixtures import build_fixture
from opranges.matio import (
    format_matrix,
    parse_matrix,
    parse_relation,
    read_matrix,
    read_relation,
    read_subspace,
    write_matrix,
    write_relation,
    write_subspace,
)
from opranges.tables.cli_table import ExitCode


def test_write_read_is_exact(tmp_path, rng):
    matrix = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2)) / 3
    assert_array_equal(read_matrix(write_matrix(tmp_path / "m.mat", matrix)), matrix)


def test_format():
    assert format_matrix(np.array([[1.0, -0.5j]])) == "1 2\n1,0 -0,-0.5\n"
    assert_array_equal(parse_matrix("1 2\n1,0 -0,-0.5\n"), np.array([[1.0, -0.5j]]))


def test_trailing_blank_lines_are_ignored():
    assert_array_equal(parse_matrix("1 1\n2,0\n\n\n"), np.array([[2.0 + 0j]]))


def test_empty_shape():
    assert parse_matrix("0 3\n").shape == (0, 3)


@pytest.mark.parametrize(
    ("text", "line"),
    [
        ("", 1),
        ("2 x\n1,0 0,0\n", 1),
        ("-1 2\n", 1),
        ("2 2\n1,0 0,0\n", 3),
        ("2 2\n1,0 0,0\n1,0\n", 3),
        ("1 2\n1,0 abc\n", 2),
        ("1 1\n1,0,0\n", 2),
    ],
)
def test_errors_carry_line_numbers(text, line):
    with pytest.raises(MatrixFormatError) as excinfo:
        parse_matrix(text)
    assert excinfo.value.line == line
    assert excinfo.value.exit_code == ExitCode.BAD_INPUT


def test_subspace_file_is_read_as_a_span(tmp_path):
    path = tmp_path / "d.sub"
    write_matrix(path, np.array([[2.0, 0.0], [2.0, 1.0], [0.0, 0.0]]))
    assert read_subspace(path).equals(Subspace.coordinate(3, [0, 1]))

    D = build_fixture("divext-d")
    assert read_subspace(write_subspace(tmp_path / "e.sub", D)).equals(D)


def test_relation_round_trip(tmp_path):
    rel = build_fixture("trotter-line-45")
    back = read_relation(write_relation(tmp_path / "r.rel", rel))
    assert_array_equal(back.resolvent.entries, rel.resolvent.entries)
    assert back.mul_part.dim == 1


def test_relation_header():
    with pytest.raises(MatrixFormatError) as excinfo:
        parse_relation("1 1\n0.5,0\n")
    assert excinfo.value.line == 1

    with pytest.raises(MatrixFormatError) as excinfo:
        parse_relation("RELATION\n1 1\nhalf\n")
    assert excinfo.value.line == 3
