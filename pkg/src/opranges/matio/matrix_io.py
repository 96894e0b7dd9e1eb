"""Plain-text matrix, subspace and relation files.

Line 1 holds "n m", then n lines of m whitespace-separated "re,im" entries.
Relation files carry an extra first line "RELATION" and store the resolvent.
Entries are written with %.17g, so a write/read cycle is bit-exact.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import numpy.typing as npt

from opranges.config.range_config import DEFAULT_CONTEXT, ToleranceContext
from opranges.core.cayley_relations import NonnegRelation
from opranges.core.psd_core import Subspace, as_matrix
from opranges.errors.range_errors import MatrixFormatError

RELATION_HEADER = "RELATION"


def _format_entry(value: complex) -> str:
    return f"{value.real:.17g},{value.imag:.17g}"


def format_matrix(matrix: npt.ArrayLike) -> str:
    m = as_matrix(matrix)
    lines = [f"{m.shape[0]} {m.shape[1]}"]
    lines.extend(" ".join(_format_entry(value) for value in row) for row in m)
    return "\n".join(lines) + "\n"


def _parse_entry(token: str, line_no: int, source: str) -> complex:
    parts = token.split(",")
    if len(parts) != 2:
        raise MatrixFormatError(f"{source}:{line_no}: entry {token!r} is not of the form re,im", line=line_no)
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise MatrixFormatError(f"{source}:{line_no}: entry {token!r} is not numeric", line=line_no) from exc


def parse_matrix(text: str, source: str = "<string>", first_line: int = 1) -> np.ndarray:
    lines = text.splitlines()
    if not lines:
        raise MatrixFormatError(f"{source}:{first_line}: empty matrix file", line=first_line)

    header = lines[0].split()
    try:
        n, m = (int(token) for token in header)
    except ValueError as exc:
        raise MatrixFormatError(f"{source}:{first_line}: header {lines[0]!r} is not 'n m'", line=first_line) from exc
    if n < 0 or m < 0:
        raise MatrixFormatError(f"{source}:{first_line}: negative shape {n} x {m}", line=first_line)
    while len(lines) - 1 > n and not lines[-1].strip():
        lines.pop()
    if len(lines) - 1 != n:
        line_no = first_line + len(lines)
        raise MatrixFormatError(f"{source}:{line_no}: expected {n} rows, found {len(lines) - 1}", line=line_no)

    matrix = np.zeros((n, m), dtype=complex)
    for i, line in enumerate(lines[1:]):
        line_no = first_line + 1 + i
        tokens = line.split()
        if len(tokens) != m:
            raise MatrixFormatError(f"{source}:{line_no}: expected {m} entries, found {len(tokens)}", line=line_no)
        matrix[i] = [_parse_entry(token, line_no, source) for token in tokens]
    return matrix


def read_matrix(path: Path) -> np.ndarray:
    return parse_matrix(Path(path).read_text(encoding="utf-8"), str(path))


def write_matrix(path: Path, matrix: npt.ArrayLike) -> Path:
    path = Path(path)
    path.write_text(format_matrix(matrix), encoding="utf-8")
    return path


def read_subspace(path: Path, ctx: ToleranceContext | None = None) -> Subspace:
    """The column span of the stored frame; any spanning set is accepted."""
    return Subspace.span(read_matrix(path), ctx or DEFAULT_CONTEXT)


def write_subspace(path: Path, subspace: Subspace) -> Path:
    return write_matrix(path, subspace.frame)


def format_relation(rel: NonnegRelation) -> str:
    return f"{RELATION_HEADER}\n" + format_matrix(rel.resolvent.entries)


def parse_relation(text: str, source: str = "<string>", ctx: ToleranceContext | None = None) -> NonnegRelation:
    head, _, body = text.partition("\n")
    if head.strip() != RELATION_HEADER:
        raise MatrixFormatError(f"{source}:1: expected header {RELATION_HEADER!r}, found {head.strip()!r}", line=1)
    return NonnegRelation.from_resolvent(parse_matrix(body, source, first_line=2), ctx)


def read_relation(path: Path, ctx: ToleranceContext | None = None) -> NonnegRelation:
    return parse_relation(Path(path).read_text(encoding="utf-8"), str(path), ctx)


def write_relation(path: Path, rel: NonnegRelation) -> Path:
    path = Path(path)
    path.write_text(format_relation(rel), encoding="utf-8")
    return path
