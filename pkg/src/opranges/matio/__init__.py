from .matrix_io import (
    RELATION_HEADER,
    format_matrix,
    format_relation,
    parse_matrix,
    parse_relation,
    read_matrix,
    read_relation,
    read_subspace,
    write_matrix,
    write_relation,
    write_subspace,
)

__all__ = [
    "RELATION_HEADER",
    "format_matrix",
    "format_relation",
    "parse_matrix",
    "parse_relation",
    "read_matrix",
    "read_relation",
    "read_subspace",
    "write_matrix",
    "write_relation",
    "write_subspace",
]
