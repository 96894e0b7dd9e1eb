from .fixture_library import FIXTURES, Fixture, build_fixture, emit_fixture, get_fixture, list_fixtures
from .inputs import FIXTURE_PREFIX, load_matrix, load_relation, load_subspace
from .random_models import (
    complex_gaussian,
    make_rng,
    psd_on,
    random_full_rank,
    random_hermitian_invertible,
    random_overlapping_pair,
    random_psd,
    random_subspace,
    random_unitary,
)

__all__ = [
    "FIXTURES",
    "FIXTURE_PREFIX",
    "Fixture",
    "build_fixture",
    "complex_gaussian",
    "emit_fixture",
    "get_fixture",
    "list_fixtures",
    "load_matrix",
    "load_relation",
    "load_subspace",
    "make_rng",
    "psd_on",
    "random_full_rank",
    "random_hermitian_invertible",
    "random_overlapping_pair",
    "random_psd",
    "random_subspace",
    "random_unitary",
]
