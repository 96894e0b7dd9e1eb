"""Exceptions raised by the operator-range calculus.

Every exception carries the process exit code the CLI maps it to.
"""

from __future__ import annotations

from opranges.tables.cli_table import ExitCode


class OperatorRangeError(Exception):
    """Base class for every domain error of the package."""

    exit_code: ExitCode = ExitCode.BAD_INPUT


class NotSquare(OperatorRangeError):
    """Raised when an operator is built from a non-square array."""


class NotPsd(OperatorRangeError):
    """Raised when an eigenvalue lies below the admissible clamp level."""


class NotHermitian(OperatorRangeError):
    """Raised when the anti-Hermitian part exceeds the asymmetry tolerance."""


class DimensionMismatch(OperatorRangeError):
    """Raised when operands live in different ambient spaces."""


class NotContraction(OperatorRangeError):
    """Raised when a matrix expected to be a contraction has norm above one."""


class NotInvertible(OperatorRangeError):
    """Raised when an operator required to be invertible has a kernel."""


class RankDeficientSource(OperatorRangeError):
    """Raised when a non-square operator does not have full column rank."""


class InvalidZ(OperatorRangeError):
    """Raised for a semigroup parameter outside the closed right half-plane."""


class OutOfFormDomain(OperatorRangeError):
    """Raised when a vector is not in the form domain of a relation."""


class MultivaluedRelation(OperatorRangeError):
    """Raised when an operator is requested from a relation with multivalued part."""


class EmptyList(OperatorRangeError):
    """Raised for an empty operand list."""


class MatrixFormatError(OperatorRangeError):
    """Raised when a matrix, subspace or relation file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        super().__init__(message)
        self.line = line


class NoFactorization(OperatorRangeError):
    """Raised when A = BC has no solution because ran A is not inside ran B."""

    exit_code = ExitCode.NO_FACTORIZATION


class HypothesisViolated(OperatorRangeError):
    """Raised when a range-intersection hypothesis of a construction fails."""

    exit_code = ExitCode.HYPOTHESIS_VIOLATED


class NotNested(HypothesisViolated):
    """Raised when subspaces required to be increasing are not."""


class NotOrthogonal(HypothesisViolated):
    """Raised when parts of a decomposition are not mutually orthogonal."""


class NotSpanning(HypothesisViolated):
    """Raised when parts of a decomposition do not span the space."""


class NotConverged(OperatorRangeError):
    """Raised when a limit schedule does not settle."""

    exit_code = ExitCode.NOT_CONVERGED


class CheckFailed(OperatorRangeError):
    """Raised when a verified identity fails beyond its tolerance."""

    exit_code = ExitCode.CHECK_FAILED


class ConfigParse(OperatorRangeError):
    """Raised when a scenario file cannot be parsed or validated."""

    exit_code = ExitCode.CONFIG_PARSE


class UnknownPipeline(OperatorRangeError):
    """Raised when a scenario names a pipeline that does not exist."""

    exit_code = ExitCode.UNKNOWN_PIPELINE


class UnknownFixture(OperatorRangeError):
    """Raised when a fixture name is not in the library."""

    exit_code = ExitCode.UNKNOWN_FIXTURE
