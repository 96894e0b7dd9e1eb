from .range_errors import (
    CheckFailed,
    ConfigParse,
    DimensionMismatch,
    EmptyList,
    HypothesisViolated,
    InvalidZ,
    MatrixFormatError,
    MultivaluedRelation,
    NoFactorization,
    NotConverged,
    NotContraction,
    NotHermitian,
    NotInvertible,
    NotNested,
    NotOrthogonal,
    NotPsd,
    NotSpanning,
    NotSquare,
    OperatorRangeError,
    OutOfFormDomain,
    RankDeficientSource,
    UnknownFixture,
    UnknownPipeline,
)

__all__ = [
    "CheckFailed",
    "ConfigParse",
    "DimensionMismatch",
    "EmptyList",
    "HypothesisViolated",
    "InvalidZ",
    "MatrixFormatError",
    "MultivaluedRelation",
    "NoFactorization",
    "NotConverged",
    "NotContraction",
    "NotHermitian",
    "NotInvertible",
    "NotNested",
    "NotOrthogonal",
    "NotPsd",
    "NotSpanning",
    "NotSquare",
    "OperatorRangeError",
    "OutOfFormDomain",
    "RankDeficientSource",
    "UnknownFixture",
    "UnknownPipeline",
]
