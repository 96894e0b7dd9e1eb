from enum import IntEnum, StrEnum


class ExitCode(IntEnum):
    OK = 0
    CHECK_FAILED = 1
    NO_FACTORIZATION = 2
    UNKNOWN_PIPELINE = 3
    CONFIG_PARSE = 4
    UNKNOWN_FIXTURE = 5
    BAD_INPUT = 6
    HYPOTHESIS_VIOLATED = 7
    NOT_CONVERGED = 8
    SELFTEST_FAILED = 9
    IO_ERROR = 10


class PipelineName(StrEnum):
    PARSUM = "parsum"
    SHORT = "short"
    DOUGLAS = "douglas"
    PXFAMILY = "pxfamily"
    CHAIN = "chain"
    LIFTCHECK = "liftcheck"
    LIFTSWEEP = "liftsweep"
    SPLITPAIR = "splitpair"
    EULER = "euler"
    TROTTER = "trotter"
    DIVEXT = "divext"
    PRODPAIR = "prodpair"


class FixtureKind(StrEnum):
    MATRIX = "matrix"
    SUBSPACE = "subspace"
    RELATION = "relation"


def exit_code_help() -> str:
    lines = [f"{code.value:>3}  {code.name}" for code in ExitCode]
    return "Exit codes:\n\n" + "\n\n".join(lines)
