from .cli_table import ExitCode, FixtureKind, PipelineName, exit_code_help
from .lifting_table import LiftingRegime, SeriesClass

__all__ = ["ExitCode", "FixtureKind", "LiftingRegime", "PipelineName", "SeriesClass", "exit_code_help"]
