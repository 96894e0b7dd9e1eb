from __future__ import annotations

from pathlib import Path

from dotenv import dotenv_values
from loguru import logger
from pydantic import ValidationError

from ..config.range_config import ToleranceContext, range_settings
from ..errors.range_errors import CheckFailed, ConfigParse, UnknownPipeline
from ..fixtures import emit_fixture, make_rng
from ..pipelines import CriterionOutcome, PipelineResult, ScenarioConfig, run_acceptance, run_pipeline, write_report
from ..tables.cli_table import PipelineName


def parse_scenario(path: Path) -> ScenarioConfig:
    """Read flat KEY=VALUE lines; keys are case-insensitive and blank values are dropped."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"scenario file {path} does not exist")
    raw = dotenv_values(path)

    values: dict[str, str] = {}
    for key, value in raw.items():
        if value is None:
            raise ConfigParse(f"{path}: line {key!r} is not KEY=VALUE")
        if value.strip():
            values[key.strip().lower()] = value.strip()

    name = values.get("pipeline")
    if name is None:
        raise ConfigParse(f"{path}: missing PIPELINE")
    if name not in set(PipelineName):
        raise UnknownPipeline(f"{path}: unknown pipeline {name!r}; known: {', '.join(PipelineName)}")
    try:
        return ScenarioConfig(**values)
    except ValidationError as exc:
        problems = "; ".join(f"{'.'.join(map(str, err['loc']))}: {err['msg']}" for err in exc.errors())
        raise ConfigParse(f"{path}: {problems}") from exc


class ScenarioRunner:

    def __init__(
        self,
        ctx: ToleranceContext | None = None,
        seed: int | None = None,
        out_dir: Path | None = None,
    ):
        self.ctx = ctx or range_settings.tolerance_context()
        self.seed = range_settings.SEED if seed is None else seed
        self.out_dir = Path(out_dir) if out_dir is not None else range_settings.out_dir

    def run(self, config: ScenarioConfig) -> PipelineResult:
        """Run one pipeline, write its CSV and summary, and raise if a check failed."""
        seed = self.seed if config.seed is None else config.seed
        result = run_pipeline(config, self.ctx, make_rng(seed))
        write_report(result, self.out_dir)
        if not result.passed:
            raise CheckFailed(f"{config.pipeline}: " + "; ".join(result.failures))
        return result

    def run_file(self, path: Path) -> PipelineResult:
        config = parse_scenario(path)
        logger.info("scenario {} -> pipeline {}", path, config.pipeline)
        return self.run(config)

    def emit(self, name: str) -> Path:
        return emit_fixture(name, self.out_dir)

    def selftest(self) -> list[CriterionOutcome]:
        outcomes = run_acceptance(self.ctx, self.seed)
        passed = sum(outcome.passed for outcome in outcomes)
        logger.info("selftest: {}/{} criteria passed", passed, len(outcomes))
        return outcomes
