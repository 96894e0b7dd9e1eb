from .pipeline_models import DEFAULT_NS, DEFAULT_XS, PipelineResult, ScenarioConfig, parse_float_list, parse_int_list
from .acceptance import ACCEPTANCE, CriterionOutcome, run_acceptance
from .pipelines import PIPELINES, run_pipeline
from .report_writer import FLOAT_FORMAT, format_cell, render_csv, render_summary, write_report

__all__ = [
    "ACCEPTANCE",
    "CriterionOutcome",
    "DEFAULT_NS",
    "DEFAULT_XS",
    "FLOAT_FORMAT",
    "PIPELINES",
    "PipelineResult",
    "ScenarioConfig",
    "format_cell",
    "parse_float_list",
    "parse_int_list",
    "render_csv",
    "render_summary",
    "run_acceptance",
    "run_pipeline",
    "write_report",
]
