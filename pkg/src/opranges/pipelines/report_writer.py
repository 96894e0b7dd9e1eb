"""CSV and summary emission; a fixed float format keeps reruns byte-identical."""

from __future__ import annotations

import csv
import io
from pathlib import Path

from loguru import logger

from .pipeline_models import Cell, PipelineResult

FLOAT_FORMAT = "%.12e"


def format_cell(value: Cell) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return FLOAT_FORMAT % value
    return str(value)


def render_csv(result: PipelineResult) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(result.columns)
    for row in result.rows:
        writer.writerow([format_cell(value) for value in row])
    return buffer.getvalue()


def render_summary(result: PipelineResult) -> str:
    lines = [f"pipeline: {result.pipeline}", f"rows: {len(result.rows)}"]
    lines.extend(result.summary)
    lines.append("status: " + ("PASS" if result.passed else "FAIL"))
    lines.extend(f"failed: {failure}" for failure in result.failures)
    return "\n".join(lines) + "\n"


def write_report(result: PipelineResult, out_dir: Path) -> tuple[Path, Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{result.pipeline}.csv"
    summary_path = out_dir / f"{result.pipeline}-summary.txt"
    csv_path.write_text(render_csv(result), encoding="utf-8", newline="")
    summary_path.write_text(render_summary(result), encoding="utf-8")
    logger.info("wrote {} and {}", csv_path, summary_path)
    return csv_path, summary_path
