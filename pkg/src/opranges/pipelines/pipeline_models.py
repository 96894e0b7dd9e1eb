"""Scenario parameters and pipeline results."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, field_validator

from opranges.tables.cli_table import PipelineName

DEFAULT_XS = [0.25, 0.5, 1.0, 2.0, 4.0]
DEFAULT_NS = [8, 16, 32, 64, 128, 256, 512, 1024]

Cell = float | int | str | bool


def parse_float_list(raw: str) -> list[float]:
    return [float(token) for token in raw.replace(";", ",").split(",") if token.strip()]


def parse_int_list(raw: str) -> list[int]:
    """Either "2,4,8" or a doubling range "8..1024"."""
    if ".." in raw:
        low, _, high = raw.partition("..")
        start, stop = int(low), int(high)
        if start < 1 or stop < start:
            raise ValueError(f"bad doubling range {raw!r}")
        values = []
        n = start
        while n <= stop:
            values.append(n)
            n *= 2
        return values
    return [int(token) for token in raw.replace(";", ",").split(",") if token.strip()]


class ScenarioConfig(BaseModel):
    """Flat KEY=VALUE scenario; operand keys hold a path or ``fixture:NAME``."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    pipeline: PipelineName
    seed: int | None = Field(None, ge=0, description="overrides the global seed")

    a: str | None = None
    b: str | None = None
    m: str | None = None
    k: str | None = None
    x: str | None = None
    t: str | None = None
    l2: str | None = None
    d: str | None = None
    rel1: str | None = None
    rel2: str | None = None

    xs: list[float] = Field(default_factory=lambda: list(DEFAULT_XS), min_length=1)
    k_max: int = Field(20, ge=1)
    ns: list[int] = Field(default_factory=lambda: list(DEFAULT_NS), min_length=1)
    z: complex = 1.0
    t_param: float = Field(1.0, ge=0)
    a_exp: float = Field(2.0, gt=0)
    b_exp: float = Field(1.0, gt=0)
    samples: int = Field(100, ge=1)

    @field_validator("xs", mode="before")
    @classmethod
    def _parse_xs(cls, raw: object) -> object:
        return parse_float_list(raw) if isinstance(raw, str) else raw

    @field_validator("ns", mode="before")
    @classmethod
    def _parse_ns(cls, raw: object) -> object:
        return parse_int_list(raw) if isinstance(raw, str) else raw

    @field_validator("z", mode="before")
    @classmethod
    def _parse_z(cls, raw: object) -> object:
        return complex(raw.replace(" ", "")) if isinstance(raw, str) else raw

    @field_validator("xs")
    @classmethod
    def _positive_xs(cls, xs: list[float]) -> list[float]:
        if any(x <= 0 for x in xs):
            raise ValueError("every x must be positive")
        return xs

    @field_validator("ns")
    @classmethod
    def _positive_ns(cls, ns: list[int]) -> list[int]:
        if any(n < 1 for n in ns):
            raise ValueError("every n must be at least 1")
        return ns


class PipelineResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    pipeline: PipelineName
    columns: list[str]
    rows: list[list[Cell]]
    summary: list[str] = Field(default_factory=list, description="human-readable lines")
    failures: list[str] = Field(default_factory=list, description="checks that did not hold")

    @property
    def passed(self) -> bool:
        return not self.failures
