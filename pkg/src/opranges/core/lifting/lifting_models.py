"""Pydantic models for the lifting calculus."""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from opranges.core.psd_core import Contraction, PsdOperator
from opranges.tables.lifting_table import LiftingRegime, SeriesClass


class LiftingCriterion(NamedTuple):
    included: bool
    factor_norm: float


class RecoveredFactors(BaseModel):
    """Blocks of X = T^{1/2} in (M, M-perp) and the contraction G with U = W^{1/2} G X22^{1/2}."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    A: PsdOperator = Field(..., description="T^{1/2} P_M T^{1/2}")
    W: PsdOperator
    U: np.ndarray = Field(..., description="off-diagonal block of T^{1/2}")
    X22: PsdOperator
    G: Contraction
    block_residual: float = Field(..., ge=0, description="max of ‖A11 - W²‖_F and ‖A12 - WU‖_F")


class ConditionFlags(BaseModel):
    model_config = ConfigDict(frozen=True)

    intersection_trivial: bool = Field(..., description="ran V ∩ ran W = {0}")
    v_in_w_sqrt: bool = Field(..., description="ran V inside ran W^{1/2}")
    w_in_v_sqrt: bool = Field(..., description="ran W inside ran V^{1/2}")
    subspace_lift: bool = Field(..., description="trivial intersection and ran V inside ran W^{1/2}")
    complement_lift: bool = Field(..., description="trivial intersection and ran W inside ran V^{1/2}")
    both: bool
    regime: LiftingRegime


class ExampleReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    V: PsdOperator
    v_in_w_sqrt: bool = Field(..., description="ran V inside ran W^{1/2}")
    root_ranges_equal: bool = Field(..., description="ran V^{1/2} = ran W^{1/2}")
    meets_w_dim: int = Field(..., ge=0, description="dim(ran V^{1/2} ∩ ran W)")
    finite_collapse: bool = Field(..., description="ran W^{1/2} = ran W, so the range pathology cannot show")


class GradedModel(BaseModel):
    """A11(n) = diag(i^-a), A12(n) = (i^-b)_i for i = 1..n over a schedule of truncations."""

    model_config = ConfigDict(frozen=True)

    size_schedule: list[int] = Field(..., min_length=3)
    a_exponent: float = Field(..., gt=0)
    b_exponent: float = Field(..., gt=0, description="math.inf switches the coupling off")

    @field_validator("size_schedule")
    @classmethod
    def _increasing(cls, sizes: list[int]) -> list[int]:
        if sizes[0] < 1 or any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise ValueError("size_schedule must be positive and strictly increasing")
        return sizes

    @property
    def series_exponent(self) -> float:
        """q with ‖A11^{-3/4} A12‖² = sum of i^q."""
        return 1.5 * self.a_exponent - 2 * self.b_exponent

    @property
    def analytic_class(self) -> SeriesClass:
        if math.isinf(self.b_exponent) or self.series_exponent < -1:
            return SeriesClass.BOUNDED
        return SeriesClass.DIVERGENT


class TruncationRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    factor_norm: float = Field(..., ge=0)


class TruncationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    model: GradedModel
    rows: list[TruncationRow]
    fitted_exponent: float | None = Field(None, description="slope of log mean increment against log n")
    growth_rate: float | None = Field(None, description="fitted (q + 1) / 2 for a divergent series")
    numeric_class: SeriesClass
    analytic_class: SeriesClass
