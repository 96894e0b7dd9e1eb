"""Pydantic models for range-calculus results."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from opranges.core.psd_core.subspace import Subspace


class DouglasResult(BaseModel):
    """Minimal-range solution C of A = BC."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    factor: np.ndarray = Field(..., description="C = B^+ A")
    residual: float = Field(..., ge=0, description="Frobenius norm of A - BC")
    lam: float = Field(..., ge=0, description="least lambda with AA* <= lambda BB*, equal to ||C||^2")
    range_in_adjoint: bool = Field(..., description="ran C inside ran B*")
    kernel_matches: bool = Field(..., description="ker C equals ker A")


class InclusionResult(NamedTuple):
    included: bool
    lam: float


class RangeSumReport(BaseModel):
    """Finite reading of ran F_1^{1/2} + ... + ran F_n^{1/2} = ran (F_1 + ... + F_n)^{1/2}."""

    model_config = ConfigDict(frozen=True)

    rank_of_sum: int = Field(..., ge=0)
    span_dim: int = Field(..., ge=0)
    passed: bool


class SandwichReport(BaseModel):
    """Both sides of ran (F^{1/2} M F^{1/2})^{1/2} = F^{1/2} ran M^{1/2}."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    left: Subspace = Field(..., description="range of the sandwich")
    right: Subspace = Field(..., description="F^{1/2} applied to a frame of ran M")
    max_angle: float = Field(..., ge=0)
    passed: bool
