"""Pydantic models for compressions and the P(x) family."""

from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from opranges.core.psd_core import Contraction, PsdOperator, Subspace


class CompressionReport(BaseModel):
    """A1 = A^{1/2} P_M A^{1/2} with its range diagnostics."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    A1: PsdOperator
    kernel_trivial: bool = Field(..., description="rank A1 = n")
    range_A_intersect: int = Field(..., ge=0, description="dim(ran A1^{1/2} ∩ ran A)")
    range_matches: bool = Field(..., description="ran A1^{1/2} equals A^{1/2} M as frames")
    isometry_check: float = Field(..., ge=0, description="max |‖A1^{-1/2}h‖ - ‖A^{-1/2}h‖| over a frame of ran A1^{1/2}")
    order_gap: float = Field(..., description="smallest eigenvalue of A - A1")


class MiddleProjection(BaseModel):
    """A projection P with target ≈ base^{1/2} P base^{1/2}.

    ``exact`` is False when base^{[-1/2]} target base^{[-1/2]} is not idempotent;
    P is then its support projection and ``residual`` measures the miss.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    subspace: Subspace
    residual: float = Field(..., ge=0, description="‖target - base^{1/2} P base^{1/2}‖_F / ‖base‖^2")
    idempotence_defect: float = Field(..., ge=0)
    exact: bool


class CompositionReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    A1: PsdOperator
    A2: PsdOperator
    P12: MiddleProjection


class MonotoneFactorReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    A1: PsdOperator
    A2: PsdOperator
    P: MiddleProjection
    complement_intersect: int = Field(..., ge=0, description="dim(ran(I - P) ∩ ran A2^{1/2})")


class BlockWitnessReport(BaseModel):
    """X = [[W², WU], [U*W, U*U]], the Gram matrix of f -> W f1 + U f2."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    X: PsdOperator
    M: Subspace
    inner_short_vanishes: bool = Field(..., description="shorted(X, M) = 0")
    outer_short_vanishes: bool = Field(..., description="shorted(X, M-perp) = 0")
    w_in_u: bool = Field(..., description="ran W inside ran U, equivalent to the inner short vanishing")
    u_in_w: bool = Field(..., description="ran U inside ran W, equivalent to the outer short vanishing")
    kernel_dim: int = Field(..., ge=0)
    form_residual: float = Field(..., ge=0, description="max |(Xf, f) - ‖W f1 + U f2‖²| over the probes")


class CriterionReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    ker_x11_trivial: bool
    ker_x22_trivial: bool
    cross_meets_trivially: bool = Field(..., description="ran X12 nonzero with ran X12 ∩ ran X11 = {0}")
    conjunction: bool
    direct: bool = Field(..., description="both shorts vanish and ker X = {0}")
    agree: bool


class ExtremeSplit(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    A1: PsdOperator
    A2: PsdOperator
    sum_residual: float = Field(..., ge=0)
    rank_sum_ok: bool = Field(..., description="rank A1 + rank A2 >= rank A")
    direct_sum: bool = Field(..., description="ran A1^{1/2} and ran A2^{1/2} meet trivially and span ran A^{1/2}")


class ChainStep(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    k: int = Field(..., ge=1)
    A_k: PsdOperator
    P_k: MiddleProjection
    norm: float = Field(..., ge=0)
    ratio: float | None = Field(None, description="‖A_k‖ / ‖A_{k-1}‖")


class ChainReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    steps: list[ChainStep]
    a_monotone: bool
    p_monotone: bool
    fixed_point_residual: float = Field(..., ge=0)


class ProjectionSample(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    x: float = Field(..., gt=0)
    projection: np.ndarray = Field(..., description="P(x) = S_x S_x*")
    support: np.ndarray = Field(..., description="projection onto ran(A + xB)")
    projection_defect: float = Field(..., ge=0, description="‖P² - P‖_F")
    reconstruction: float = Field(..., ge=0, description="‖A - (A+xB)^{1/2} P(x) (A+xB)^{1/2}‖_F")


class ProjectionFamily(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    A: PsdOperator
    B: PsdOperator
    samples: list[ProjectionSample]

    def at(self, x: float) -> ProjectionSample:
        for sample in self.samples:
            if sample.x == x:
                return sample
        raise KeyError(x)


class IntertwinerReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    Z: Contraction
    conjugation_residual: float = Field(..., ge=0, description="‖P(y) - Z* P(x) Z‖_F")
    restricted_singular_values: list[float]
    scaling_defect: float = Field(..., ge=0, description="max |sigma - sqrt(x/y)|")
    gram_residual: float = Field(..., ge=0, description="‖(y-x) P(y) - (y Z*Z - x Q_y)‖_F")


class GroupSample(BaseModel):
    model_config = ConfigDict(frozen=True)

    t: float
    residual: float = Field(..., ge=0, description="‖(Q_-t - P_-t) - U_-t P_t U_t‖_F")


class GroupFamilyReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    samples: list[GroupSample]
    skipped: list[float]
