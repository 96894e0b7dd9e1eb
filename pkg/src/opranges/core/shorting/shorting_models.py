"""Pydantic models for parallel sums and shorted operators."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

from opranges.core.psd_core import Contraction, PsdOperator, Subspace


class ParallelLimitReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    result: PsdOperator = Field(..., description="last iterate of F(F+G+eps)^-1 G")
    eps: list[float] = Field(..., description="schedule actually evaluated")
    increments: list[float] = Field(..., description="Frobenius distance between consecutive iterates")
    last_increment: float = Field(..., ge=0)


class ShortReport(BaseModel):
    """The shorted operator B_K with the two oracle routes it was checked against."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    shorted: PsdOperator = Field(..., description="block-formula result in ambient coordinates")
    variational: PsdOperator = Field(..., description="stationarity route, polarized over K")
    omega_route: PsdOperator = Field(..., description="B^{1/2} P_Omega B^{1/2}")
    route_disagreement: float = Field(..., ge=0, description="max pairwise Frobenius distance")
    vanishes: bool = Field(..., description="||B_K|| <= cmp_tol * ||B||")
    cross_range_ok: bool = Field(..., description="ran B12* inside ran B22^{1/2}")


class GammaReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    gamma: Contraction
    short_inner: PsdOperator = Field(..., description="B11^{1/2}(I - GG*)B11^{1/2} embedded on K")
    short_outer: PsdOperator = Field(..., description="B22^{1/2}(I - G*G)B22^{1/2} embedded on K-perp")
    disagreement: float = Field(..., ge=0, description="distance to shorted() on K and on K-perp")


class DisjointPairReport(BaseModel):
    """F and G recovered as complementary compressions of F + G."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    subspace: Subspace = Field(..., description="ran P, where M = P is the contraction of F relative to F + G")
    idempotence_defect: float = Field(..., ge=0)
    f_residual: float = Field(..., ge=0)
    g_residual: float = Field(..., ge=0)
    inner_intersection_dim: int = Field(..., ge=0, description="dim of subspace ∩ ran (F+G)^{1/2}")
    outer_intersection_dim: int = Field(..., ge=0, description="dim of subspace-perp ∩ ran (F+G)^{1/2}")


class WitnessReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    sum_inner_dim: int = Field(..., ge=0)
    sum_outer_dim: int = Field(..., ge=0)
    summand_inner_dims: list[int]
    summand_outer_dims: list[int]
    witnessed: bool = Field(..., description="both intersections with the sum's range are trivial")
    implied_ok: bool = Field(..., description="a witnessed sum forces every summand to be witnessed")


class SymmetryReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    reflected_dim: int = Field(..., ge=0, description="dim(ran X^{1/2} ∩ J ran X^{1/2}), J = 2P_M - I")
    inner_vanishes: bool
    outer_vanishes: bool
    agree: bool = Field(..., description="both shorts vanish exactly when the reflected intersection is trivial")
