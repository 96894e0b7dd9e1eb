"""Pydantic models for relation splittings, chains and semigroup experiments."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from opranges.core.psd_core import Subspace

from .relation import NonnegRelation


class SplitPairReport(BaseModel):
    """T split along (M, M-perp) into T1, T2 with R1 + R2 = R."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    rel1: NonnegRelation
    rel2: NonnegRelation
    resolvent_sum_residual: float = Field(..., ge=0, description="‖R1 + R2 - R‖_F / ‖R‖_F")
    domains_match: bool = Field(..., description="D[T1] = (2R)^{1/2} M and D[T2] = (2R)^{1/2} M-perp as frames")
    form_preservation: float = Field(..., ge=0, description="max |T1[g,g] - T[g,g]| / (1 + |T[g,g]|) over probes in D[T1]")
    graph_orthogonality: float = Field(..., ge=0, description="max |T[u,v] + (u,v)| over frames of D[T1], D[T2]")
    decomposition_residual: float = Field(..., ge=0, description="max ‖f - R1(I+T)f - R2(I+T)f‖ over a basis")
    kernel_claim_ok: bool = Field(..., description="T_k[g,g] = 0 forces T[g,g] = 0 on both parts")


class SplitNReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    relations: list[NonnegRelation]
    resolvent_sum_residual: float = Field(..., ge=0)
    domains_pairwise_trivial: bool
    graph_orthogonality: float = Field(..., ge=0)


class CompletionReport(BaseModel):
    """T and T2 completing a given T1, with P recovered from A1 = R^{1/2} P R^{1/2}."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    relation: NonnegRelation = Field(..., description="T, resolvent A1 + B")
    partner: NonnegRelation = Field(..., description="T2, resolvent B")
    projection: Subspace
    idempotence_defect: float = Field(..., ge=0)
    reconstruction_residual: float = Field(..., ge=0, description="‖R^{1/2} P R^{1/2} - A1‖_F")


class ChainFamilyStep(BaseModel):
    model_config = ConfigDict(frozen=True)

    j: int = Field(..., ge=1)
    subspace_dim: int = Field(..., ge=0)
    r1_norm: float = Field(..., ge=0, description="‖R_{1,j}‖")
    r2_distance: float = Field(..., ge=0, description="‖R_{2,j} - R‖")
    sum_residual: float = Field(..., ge=0)
    semigroup1_norm: float = Field(..., ge=0, description="‖exp(-T_{1,j})‖")
    semigroup2_distance: float = Field(..., ge=0, description="‖exp(-T_{2,j}) - exp(-T)‖")


class ChainFamiliesReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    first_family: list[NonnegRelation] = Field(..., description="T_{1,j}, resolvents R^{1/2} P_{N_j-perp} R^{1/2}")
    second_family: list[NonnegRelation] = Field(..., description="T_{2,j}, resolvents R^{1/2} P_{N_j} R^{1/2}")
    steps: list[ChainFamilyStep]
    r1_monotone: bool = Field(..., description="R_{1,1} >= R_{1,2} >= ...")
    r2_monotone: bool = Field(..., description="R_{2,1} <= R_{2,2} <= ...")
    domains_nested: bool
    inverse_order_ok: bool = Field(..., description="T_{k,j}^{-1} <= T^{-1} for both families")
    endpoint_exact: bool


class EulerResult(NamedTuple):
    matrix: np.ndarray
    error: float


class EulerRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1)
    error: float = Field(..., ge=0)


class EulerSweepReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    rows: list[EulerRow]
    slope: float | None = Field(None, description="log-log slope of error against n")
    constant: float = Field(..., ge=0, description="max of error * n * cos²(arg z)")


class TrotterResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    product: np.ndarray
    predicted: np.ndarray = Field(..., description="semigroup of the form sum at t")
    norm: float = Field(..., ge=0)
    distance: float = Field(..., ge=0)
    domains_meet_trivially: bool


class TrotterRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1)
    norm: float = Field(..., ge=0)
    distance: float = Field(..., ge=0)


class TrotterSweepReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    rows: list[TrotterRow]
    domains_meet_trivially: bool
    distance_monotone: bool
