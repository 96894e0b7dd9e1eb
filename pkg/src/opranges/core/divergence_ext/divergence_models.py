"""Pydantic models for extension and product reports."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

from opranges.core.cayley_relations import NonnegRelation
from opranges.core.psd_core import Subspace


class ExtensionSample(BaseModel):
    model_config = ConfigDict(frozen=True)

    index: int = Field(..., ge=0)
    kind: str = Field(..., description="friedrichs, krein, convex or bump")
    lower_gap: float = Field(..., description="λ_min((C + a)^-1 - (A_F + a)^-1)")
    upper_gap: float = Field(..., description="λ_min((A_K + a)^-1 - (C + a)^-1)")
    extension_residual: float = Field(..., ge=0, description="‖((C + a)^-1 (A + a) - I) J‖ on the domain frame J")


class ExtensionSandwichReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    friedrichs: NonnegRelation
    krein: NonnegRelation
    shift: float = Field(..., gt=0)
    samples: list[ExtensionSample]
    order_gap: float = Field(..., description="λ_min of resolvent(Kreĭn) - resolvent(Friedrichs)")
    transversal: bool = Field(..., description="dom A_F + dom A_K spans the whole space")
    holds: bool


class ProductPiece(BaseModel):
    """One restriction B_k = B on D_k and its product B_k B on B^{-1} D_k."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    k: int = Field(..., ge=1)
    domain: Subspace = Field(..., description="D_k, the form domain of T_k")
    friedrichs: NonnegRelation = Field(..., description="Friedrichs relation of B_k B")
    friedrichs_order_gap: float = Field(..., description="λ_min(resolvent(B²) - resolvent(friedrichs))")
    friedrichs_form_residual: float = Field(..., ge=0, description="‖J*(form of B_k B)J - J* B² J‖_F")
    krein_residual: float = Field(..., ge=0, description="‖(B_k B)_K - B P_{D_k} B‖_F")
    krein_below_square: float = Field(..., description="λ_min(B² - B P_{D_k} B)")
    image_spans: bool = Field(..., description="B D_k spans ran B")


class ProductPairReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    pieces: list[ProductPiece]
    domains_trivial: bool = Field(..., description="D_1 ∩ D_2 = {0}")
    direct_sum: bool = Field(..., description="D_1 + D_2 spans dom B")
    graph_orthogonality: float = Field(..., ge=0, description="max |(Bu, Bv) + (u, v)| over frames of D_1, D_2")
    images_sum_span: bool = Field(..., description="B D_1 + B D_2 spans ran B")
    resolvent_sum_residual: float = Field(..., ge=0)


class PolarReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    product: ProductPairReport = Field(..., description="product pair of |B| = (B*B)^{1/2}")
    polar_residual: float = Field(..., ge=0, description="‖B - U|B|‖_F")
    isometry_residual: float = Field(..., ge=0, description="‖U*U - P_{ran |B|}‖_F")
    adjoint_product_residual: float = Field(..., ge=0, description="max_k ‖B* B_k - |B| |B|_k‖_F")
    kernel_dim: int = Field(..., ge=0, description="dim ker B*")
    intersection_is_kernel: bool = Field(..., description="dom(B_1 B*) ∩ dom(B_2 B*) = ker B*")
    domains_span: bool = Field(..., description="dom(B_1 B*) + dom(B_2 B*) spans the target space")
