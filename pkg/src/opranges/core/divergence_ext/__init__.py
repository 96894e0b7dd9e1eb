from .partial_operator import PartialOperator
from .divergence_models import (
    ExtensionSample,
    ExtensionSandwichReport,
    PolarReport,
    ProductPairReport,
    ProductPiece,
)
from .extensions import divergence_form, extension_sandwich_check, friedrichs, krein, shifted_resolvent
from .products import polar_restrictions, product_pair

__all__ = [
    "ExtensionSample",
    "ExtensionSandwichReport",
    "PartialOperator",
    "PolarReport",
    "ProductPairReport",
    "ProductPiece",
    "divergence_form",
    "extension_sandwich_check",
    "friedrichs",
    "krein",
    "polar_restrictions",
    "product_pair",
    "shifted_resolvent",
]
