from enum import StrEnum


class LiftingRegime(StrEnum):
    """Which liftings an assembled block operator admits."""

    NONE = "none"
    SUBSPACE = "subspace"  # A = T^{1/2} P_M T^{1/2}
    COMPLEMENT = "complement"  # A = Q^{1/2} P_{M-perp} Q^{1/2}
    BOTH = "both"


class SeriesClass(StrEnum):
    BOUNDED = "bounded"
    DIVERGENT = "divergent"
