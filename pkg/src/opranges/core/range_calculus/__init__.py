from .douglas import douglas_solve, range_inclusion
from .range_identities import range_sum_identity_check, sandwich_range_check

__all__ = ["douglas_solve", "range_inclusion", "range_sum_identity_check", "sandwich_range_check"]
