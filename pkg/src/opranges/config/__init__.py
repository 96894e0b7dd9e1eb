from .range_config import DEFAULT_CONTEXT, RangeSettings, ToleranceContext, range_settings

__all__ = ["DEFAULT_CONTEXT", "RangeSettings", "ToleranceContext", "range_settings"]
