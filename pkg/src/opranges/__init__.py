"""Operator ranges, parallel sums, shorted operators and nonnegative relations on C^n."""

__version__ = "0.1.0"
