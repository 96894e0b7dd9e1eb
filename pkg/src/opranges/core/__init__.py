"""Operator-range calculus: one sub-package per family of constructions."""
