"""Semigroups of relations, the Euler resolvent approximation and Trotter products.

exp(-zT) of a relation acts on the closure of dom T through the operator
part and annihilates the multivalued part.
"""

from __future__ import annotations

import numpy as np
from loguru import logger

from opranges.core.psd_core import intersection_dim, spectral_norm
from opranges.errors.range_errors import DimensionMismatch, InvalidZ

from .cayley_models import EulerResult, EulerRow, EulerSweepReport, TrotterResult, TrotterRow, TrotterSweepReport
from .relation import NonnegRelation, form_sum


def semigroup(rel: NonnegRelation, z: complex) -> np.ndarray:
    z = complex(z)
    if z.real < 0:
        raise InvalidZ(f"Re z = {z.real:g} < 0")
    return rel.spectral(lambda t: np.exp(-z * t))


def _check_sector(z: complex) -> None:
    if z != 0 and z.real <= 0:
        raise InvalidZ(f"z = {z} lies outside the open right half-plane")


def euler_approx(rel: NonnegRelation, z: complex, n: int) -> EulerResult:
    """((I + (z/n) T)^{-1})^n and its operator-norm distance to exp(-zT)."""
    z = complex(z)
    _check_sector(z)
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    approx = rel.spectral(lambda t: (1.0 + z * t / n) ** (-n))
    return EulerResult(approx, spectral_norm(approx - semigroup(rel, z)))


def euler_sweep(rel: NonnegRelation, z: complex, ns: list[int]) -> EulerSweepReport:
    z = complex(z)
    rows = [EulerRow(n=n, error=euler_approx(rel, z, n).error) for n in ns]
    cos_sq = np.cos(np.angle(z)) ** 2 if z != 0 else 1.0
    usable = [(row.n, row.error) for row in rows if row.error > 0]
    slope = None
    if len(usable) >= 2:
        slope = float(np.polyfit(np.log([n for n, _ in usable]), np.log([e for _, e in usable]), 1)[0])
    constant = max((row.error * row.n * cos_sq for row in rows), default=0.0)
    logger.debug("euler sweep z={}: slope {} constant {:.3e}", z, slope, constant)
    return EulerSweepReport(rows=rows, slope=slope, constant=float(constant))


def trotter_product(rel1: NonnegRelation, rel2: NonnegRelation, t: float, n: int) -> TrotterResult:
    """(exp(-tT1/n) exp(-tT2/n))^n against the semigroup of the form sum."""
    if rel1.dim != rel2.dim:
        raise DimensionMismatch(f"relations on C^{rel1.dim} and C^{rel2.dim}")
    if t < 0 or n < 1:
        raise ValueError(f"need t >= 0 and n >= 1, got t={t}, n={n}")
    step = semigroup(rel1, t / n) @ semigroup(rel2, t / n)
    product = np.linalg.matrix_power(step, n)
    predicted = semigroup(form_sum(rel1, rel2), t)
    return TrotterResult(
        product=product,
        predicted=predicted,
        norm=spectral_norm(product),
        distance=spectral_norm(product - predicted),
        domains_meet_trivially=intersection_dim(rel1.form_domain, rel2.form_domain, rel1.ctx) == 0,
    )


def trotter_sweep(rel1: NonnegRelation, rel2: NonnegRelation, t: float, ns: list[int]) -> TrotterSweepReport:
    results = [trotter_product(rel1, rel2, t, n) for n in ns]
    rows = [TrotterRow(n=n, norm=result.norm, distance=result.distance) for n, result in zip(ns, results)]
    distances = [row.distance for row in rows]
    slack = 1e-12
    return TrotterSweepReport(
        rows=rows,
        domains_meet_trivially=results[0].domains_meet_trivially if results else False,
        distance_monotone=all(b <= a + slack for a, b in zip(distances, distances[1:])),
    )
