"""One function per scenario pipeline: load operands, run the calculus, tabulate."""

from __future__ import annotations

from collections.abc import Callable

import numpy as np
import scipy.linalg
from loguru import logger
from pydantic import ValidationError

from opranges.config.range_config import ToleranceContext
from opranges.core.cayley_relations import NonnegRelation, euler_sweep, from_operator, split_pair, trotter_sweep
from opranges.core.compressions import chain, intertwiner, projection_family, projection_sample
from opranges.core.divergence_ext import extension_sandwich_check, product_pair
from opranges.core.lifting import GradedModel, lifting_criterion, recover_factors, truncation_diagnostic
from opranges.core.psd_core import PsdOperator, intersection_dim, loewner_gap, make_psd, range_basis, sqrt_psd
from opranges.core.range_calculus import douglas_solve, range_inclusion
from opranges.core.shorting import (
    feasible_samples,
    parallel_sum,
    parallel_sum_contraction,
    parallel_sum_limit,
    parallel_sum_variational,
    route_disagreement,
    shorted,
)
from opranges.errors.range_errors import ConfigParse
from opranges.fixtures import load_matrix, load_relation, load_subspace
from opranges.matio import format_matrix
from opranges.tables.cli_table import PipelineName

from .pipeline_models import PipelineResult, ScenarioConfig

Pipeline = Callable[[ScenarioConfig, ToleranceContext, np.random.Generator], PipelineResult]

ROUTE_TOL = 1e-6
SHORT_ROUTE_TOL = 1e-7
IDENTITY_TOL = 1e-8
RECONSTRUCTION_TOL = 1e-9
SCALING_TOL = 1e-6
IDEMPOTENCE_TOL = 1e-7
EULER_SLOPE = (-1.2, -0.8)


def _operand(config: ScenarioConfig, key: str) -> str:
    value = getattr(config, key)
    if value is None:
        raise ConfigParse(f"pipeline {config.pipeline} needs the key {key.upper()}")
    return value


def _psd(config: ScenarioConfig, key: str, ctx: ToleranceContext) -> PsdOperator:
    return make_psd(load_matrix(_operand(config, key)), ctx)


def _relation(config: ScenarioConfig, key: str, ctx: ToleranceContext) -> NonnegRelation:
    return load_relation(_operand(config, key), ctx)


def run_douglas(config: ScenarioConfig, ctx: ToleranceContext, rng: np.random.Generator) -> PipelineResult:
    A, B = load_matrix(_operand(config, "a")), load_matrix(_operand(config, "b"))
    result = douglas_solve(A, B, ctx)
    inclusion = range_inclusion(A, B, ctx)
    scale = max(1.0, float(scipy.linalg.norm(A)) ** 2)
    majorization = loewner_gap(A @ A.conj().T, (1 + ctx.cmp_tol) * result.lam * (B @ B.conj().T))

    failures = []
    if not inclusion.included:
        failures.append("frame test rejects ran A inside ran B although A = BC was solved")
    if abs(inclusion.lam - result.lam) > ctx.cmp_tol * max(1.0, result.lam):
        failures.append(f"majorization constants differ: {inclusion.lam:.6e} vs {result.lam:.6e}")
    if majorization < -ctx.cmp_tol * scale:
        failures.append(f"AA* <= lambda BB* fails by {-majorization:.3e}")
    if not (result.range_in_adjoint and result.kernel_matches):
        failures.append("factor is not the minimal-range solution")
    return PipelineResult(
        pipeline=config.pipeline,
        columns=["rows", "cols", "residual", "lam", "majorization_gap", "range_in_adjoint", "kernel_matches"],
        rows=[[A.shape[0], A.shape[1], result.residual, result.lam, majorization, result.range_in_adjoint, result.kernel_matches]],
        summary=[f"residual: {result.residual:.12e}", f"lambda: {result.lam:.12e}", "factor C:\n" + format_matrix(result.factor).rstrip()],
        failures=failures,
    )


def run_parsum(config: ScenarioConfig, ctx: ToleranceContext, rng: np.random.Generator) -> PipelineResult:
    F, G = _psd(config, "a", ctx), _psd(config, "b", ctx)
    canonical = parallel_sum(F, G, ctx)
    variational = parallel_sum_variational(F, G, ctx=ctx)
    limit = parallel_sum_limit(F, G, ctx=ctx)
    disagreement = route_disagreement(canonical, variational, limit.result)

    _, M = parallel_sum_contraction(F, G)
    idempotence = float(scipy.linalg.norm(M @ M - M))
    shared = intersection_dim(range_basis(sqrt_psd(F)), range_basis(sqrt_psd(G)), ctx)
    root_rank = sqrt_psd(canonical).rank

    failures = []
    if disagreement > ROUTE_TOL * (F.norm + G.norm):
        failures.append(f"routes disagree by {disagreement:.3e}")
    if root_rank != shared:
        failures.append(f"rank (F:G)^(1/2) = {root_rank} but the root ranges share {shared} dimensions")
    vanishes = canonical.rank == 0
    if vanishes != (idempotence <= IDEMPOTENCE_TOL) or vanishes != (shared == 0):
        failures.append("F:G = 0, idempotent M and trivial range intersection disagree")
    return PipelineResult(
        pipeline=config.pipeline,
        columns=["dim", "norm", "rank", "route_disagreement", "limit_increment", "idempotence_defect", "shared_dim"],
        rows=[[F.dim, canonical.norm, canonical.rank, disagreement, limit.last_increment, idempotence, shared]],
        summary=[f"F:G vanishes: {vanishes}"],
        failures=failures,
    )


def run_short(config: ScenarioConfig, ctx: ToleranceContext, rng: np.random.Generator) -> PipelineResult:
    B = _psd(config, "b", ctx)
    K = load_subspace(_operand(config, "k"), ctx)
    report = shorted(B, K, ctx)
    frames_trivial = intersection_dim(K, range_basis(sqrt_psd(B)), ctx) == 0

    gaps = [loewner_gap(Z, report.shorted.entries) for Z in feasible_samples(B, K, rng, config.samples, ctx)]
    maximality = min(gaps, default=0.0)

    failures = []
    if report.route_disagreement > SHORT_ROUTE_TOL * max(1.0, B.norm):
        failures.append(f"shorted routes disagree by {report.route_disagreement:.3e}")
    if maximality < -ctx.cmp_tol * max(1.0, B.norm):
        failures.append(f"a feasible Z exceeds B_K by {-maximality:.3e}")
    if report.vanishes != frames_trivial:
        failures.append("vanishing short and frame intersection test disagree")
    return PipelineResult(
        pipeline=config.pipeline,
        columns=["dim", "dim_k", "norm", "rank", "route_disagreement", "vanishes", "maximality_gap"],
        rows=[[B.dim, K.dim, report.shorted.norm, report.shorted.rank, report.route_disagreement, report.vanishes, maximality]],
        summary=[f"feasible samples: {len(gaps)}", f"K meets ran B^(1/2) trivially: {frames_trivial}"],
        failures=failures,
    )


def run_pxfamily(config: ScenarioConfig, ctx: ToleranceContext, rng: np.random.Generator) -> PipelineResult:
    A, B = _psd(config, "a", ctx), _psd(config, "b", ctx)
    family = projection_family(A, B, config.xs, ctx)
    reference = projection_sample(A, B, 1.0, ctx).projection

    rows, failures = [], []
    for sample in family.samples:
        distance = float(scipy.linalg.norm(sample.projection - reference))
        rows.append([sample.x, distance, sample.projection_defect, sample.reconstruction])
        if sample.reconstruction > RECONSTRUCTION_TOL * max(1.0, A.norm):
            failures.append(f"reconstruction at x={sample.x:g} misses by {sample.reconstruction:.3e}")
        if sample.projection_defect > IDENTITY_TOL:
            failures.append(f"P({sample.x:g}) is not a projection: defect {sample.projection_defect:.3e}")

    summary = []
    xs = sorted(set(config.xs))
    for x, y in zip(xs, xs[1:]):
        link = intertwiner(A, B, x, y, ctx)
        summary.append(f"intertwiner {x:g} -> {y:g}: conjugation {link.conjugation_residual:.3e}, scaling {link.scaling_defect:.3e}")
        if link.conjugation_residual > IDENTITY_TOL or link.scaling_defect > SCALING_TOL:
            failures.append(f"intertwiner law fails between x={x:g} and y={y:g}")
    return PipelineResult(
        pipeline=config.pipeline,
        columns=["x", "distance_to_p1", "projection_defect", "reconstruction"],
        rows=rows,
        summary=summary,
        failures=failures,
    )


def run_chain(config: ScenarioConfig, ctx: ToleranceContext, rng: np.random.Generator) -> PipelineResult:
    A = _psd(config, "a", ctx)
    M = load_subspace(_operand(config, "m"), ctx)
    report = chain(A, M, config.k_max, ctx)
    rows = [
        [step.k, step.norm, "" if step.ratio is None else step.ratio, step.P_k.subspace.dim, step.P_k.exact]
        for step in report.steps
    ]
    return PipelineResult(
        pipeline=config.pipeline,
        columns=["k", "norm", "ratio", "p_dim", "p_exact"],
        rows=rows,
        summary=[f"fixed-point residual: {report.fixed_point_residual:.12e}"],
    )


def run_liftcheck(config: ScenarioConfig, ctx: ToleranceContext, rng: np.random.Generator) -> PipelineResult:
    A = _psd(config, "a", ctx)
    M = load_subspace(_operand(config, "m"), ctx)
    verdict = lifting_criterion(A, M, ctx)
    rows = [[A.dim, M.dim, verdict.included, verdict.factor_norm if verdict.included else ""]]
    summary = [f"ran A12 inside ran A11^(3/4): {verdict.included}"]
    failures = []
    if config.t is not None:
        factors = recover_factors(_psd(config, "t", ctx), M, ctx)
        summary.append(f"recovered factors: block residual {factors.block_residual:.3e}, ||G|| = {factors.G.norm:.6f}")
        if factors.block_residual > ctx.cmp_tol * max(1.0, factors.A.norm):
            failures.append(f"recovered blocks miss A by {factors.block_residual:.3e}")
    return PipelineResult(
        pipeline=config.pipeline,
        columns=["dim", "dim_m", "included", "factor_norm"],
        rows=rows,
        summary=summary,
        failures=failures,
    )


def run_liftsweep(config: ScenarioConfig, ctx: ToleranceContext, rng: np.random.Generator) -> PipelineResult:
    try:
        model = GradedModel(size_schedule=config.ns, a_exponent=config.a_exp, b_exponent=config.b_exp)
    except ValidationError as exc:
        raise ConfigParse(f"invalid graded model: {exc.errors()[0]['msg']}") from exc
    report = truncation_diagnostic(model, ctx)
    fitted = "none" if report.fitted_exponent is None else f"{report.fitted_exponent:.6f}"
    return PipelineResult(
        pipeline=config.pipeline,
        columns=["n", "factor_norm"],
        rows=[[row.n, row.factor_norm] for row in report.rows],
        summary=[
            f"a={model.a_exponent:g} b={model.b_exponent:g} series exponent {model.series_exponent:g}",
            f"fitted exponent: {fitted}",
            f"classification: {report.numeric_class} (exact {report.analytic_class})",
        ],
    )


def run_splitpair(config: ScenarioConfig, ctx: ToleranceContext, rng: np.random.Generator) -> PipelineResult:
    T = _psd(config, "t", ctx)
    M = load_subspace(_operand(config, "m"), ctx)
    report = split_pair(T, M, rng=rng)

    failures = []
    if report.graph_orthogonality > IDENTITY_TOL:
        failures.append(f"form domains are not graph-orthogonal: {report.graph_orthogonality:.3e}")
    if report.form_preservation > IDENTITY_TOL:
        failures.append(f"T1 does not preserve the form of T: {report.form_preservation:.3e}")
    if not report.domains_match:
        failures.append("form domains differ from R^(1/2) M and R^(1/2) M-perp")
    return PipelineResult(
        pipeline=config.pipeline,
        columns=[
            "dim",
            "dim_m",
            "resolvent_sum_residual",
            "domains_match",
            "form_preservation",
            "graph_orthogonality",
            "decomposition_residual",
            "kernel_claim_ok",
        ],
        rows=[
            [
                T.dim,
                M.dim,
                report.resolvent_sum_residual,
                report.domains_match,
                report.form_preservation,
                report.graph_orthogonality,
                report.decomposition_residual,
                report.kernel_claim_ok,
            ]
        ],
        summary=[f"form domain dimensions: {report.rel1.form_domain.dim} + {report.rel2.form_domain.dim}"],
        failures=failures,
    )


def run_euler(config: ScenarioConfig, ctx: ToleranceContext, rng: np.random.Generator) -> PipelineResult:
    rel = _relation(config, "rel1", ctx) if config.rel1 is not None else from_operator(_psd(config, "t", ctx))
    report = euler_sweep(rel, config.z, config.ns)
    failures = []
    if report.slope is not None and not EULER_SLOPE[0] <= report.slope <= EULER_SLOPE[1]:
        failures.append(f"log-log error slope {report.slope:.4f} outside [{EULER_SLOPE[0]}, {EULER_SLOPE[1]}]")
    slope = "none" if report.slope is None else f"{report.slope:.6f}"
    return PipelineResult(
        pipeline=config.pipeline,
        columns=["n", "error"],
        rows=[[row.n, row.error] for row in report.rows],
        summary=[f"z = {config.z}", f"fitted slope: {slope}", f"rate constant: {report.constant:.6e}"],
        failures=failures,
    )


def run_trotter(config: ScenarioConfig, ctx: ToleranceContext, rng: np.random.Generator) -> PipelineResult:
    rel1, rel2 = _relation(config, "rel1", ctx), _relation(config, "rel2", ctx)
    report = trotter_sweep(rel1, rel2, config.t_param, config.ns)
    failures = []
    if not report.distance_monotone:
        failures.append("distance to the form-sum semigroup does not decrease with n")
    return PipelineResult(
        pipeline=config.pipeline,
        columns=["n", "norm", "distance"],
        rows=[[row.n, row.norm, row.distance] for row in report.rows],
        summary=[f"t = {config.t_param:g}", f"form domains meet trivially: {report.domains_meet_trivially}"],
        failures=failures,
    )


def run_divext(config: ScenarioConfig, ctx: ToleranceContext, rng: np.random.Generator) -> PipelineResult:
    L2 = load_matrix(_operand(config, "l2"))
    D = load_subspace(_operand(config, "d"), ctx)
    report = extension_sandwich_check(L2, D, samples=config.samples, rng=rng, ctx=ctx)
    failures = [] if report.holds else ["a sampled extension escapes the Friedrichs-Krein interval"]
    return PipelineResult(
        pipeline=config.pipeline,
        columns=["index", "kind", "lower_gap", "upper_gap", "extension_residual"],
        rows=[[s.index, s.kind, s.lower_gap, s.upper_gap, s.extension_residual] for s in report.samples],
        summary=[
            f"order gap (Friedrichs below Krein in resolvent order): {report.order_gap:.12e}",
            f"domains transversal: {report.transversal}",
        ],
        failures=failures,
    )


def run_prodpair(config: ScenarioConfig, ctx: ToleranceContext, rng: np.random.Generator) -> PipelineResult:
    B = load_matrix(_operand(config, "b"))
    M = load_subspace(_operand(config, "m"), ctx)
    report = product_pair(B, M, ctx)
    scale = max(1.0, float(scipy.linalg.norm(B, 2)) ** 2)

    failures = []
    for piece in report.pieces:
        if piece.krein_residual > IDENTITY_TOL * scale:
            failures.append(f"Krein extension of B_{piece.k} B misses B P B by {piece.krein_residual:.3e}")
        if piece.friedrichs_order_gap < -IDENTITY_TOL:
            failures.append(f"Friedrichs extension of B_{piece.k} B is not above B^2")
    if not report.direct_sum:
        failures.append("form domains do not split C^n")
    if report.graph_orthogonality > IDENTITY_TOL * scale:
        failures.append(f"domains are not B-graph orthogonal: {report.graph_orthogonality:.3e}")
    return PipelineResult(
        pipeline=config.pipeline,
        columns=[
            "k",
            "domain_dim",
            "friedrichs_order_gap",
            "friedrichs_form_residual",
            "krein_residual",
            "krein_below_square",
            "image_spans",
        ],
        rows=[
            [
                piece.k,
                piece.domain.dim,
                piece.friedrichs_order_gap,
                piece.friedrichs_form_residual,
                piece.krein_residual,
                piece.krein_below_square,
                piece.image_spans,
            ]
            for piece in report.pieces
        ],
        summary=[
            f"direct sum: {report.direct_sum}",
            f"graph orthogonality: {report.graph_orthogonality:.3e}",
            f"images span: {report.images_sum_span}",
            f"resolvent sum residual: {report.resolvent_sum_residual:.3e}",
        ],
        failures=failures,
    )


PIPELINES: dict[PipelineName, Pipeline] = {
    PipelineName.DOUGLAS: run_douglas,
    PipelineName.PARSUM: run_parsum,
    PipelineName.SHORT: run_short,
    PipelineName.PXFAMILY: run_pxfamily,
    PipelineName.CHAIN: run_chain,
    PipelineName.LIFTCHECK: run_liftcheck,
    PipelineName.LIFTSWEEP: run_liftsweep,
    PipelineName.SPLITPAIR: run_splitpair,
    PipelineName.EULER: run_euler,
    PipelineName.TROTTER: run_trotter,
    PipelineName.DIVEXT: run_divext,
    PipelineName.PRODPAIR: run_prodpair,
}


def run_pipeline(config: ScenarioConfig, ctx: ToleranceContext, rng: np.random.Generator) -> PipelineResult:
    logger.info("running pipeline {}", config.pipeline)
    result = PIPELINES[config.pipeline](config, ctx, rng)
    if result.failures:
        logger.warning("pipeline {}: {} check(s) failed", config.pipeline, len(result.failures))
    return result
