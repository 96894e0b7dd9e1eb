from __future__ import annotations

from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path

import typer
from loguru import logger

from ..app.app import ScenarioRunner
from ..config.range_config import range_settings
from ..errors.range_errors import OperatorRangeError
from ..fixtures import list_fixtures
from ..logger.logger_setup import setup_logging
from ..pipelines import ScenarioConfig, render_summary
from ..tables.cli_table import ExitCode, PipelineName, exit_code_help

OPERAND = "matrix, subspace or relation file, or fixture:NAME"

app = typer.Typer(help="Operator-range calculus CLI App.\n\n" + exit_code_help(), no_args_is_help=True)
fixtures_app = typer.Typer(help="List or emit the bundled witness fixtures.\n\n" + exit_code_help())
app.add_typer(fixtures_app, name="fixtures")


@contextmanager
def _exit_codes() -> Iterator[None]:
    """Turn package errors into the documented exit codes."""
    try:
        yield
    except OperatorRangeError as exc:
        logger.error("❌ {}: {}", type(exc).__name__, exc)
        raise typer.Exit(code=int(exc.exit_code)) from exc
    except OSError as exc:
        logger.error("❌ I/O error: {}", exc)
        raise typer.Exit(code=int(ExitCode.IO_ERROR)) from exc
    except ValueError as exc:
        logger.error("❌ invalid input: {}", exc)
        raise typer.Exit(code=int(ExitCode.BAD_INPUT)) from exc


def _runner(ctx: typer.Context) -> ScenarioRunner:
    return ctx.obj if isinstance(ctx.obj, ScenarioRunner) else ScenarioRunner()


def _execute(ctx: typer.Context, pipeline: PipelineName, **params: object) -> None:
    with _exit_codes():
        config = ScenarioConfig(pipeline=pipeline, **{key: value for key, value in params.items() if value is not None})
        result = _runner(ctx).run(config)
        typer.echo(render_summary(result), nl=False)


@app.callback()
def main(
    ctx: typer.Context,
    seed: int | None = typer.Option(None, "--seed", min=0, help="64-bit seed for the PCG64 generator"),
    tol_rank: float | None = typer.Option(None, "--tol-rank", help="relative eigenvalue cutoff for numerical rank"),
    tol_cmp: float | None = typer.Option(None, "--tol-cmp", help="relative tolerance for matrix identities"),
    out: Path | None = typer.Option(None, "--out", help="directory for CSV, summaries and emitted fixtures"),
    log_level: str | None = typer.Option(None, "--log-level", help="DEBUG, INFO, WARNING or ERROR"),
):
    setup_logging(log_level)
    with _exit_codes():
        tolerances = range_settings.tolerance_context().with_overrides(rank_rel_tol=tol_rank, cmp_tol=tol_cmp)
        ctx.obj = ScenarioRunner(tolerances, seed, out)


@app.command()
def douglas(
    ctx: typer.Context,
    a: str = typer.Argument(..., help=f"A: {OPERAND}"),
    b: str = typer.Argument(..., help=f"B: {OPERAND}"),
):
    """Solve A = BC with ran C inside ran B*."""
    _execute(ctx, PipelineName.DOUGLAS, a=a, b=b)


@app.command()
def parsum(
    ctx: typer.Context,
    f: str = typer.Argument(..., help=f"F: {OPERAND}"),
    g: str = typer.Argument(..., help=f"G: {OPERAND}"),
):
    """Parallel sum F : G by the contraction, variational and limit routes."""
    _execute(ctx, PipelineName.PARSUM, a=f, b=g)


@app.command()
def short(
    ctx: typer.Context,
    b: str = typer.Argument(..., help=f"B: {OPERAND}"),
    k: str = typer.Argument(..., help=f"K: {OPERAND}"),
    samples: int = typer.Option(100, help="feasible operators sampled for the maximality check"),
):
    """Shorted operator B_K by three routes, with a maximality check."""
    _execute(ctx, PipelineName.SHORT, b=b, k=k, samples=samples)


@app.command()
def pxfamily(
    ctx: typer.Context,
    a: str = typer.Argument(..., help=f"A: {OPERAND}"),
    b: str = typer.Argument(..., help=f"B: {OPERAND}"),
    xs: str = typer.Option("0.25,0.5,1,2,4", help="comma-separated positive x values"),
):
    """Projections P(x) with A = (A + xB)^(1/2) P(x) (A + xB)^(1/2)."""
    _execute(ctx, PipelineName.PXFAMILY, a=a, b=b, xs=xs)


@app.command()
def chain(
    ctx: typer.Context,
    a: str = typer.Argument(..., help=f"A: {OPERAND}"),
    m: str = typer.Argument(..., help=f"M: {OPERAND}"),
    k_max: int = typer.Option(20, "--k-max", help="number of compression steps"),
):
    """Iterated compressions A_k = A_(k-1)^(1/2) P_M A_(k-1)^(1/2)."""
    _execute(ctx, PipelineName.CHAIN, a=a, m=m, k_max=k_max)


@app.command()
def liftcheck(
    ctx: typer.Context,
    a: str = typer.Argument(..., help=f"A: {OPERAND}"),
    m: str = typer.Argument(..., help=f"M: {OPERAND}"),
    t: str | None = typer.Option(None, help=f"T to recover lifting factors from: {OPERAND}"),
):
    """Block criterion ran A12 inside ran A11^(3/4) for a lifting of A."""
    _execute(ctx, PipelineName.LIFTCHECK, a=a, m=m, t=t)


@app.command()
def liftsweep(
    ctx: typer.Context,
    a_exp: float = typer.Option(2.0, "--a-exp", help="A11 = diag(i^-a)"),
    b_exp: float = typer.Option(1.0, "--b-exp", help="A12 = (i^-b)"),
    ns: str = typer.Option("8..256", help="truncation sizes, list or doubling range"),
):
    """Truncation diagnostic of the graded lifting model."""
    _execute(ctx, PipelineName.LIFTSWEEP, a_exp=a_exp, b_exp=b_exp, ns=ns)


@app.command()
def splitpair(
    ctx: typer.Context,
    t: str = typer.Argument(..., help=f"T: {OPERAND}"),
    m: str = typer.Argument(..., help=f"M: {OPERAND}"),
):
    """Split T into relations with resolvents R^(1/2) P R^(1/2), P = P_M and P_M-perp."""
    _execute(ctx, PipelineName.SPLITPAIR, t=t, m=m)


@app.command()
def euler(
    ctx: typer.Context,
    operand: str = typer.Argument(..., help=f"T: {OPERAND}"),
    z: str = typer.Option("1", help="complex time, e.g. 0.7071+0.7071j"),
    ns: str = typer.Option("8..1024", help="step counts, list or doubling range"),
    relation: bool = typer.Option(False, "--relation", help="the operand is a relation"),
):
    """Euler approximation (I + zT/n)^(-n) against exp(-zT)."""
    if relation:
        _execute(ctx, PipelineName.EULER, rel1=operand, z=z, ns=ns)
    else:
        _execute(ctx, PipelineName.EULER, t=operand, z=z, ns=ns)


@app.command()
def trotter(
    ctx: typer.Context,
    rel1: str = typer.Argument(..., help=f"first relation: {OPERAND}"),
    rel2: str = typer.Argument(..., help=f"second relation: {OPERAND}"),
    t: float = typer.Option(1.0, "--t-param", help="time parameter"),
    ns: str = typer.Option("2..256", help="product lengths, list or doubling range"),
):
    """Trotter products (exp(-tT1/n) exp(-tT2/n))^n against the form-sum semigroup."""
    _execute(ctx, PipelineName.TROTTER, rel1=rel1, rel2=rel2, t_param=t, ns=ns)


@app.command()
def divext(
    ctx: typer.Context,
    l2: str = typer.Argument(..., help=f"L2: {OPERAND}"),
    d: str = typer.Argument(..., help=f"D: {OPERAND}"),
    samples: int = typer.Option(100, help="sampled extensions"),
):
    """Friedrichs and Krein extensions of L2* L2 on D and the sandwich between them."""
    _execute(ctx, PipelineName.DIVEXT, l2=l2, d=d, samples=samples)


@app.command()
def prodpair(
    ctx: typer.Context,
    b: str = typer.Argument(..., help=f"invertible Hermitian B: {OPERAND}"),
    m: str = typer.Argument(..., help=f"M: {OPERAND}"),
):
    """Restrictions of B to the form domains of the splitting of B^2."""
    _execute(ctx, PipelineName.PRODPAIR, b=b, m=m)


@app.command()
def run(
    ctx: typer.Context,
    config: Path = typer.Argument(..., help="scenario file of KEY=VALUE lines"),
):
    """Run the pipeline named by a scenario file."""
    with _exit_codes():
        result = _runner(ctx).run_file(config)
        typer.echo(render_summary(result), nl=False)


@app.command()
def selftest(ctx: typer.Context):
    """Run the acceptance suite; exit 0 iff every criterion passes."""
    with _exit_codes():
        outcomes = _runner(ctx).selftest()
    for outcome in outcomes:
        status = "PASS" if outcome.passed else "FAIL"
        line = f"{status}  {outcome.number:>2}  {outcome.title}"
        typer.echo(line if outcome.passed else f"{line}: {outcome.detail}")
    if not all(outcome.passed for outcome in outcomes):
        raise typer.Exit(code=int(ExitCode.SELFTEST_FAILED))


@fixtures_app.command("list")
def list_command():
    """List the bundled fixtures."""
    for fixture in list_fixtures():
        typer.echo(f"{fixture.name:<20} {fixture.kind:<9} {fixture.description}")


@fixtures_app.command("emit")
def emit_command(
    ctx: typer.Context,
    name: str = typer.Argument(..., help="fixture name, see 'fixtures list'"),
):
    """Write a fixture file into the output directory."""
    with _exit_codes():
        path = _runner(ctx).emit(name)
    typer.echo(str(path))
