"""Command-line interface for SpinRadar."""

import functools
import logging
from typing import List, Optional, Tuple

import click
from dotenv import dotenv_values
from pydantic import ValidationError
from tabulate import tabulate

from entanglement_engine.config import get_settings
from entanglement_engine.errors import InputError, NumericalConsistencyError, SpinRadarError
from entanglement_engine.logging_config import setup_logging
from entanglement_engine.models import ChainSpec, ModelKind, Observable, Parity, ScanSpec
from entanglement_engine.scans import (
    FIGURES,
    OutputFormat,
    ScanRunner,
    emit,
    parse_grid,
    reproduce,
    to_frame,
)
from entanglement_engine.solvers import (
    build_rdm,
    ed_concurrence,
    ed_ground_state,
    ed_pair_correlators,
    homogeneous_residual,
    magnetization,
    pair_correlators,
    solve_chain,
    wootters,
)

logger = logging.getLogger(__name__)

# Config file keys that differ from the click parameter names
CONFIG_ALIASES = {"lambda": "lam", "format": "fmt"}
REPEATABLE = {"pair", "observable"}

OBSERVABLE_CHOICES = [o.value for o in Observable] + ["correlators"]
FORMAT_CHOICES = [f.value for f in OutputFormat]


class RadarGroup(click.Group):
    """Click group that reports usage errors with exit code 1."""

    def parse_args(self, ctx, args):
        try:
            return super().parse_args(ctx, args)
        except click.UsageError as exc:
            exc.exit_code = 1
            raise

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as exc:
            exc.exit_code = 1
            raise


class PairType(click.ParamType):
    """Site pair written as ``i,j``."""

    name = "pair"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        try:
            i, j = (int(part) for part in str(value).split(","))
        except ValueError:
            self.fail(f"{value!r} is not of the form i,j", param, ctx)
        if not 1 <= i < j:
            self.fail(f"pair {value!r} needs 1 <= i < j", param, ctx)
        return (i, j)


def parse_kappa(text: str) -> Tuple[float, bool]:
    """``v`` or ``<coef>xLAMBDA`` into (value, relative)."""
    raw = str(text).strip()
    if raw.lower().endswith("xlambda"):
        coef = raw[: -len("xlambda")]
        try:
            return (float(coef) if coef else 1.0), True
        except ValueError as exc:
            raise InputError(f"cannot parse kappa {text!r}") from exc
    try:
        return float(raw), False
    except ValueError as exc:
        raise InputError(f"kappa must be a number or '<coef>xLAMBDA', got {text!r}") from exc


def _grid_callback(ctx, param, value):
    if value is None:
        return None
    try:
        return parse_grid(value)
    except InputError as exc:
        raise click.BadParameter(str(exc), ctx=ctx, param=param)


def _kappa_callback(ctx, param, value):
    try:
        return parse_kappa(value)
    except InputError as exc:
        raise click.BadParameter(str(exc), ctx=ctx, param=param)


def _load_config(ctx, param, value):
    """Turn a ``key = value`` file into per-command click defaults."""
    if not value:
        return value
    mapped = {}
    for key, raw in dotenv_values(value).items():
        if raw is None:
            continue
        name = key.strip().lower().replace("-", "_")
        name = CONFIG_ALIASES.get(name, name)
        mapped[name] = raw.split() if name in REPEATABLE else raw
    logger.debug(f"Loaded {len(mapped)} defaults from {value}")
    ctx.default_map = {command: dict(mapped) for command in cli.commands}
    return value


def handle_errors(func):
    """Report SpinRadar errors on stderr and exit with their code."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ValidationError as exc:
            error: SpinRadarError = InputError(_validation_message(exc))
        except SpinRadarError as exc:
            error = exc
        click.echo(f"Error: {error}", err=True)
        click.get_current_context().exit(error.exit_code)
    return wrapper


def _validation_message(exc: ValidationError) -> str:
    return "; ".join(
        f"{'.'.join(str(p) for p in err['loc']) or 'input'}: {err['msg']}" for err in exc.errors()
    )


def _observables(names, default: Observable) -> List[Observable]:
    if not names:
        return [default]
    resolved: List[Observable] = []
    for name in names:
        for observable in Observable.expand(name):
            if observable not in resolved:
                resolved.append(observable)
    return resolved


def _output_series(series, fmt: str, out: Optional[str]) -> None:
    """Write to ``out`` or print a table on stdout."""
    if out:
        path = emit(series, fmt, out)
        click.echo(f"✓ Wrote {len(series.parameter)} points to {path}")
    else:
        frame = to_frame(series)
        click.echo(tabulate(frame.values.tolist(), headers=list(frame.columns),
                            tablefmt='simple', floatfmt='.10g'))
    failed = len(series.metadata.errors)
    if failed:
        click.echo(f"⚠️  {failed} point(s) failed; see metadata errors", err=True)


@click.group(cls=RadarGroup)
@click.option('--verbose', '-v', is_flag=True, help='Enable verbose logging')
@click.option('--config', type=click.Path(exists=True, dir_okay=False),
              callback=_load_config, is_eager=True, expose_value=False,
              help='key = value file with default flag values')
def cli(verbose):
    """SpinRadar - boundary entanglement of Ising chains and the two-level system."""
    setup_logging("DEBUG" if verbose else None)


# ============================================================================
# Chain Commands
# ============================================================================

@cli.command('chain-point')
@click.option('--n', type=int, required=True, help='Number of sites')
@click.option('--lambda', 'lam', type=float, required=True, help='Exchange coupling')
@click.option('--kappa', default='0', callback=_kappa_callback,
              help='Boundary bond: value or <coef>xLAMBDA')
@click.option('--pair', type=PairType(), multiple=True, help='Site pair i,j (repeatable)')
@handle_errors
def chain_point(n, lam, kappa, pair):
    """Correlators, density matrix and concurrence at one lambda."""
    kappa_value, relative = kappa
    spec = ChainSpec(n_sites=n, lam=lam, kappa=kappa_value * lam if relative else kappa_value)
    modes, cm, energy = solve_chain(spec)

    click.echo(f"Chain N={spec.n_sites}, lambda={spec.lam:g}, kappa={spec.kappa:g}")
    click.echo(f"  Ground energy: {energy:.12g}")
    click.echo(f"  Zero modes: {modes.zero_modes}")
    click.echo(f"  <sigma^z_1>: {magnetization(cm, 1):.12g}")

    correlator_rows, concurrence_rows = [], []
    for i, j in pair or [(1, 2)]:
        pc = pair_correlators(cm, i, j)
        rdm = build_rdm(pc)
        result = wootters(rdm)
        correlator_rows.append([f"{i},{j}", pc.xx, pc.yy, pc.zz, pc.zi, pc.zj])
        concurrence_rows.append([
            f"{i},{j}", rdm.rho1, rdm.rho2, rdm.rho3, rdm.rho4, rdm.rho_plus, rdm.rho_minus,
            result.c, result.c_star, result.total_order, homogeneous_residual(pc, result),
            result.branch.value,
        ])

    click.echo("\nCorrelators")
    click.echo(tabulate(correlator_rows, headers=['Pair', 'xx', 'yy', 'zz', 'zi', 'zj'],
                        tablefmt='simple', floatfmt='.10g'))
    click.echo("\nConcurrence")
    click.echo(tabulate(
        concurrence_rows,
        headers=['Pair', 'rho1', 'rho2', 'rho3', 'rho4', 'rho+', 'rho-',
                 'C', 'C*', 'O', '(O-1)/2-C*', 'Branch'],
        tablefmt='simple', floatfmt='.10g',
    ))


@cli.command('chain-scan')
@click.option('--n', type=int, required=True, help='Number of sites')
@click.option('--lambda', 'lam', callback=_grid_callback, help='Grid: v or a:b:steps')
@click.option('--kappa', default='0', callback=_kappa_callback,
              help='Boundary bond: value or <coef>xLAMBDA')
@click.option('--pair', type=PairType(), multiple=True, help='Site pair i,j (repeatable)')
@click.option('--observable', type=click.Choice(OBSERVABLE_CHOICES), multiple=True,
              help='Observable to record (repeatable)')
@click.option('--derivative', is_flag=True, help='Add d/dlambda columns')
@click.option('--format', 'fmt', type=click.Choice(FORMAT_CHOICES), default='csv')
@click.option('--out', type=click.Path(dir_okay=False), help='Output file')
@click.option('--workers', type=int, help='Worker processes')
@click.option('--seedless', is_flag=True, help='Fail unless the scan used no random numbers')
@handle_errors
def chain_scan(n, lam, kappa, pair, observable, derivative, fmt, out, workers, seedless):
    """Sweep lambda over a chain."""
    kappa_value, relative = kappa
    grid = lam if lam is not None else parse_grid(get_settings().default_lambda_grid)
    spec = ScanSpec(
        model=ModelKind.CHAIN,
        grid=grid,
        n_sites=n,
        kappa=kappa_value,
        kappa_relative=relative,
        pairs=list(pair) or [(1, 2)],
        outputs=_observables(observable, Observable.C),
        derivative=derivative,
    )
    series = ScanRunner(workers=workers).run(spec)
    if seedless and series.metadata.rng != "none":
        raise NumericalConsistencyError(
            f"scan used a random number generator ({series.metadata.rng})", quantity="rng"
        )
    _output_series(series, fmt, out)


@cli.command('ed-check')
@click.option('--n', type=int, required=True, help='Number of sites')
@click.option('--lambda', 'lam', type=float, required=True, help='Exchange coupling')
@click.option('--kappa', default='0', callback=_kappa_callback,
              help='Boundary bond: value or <coef>xLAMBDA')
@click.option('--pair', type=PairType(), multiple=True, help='Site pair i,j (repeatable)')
@click.option('--tolerance', type=float, default=1e-8, help='Allowed absolute deviation')
@handle_errors
def ed_check(n, lam, kappa, pair, tolerance):
    """Compare the free-fermion solution with exact diagonalization."""
    kappa_value, relative = kappa
    spec = ChainSpec(n_sites=n, lam=lam, kappa=kappa_value * lam if relative else kappa_value)
    _, cm, energy = solve_chain(spec)
    state = ed_ground_state(spec, Parity.EVEN)

    rows = [["energy", "", energy, state.energy]]
    for i, j in pair or [(1, 2)]:
        ff = pair_correlators(cm, i, j)
        ex = ed_pair_correlators(state, i, j)
        ff_result = wootters(build_rdm(ff))
        ex_result = ed_concurrence(state, i, j)
        label = f"{i},{j}"
        for name in ("xx", "yy", "zz", "zi", "zj"):
            rows.append([name, label, getattr(ff, name), getattr(ex, name)])
        rows.append(["C", label, ff_result.c, ex_result.c])
        rows.append(["C*", label, ff_result.c_star, ex_result.c_star])

    for row in rows:
        row.append(abs(row[2] - row[3]))
    worst = max(row[4] for row in rows)

    click.echo(tabulate(rows, headers=['Quantity', 'Pair', 'Free fermion', 'Exact', 'Deviation'],
                        tablefmt='simple', floatfmt='.12g'))
    click.echo(f"\nMax deviation: {worst:.3e}")
    if state.degenerate:
        click.echo("⚠️  Parity sectors are degenerate at this point", err=True)

    if spec.is_open and worst > tolerance:
        click.echo(f"✗ Deviation exceeds {tolerance:g}", err=True)
        click.get_current_context().exit(2)
    if not spec.is_open:
        click.echo("Boundary bond present: deviations are informational")
    else:
        click.echo("✓ Free-fermion solution matches exact diagonalization")


# ============================================================================
# Two-Level System Commands
# ============================================================================

@cli.command('tls-scan')
@click.option('--delta', type=float, required=True, help='Tunneling amplitude')
@click.option('--omega-c', type=float, default=1.0, help='Bath cutoff')
@click.option('--alpha', callback=_grid_callback, help='Grid: v or a:b:steps')
@click.option('--c0', type=float, default=1.0, help='Energy prefactor')
@click.option('--c1', type=float, default=1.0, help='Crossover prefactor')
@click.option('--c2', type=float, default=1.0, help='Crossover exponent constant')
@click.option('--kt-overlay', is_flag=True, help='Use the crossover form just below alpha = 1')
@click.option('--kt-window', type=float, default=0.05, help='Width of the crossover window')
@click.option('--observable', type=click.Choice(OBSERVABLE_CHOICES), multiple=True,
              help='Observable to record (repeatable)')
@click.option('--derivative', is_flag=True, help='Add d/dalpha columns')
@click.option('--format', 'fmt', type=click.Choice(FORMAT_CHOICES), default='csv')
@click.option('--out', type=click.Path(dir_okay=False), help='Output file')
@click.option('--workers', type=int, help='Worker processes')
@handle_errors
def tls_scan(delta, omega_c, alpha, c0, c1, c2, kt_overlay, kt_window, observable,
             derivative, fmt, out, workers):
    """Sweep the dissipation strength alpha of the two-level system."""
    grid = alpha if alpha is not None else parse_grid(get_settings().default_alpha_grid)
    spec = ScanSpec(
        model=ModelKind.TLS,
        grid=grid,
        delta=delta,
        omega_c=omega_c,
        c0=c0,
        c1=c1,
        c2=c2,
        kt_overlay=kt_overlay,
        kt_window=kt_window,
        outputs=_observables(observable, Observable.CONCURRENCE),
        derivative=derivative,
    )
    series = ScanRunner(workers=workers).run(spec)
    _output_series(series, fmt, out)


# ============================================================================
# Reproduction Commands
# ============================================================================

@cli.command('repro')
@click.argument('name', required=False)
@click.option('--out', type=click.Path(file_okay=False), default='repro', help='Output directory')
@click.option('--format', 'fmt', type=click.Choice(FORMAT_CHOICES), default='json')
@click.option('--workers', type=int, help='Worker processes')
@click.option('--list', 'list_only', is_flag=True, help='List available presets')
@handle_errors
def repro(name, out, fmt, workers, list_only):
    """Regenerate the data behind a named figure."""
    if list_only or not name:
        data = [[key, len(factory())] for key, factory in FIGURES.items()]
        click.echo(tabulate(data, headers=['Preset', 'Scans'], tablefmt='simple'))
        return

    click.echo(f"Reproducing {name}...")
    paths = reproduce(name, out, fmt, runner=ScanRunner(workers=workers))
    for path in paths:
        click.echo(f"  {path}")
    click.echo(f"✓ {len(paths)} file(s) written to {out}")


def main():
    """Entry point for CLI."""
    cli()


if __name__ == '__main__':
    main()
