"""
Command-line entry point.
"""

import logging
import sys
from pathlib import Path
from typing import List, Optional

import click

from .. import __version__
from ..config.settings import LogConfig, get_default_settings
from ..error_handler import EXIT_OK, EXIT_USAGE_ERROR, handle_simulation_error
from ..exceptions import SimulationError
from ..graph.gossip import build_metropolis_lazy, build_ring, make_psd
from ..graph.spectral import spectral_constants, spectral_gap, verify_lca
from ..harness.config import load_run_config, load_sweep_config
from ..harness.experiments import fit_scaling_exponent, reproduce_fig1, sweep_scaling
from ..harness.output import emit_csv, emit_metadata, metadata_path
from ..harness.runner import run, sample_chords
from ..rng import rng_fingerprint
from ..utils.storage import read_gossip_matrix
from .plot import X_AXES, plot

logger = logging.getLogger(__name__)

PROG_NAME = "ogt-sim"


class SimulatorGroup(click.Group):
    """Group that turns simulator and I/O errors into exit code 1."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except (SimulationError, OSError) as e:
            code = handle_simulation_error(e, {"command": ctx.invoked_subcommand})
            click.echo(f"Error: {e}", err=True)
            ctx.exit(code)


def _print_version(ctx: click.Context, param: click.Parameter, value: bool):
    if not value or ctx.resilient_parsing:
        return
    click.echo(f"{PROG_NAME} {__version__}")
    click.echo(f"rng fingerprint {rng_fingerprint()}")
    ctx.exit()


@click.group(cls=SimulatorGroup, context_settings={"show_default": True, "help_option_names": ["-h", "--help"]})
@click.option("--version", is_flag=True, expose_value=False, is_eager=True, callback=_print_version,
              help="Print the version and the RNG fingerprint.")
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]),
              default=None, help="Override OGT_LOG_LEVEL.")
def cli(log_level: Optional[str]):
    """Decentralized gradient-tracking simulator."""
    settings = get_default_settings()
    logging.basicConfig(level=getattr(logging, log_level or settings.log_level), format=LogConfig.FORMAT)


@cli.command("run")
@click.argument("config_path")
@click.option("--out", "out_csv", default=None, help="CSV path (default: OGT_OUTPUT_DIR/<algorithm>.csv).")
def run_command(config_path: str, out_csv: Optional[str]):
    """Run one experiment from a JSON config."""
    config = load_run_config(config_path)
    settings = get_default_settings()
    result = run(config, settings)
    csv_path = Path(out_csv) if out_csv else settings.get_output_path() / f"{config.algorithm.value}.csv"
    emit_csv(result, csv_path)
    emit_metadata(result, metadata_path(csv_path))

    final = result.final_record
    click.echo(f"termination {result.termination}")
    click.echo(f"iterations  {final.k}")
    click.echo(f"loss_gap    {final.loss_gap:.6e}")
    click.echo(f"grad_evals  {final.grad_evals}")
    click.echo(f"csv         {csv_path}")


@cli.command("spectral")
@click.option("--ring", "ring_n", type=int, default=None, help="Lazy n-cycle with n agents.")
@click.option("--metropolis", "metropolis_n", type=int, default=None, help="n-cycle plus chords, Metropolis weights.")
@click.option("--chords", type=int, default=50, help="Random chords for --metropolis.")
@click.option("--graph-seed", type=int, default=0, help="Chord sampling seed.")
@click.option("--file", "file_path", default=None, help="Gossip matrix file.")
@click.option("--edges", "edges_path", default=None, help="Edge list for --file.")
@click.option("--psd", is_flag=True, default=False, help="Use (I + W)/2.")
@click.option("--method", type=click.Choice(["eigh", "jacobi"]), default="eigh", help="Eigenvalue method.")
def spectral_command(ring_n: Optional[int], metropolis_n: Optional[int], chords: int, graph_seed: int,
                     file_path: Optional[str], edges_path: Optional[str], psd: bool, method: str):
    """Print δ, θ, η_w, ρ_w and δ̃ of a gossip matrix."""
    sources = [s for s in (ring_n, metropolis_n, file_path) if s is not None]
    if len(sources) != 1:
        raise click.UsageError("Give exactly one of --ring, --metropolis, --file")
    if ring_n is not None:
        W = build_ring(ring_n)
    elif metropolis_n is not None:
        W = build_metropolis_lazy(metropolis_n, sample_chords(metropolis_n, chords, graph_seed))
    else:
        W = read_gossip_matrix(file_path, edges_path)
    if psd:
        W = make_psd(W)

    constants = spectral_constants(spectral_gap(W, method=method))
    click.echo(f"n           {W.n}")
    click.echo(f"delta       {constants.delta:.10g}")
    click.echo(f"theta       {constants.theta:.10g}")
    click.echo(f"eta_w       {constants.eta_w:.10g}")
    click.echo(f"rho_w       {constants.rho_w:.10g}")
    click.echo(f"delta_tilde {constants.delta_tilde:.10g}")


@cli.command("verify-lca")
@click.option("--delta", type=float, required=True, help="Spectral gap in (0, 1].")
@click.option("--eta-tilde", type=float, default=None, help="Momentum weight (default (1+θ)/2).")
@click.option("--kmax", type=int, default=2000, help="Largest polynomial index.")
@click.option("--grid", type=int, default=10001, help="Grid points on [0, 1−δ].")
@click.pass_context
def verify_lca_command(ctx: click.Context, delta: float, eta_tilde: Optional[float], kmax: int, grid: int):
    """Check the loopless Chebyshev bound T_k(x)²/η̃ᵏ <= 7."""
    report = verify_lca(delta, eta_tilde, kmax, grid)
    click.echo(f"max_ratio {report.max_ratio:.10g}")
    click.echo(f"worst_k   {report.worst_k}")
    click.echo(f"bound     {report.bound:g}")
    click.echo("PASS" if report.passed else "FAIL")
    if not report.passed:
        ctx.exit(1)


@cli.command("sweep")
@click.argument("config_path")
def sweep_command(config_path: str):
    """Iterations to target on rings of increasing size."""
    sweep = load_sweep_config(config_path)
    rows = sweep_scaling(sweep, get_default_settings())
    click.echo("n,delta,delta_tilde,iters_to_target")
    for row in rows:
        iters = "" if row.iters_to_target is None else str(row.iters_to_target)
        click.echo(f"{row.n},{row.delta:.10g},{row.delta_tilde:.10g},{iters}")
    if sum(1 for row in rows if row.iters_to_target) >= 2:
        click.echo(f"exponent {fit_scaling_exponent(rows):.4f}")


@cli.command("fig1")
@click.argument("dataset_path", required=False)
@click.option("--desk", is_flag=True, default=False, help="Synthetic 50-agent problem instead of the dataset.")
@click.option("--out-dir", default=None, help="Output directory (default: OGT_OUTPUT_DIR).")
@click.option("--max-iters", type=int, default=20000, help="Iteration cap per run.")
def fig1_command(dataset_path: Optional[str], desk: bool, out_dir: Optional[str], max_iters: int):
    """Compare GT, Acc-GT, SS-GT and OGT on a ring and a chorded ring."""
    if not desk and dataset_path is None:
        raise click.UsageError("DATASET is required unless --desk is given")
    settings = get_default_settings()
    target_dir = Path(out_dir) if out_dir else settings.get_output_path()
    results = reproduce_fig1(dataset_path, desk, target_dir, max_iters, settings)
    click.echo("network,algorithm,termination,iterations,grad_evals,loss_gap")
    for (graph_id, algorithm), result in results.items():
        final = result.final_record
        click.echo(f"{graph_id},{algorithm},{result.termination},{final.k},{final.grad_evals},{final.loss_gap:.6e}")


@cli.command("plot")
@click.argument("csv_paths", nargs=-1, required=True)
@click.option("--out", "out_svg", required=True, help="Output SVG path.")
@click.option("--x", "x_axis", type=click.Choice(sorted(X_AXES)), default="rounds", help="Horizontal axis.")
def plot_command(csv_paths: List[str], out_svg: str, x_axis: str):
    """Render CSV results as a static SVG."""
    target = plot(csv_paths, out_svg, x_axis)
    click.echo(f"svg {target}")


def main(argv: Optional[List[str]] = None) -> int:
    """Run the CLI and return the exit code (0 ok, 1 domain error, 2 usage error)."""
    try:
        rv = cli.main(args=argv, prog_name=PROG_NAME, standalone_mode=False)
    except click.UsageError as e:
        e.show()
        return EXIT_USAGE_ERROR
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
