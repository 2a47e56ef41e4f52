"""
Main CLI interface for skewsq.

This module defines the command-line interface using the Click framework:
approx, simulate, estimate, compare, and bounds subcommands.
"""

import logging
from typing import Any, Callable, Optional, Tuple

import click

from skewsq import __version__
from skewsq.core.errors import SkewSqError
from skewsq.core.models import (
    DEFAULT_OMEGA_M,
    DEFAULT_SAMPLE_RATE,
    DEFAULT_AXIS,
    ProfileKind,
    RunConfig,
)

OUTPUT_DIR_ENVVAR = "SKEWSQ_OUTPUT_DIR"
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


def configure_logging(verbose: int, quiet: bool) -> None:
    """Route the ``skewsq`` logger to stderr at the requested verbosity."""
    if quiet:
        level = logging.ERROR
    elif verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logger = logging.getLogger("skewsq")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = logging.StreamHandler(click.get_text_stream("stderr"))
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False


def _finish(ctx: click.Context, code: int) -> None:
    if code:
        ctx.exit(code)


POSITIVE = click.FloatRange(min=0, min_open=True)


def run_config_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """Attach the simulation options shared by simulate and compare."""
    options = [
        click.option(
            "-p",
            "--profile",
            type=click.Choice([k.value for k in ProfileKind], case_sensitive=False),
            default=ProfileKind.PUNCTUATED.value,
            show_default=True,
            help="Rotation-angle profile",
        ),
        click.option(
            "--omega-m",
            type=POSITIVE,
            default=DEFAULT_OMEGA_M,
            show_default=True,
            help="Peak rotation rate",
        ),
        click.option(
            "--tau1",
            type=POSITIVE,
            help="Profile period (default: 5.81, or 11.62 for oscillatory)",
        ),
        click.option(
            "--axis",
            type=(float, float, float),
            default=DEFAULT_AXIS,
            show_default=True,
            help="Rotation axis (normalized before use)",
        ),
        click.option(
            "-T",
            "--duration",
            type=POSITIVE,
            help="Experiment duration (default: three periods)",
        ),
        click.option(
            "-r",
            "--rate",
            "sample_rate",
            type=POSITIVE,
            default=DEFAULT_SAMPLE_RATE,
            show_default=True,
            help="Samples per unit time",
        ),
        click.option(
            "-s",
            "--sigma",
            "noise_sigma",
            type=click.FloatRange(min=0),
            default=0.0,
            show_default=True,
            help="Std of the Gaussian noise added to every measurement entry",
        ),
        click.option("--seed", type=int, default=0, show_default=True, help="Noise seed"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _build_config(ctx: click.Context, **kwargs: Any) -> RunConfig:
    try:
        return RunConfig(
            profile_kind=ProfileKind.from_string(kwargs["profile"]),
            omega_m=kwargs["omega_m"],
            tau1=kwargs["tau1"],
            axis=tuple(kwargs["axis"]),
            duration=kwargs["duration"],
            sample_rate=kwargs["sample_rate"],
            noise_sigma=kwargs["noise_sigma"],
            seed=kwargs["seed"],
        )
    except SkewSqError as e:
        # only reachable through flag values, e.g. a zero axis
        raise click.UsageError(str(e), ctx) from e


output_dir_option = click.option(
    "--output-dir",
    type=click.Path(file_okay=False),
    envvar=OUTPUT_DIR_ENVVAR,
    show_envvar=True,
    help="Directory for relative output paths",
)


@click.group()
@click.version_option(version=__version__, prog_name="skewsq")
@click.option("-v", "--verbose", count=True, help="Log progress (-vv for debug detail)")
@click.option("-q", "--quiet", is_flag=True, help="Only log errors")
@click.help_option("-h", "--help")
def cli(verbose: int, quiet: bool) -> None:
    """
    Skewsq: best skew-square approximation and accelerometer-only
    angular velocity estimation.

    Approximate matrices by squares of skew-symmetric matrices, simulate
    rotation experiments, and compare the square-root estimator with
    integration of the angular acceleration.

    Use 'skewsq COMMAND --help' for detailed information about each command.
    """
    configure_logging(verbose, quiet)


@cli.command(epilog="""Examples:

  skewsq approx matrix.csv
    → Print U*, D*, the pair means and the residual

  skewsq approx matrix.csv -o ustar.csv --check
    → Write U* and verify it has a skew square root

  skewsq approx matrix.csv --json
    → Machine-readable result
""")
@click.argument("matrix_file", type=click.Path(exists=True, dir_okay=False, readable=True))
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Write U* as matrix CSV")
@click.option("-j", "--json", "output_json", is_flag=True, help="Output results in JSON format")
@click.option("-c", "--csv", "output_csv", is_flag=True, help="Print U* as matrix CSV")
@click.option("-k", "--check", is_flag=True, help="Verify membership and print the skew root")
@click.option("--color", is_flag=True, help="Colorize text output")
@click.help_option("-h", "--help")
@click.pass_context
def approx(
    ctx: click.Context,
    matrix_file: str,
    output: Optional[str],
    output_json: bool,
    output_csv: bool,
    check: bool,
    color: bool,
) -> None:
    """
    Approximate a square matrix by the square of a skew-symmetric matrix.

    Reads an n x n matrix CSV (no header) and reports the best Frobenius-norm
    approximant U*.
    """
    from skewsq.commands.approx import ApproxCommand

    command = ApproxCommand()
    _finish(
        ctx,
        command.run(
            matrix_file=matrix_file,
            output=output,
            output_json=output_json,
            output_csv=output_csv,
            check=check,
            color=color,
        ),
    )


@cli.command(epilog="""Examples:

  skewsq simulate -o series.csv
    → Noiseless punctuated trial with the reference parameters

  skewsq simulate -p oscillatory -s 0.5 --seed 7 -o osc.csv.gz
    → Noisy oscillatory trial, gzip-compressed
""")
@run_config_options
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Series file (default: stdout)")
@output_dir_option
@click.help_option("-h", "--help")
@click.pass_context
def simulate(ctx: click.Context, output: Optional[str], output_dir: Optional[str], **kwargs: Any) -> None:
    """
    Simulate measurement matrices for a rotation experiment.

    Writes one row per instant: tau, the nine entries of P~, and the true
    body angular velocity.
    """
    from skewsq.commands.simulate import SimulateCommand

    config = _build_config(ctx, **kwargs)
    command = SimulateCommand()
    _finish(ctx, command.run(config=config, output=output, output_dir=output_dir))


@cli.command(epilog="""Examples:

  skewsq estimate series.csv -o est.csv
    → Square-root estimate, scored against the truth columns

  skewsq estimate series.csv -m ao --w0 0 0 1 -o ao.csv
    → Integration baseline from an explicit initial angular velocity
""")
@click.argument("series_file", type=click.Path(exists=True, dir_okay=False, readable=True))
@click.option("--w0", type=(float, float, float), help="Angular velocity at the first instant")
@click.option(
    "-m",
    "--method",
    type=click.Choice(["sqrt_ao", "ao", "ao_integration", "plain_sqrt_ao"], case_sensitive=False),
    default="sqrt_ao",
    show_default=True,
    help="Estimator",
)
@click.option(
    "--sign-reference",
    type=click.Choice(["propagated", "previous"], case_sensitive=False),
    default="propagated",
    show_default=True,
    help="Reference the root sign is matched against",
)
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Estimate file (default: stdout)")
@output_dir_option
@click.option("-j", "--json", "output_json", is_flag=True, help="Print the score summary as JSON (stderr when the CSV goes to stdout)")
@click.option("--color", is_flag=True, help="Colorize text output")
@click.help_option("-h", "--help")
@click.pass_context
def estimate(
    ctx: click.Context,
    series_file: str,
    w0: Optional[Tuple[float, float, float]],
    method: str,
    sign_reference: str,
    output: Optional[str],
    output_dir: Optional[str],
    output_json: bool,
    color: bool,
) -> None:
    """
    Estimate body angular velocity from a measurement series.

    The initial angular velocity fixes the sign of the square root; it is
    read from the truth columns when --w0 is not given.
    """
    from skewsq.commands.estimate import EstimateCommand

    command = EstimateCommand()
    _finish(
        ctx,
        command.run(
            series_file=series_file,
            w0=w0,
            method=method,
            sign_reference=sign_reference,
            output=output,
            output_dir=output_dir,
            output_json=output_json,
            color=color,
        ),
    )


@cli.command(epilog="""Examples:

  skewsq compare
    → Noiseless punctuated trial; writes compare_series.csv and friends

  skewsq compare -p constant -s 2 --seed 3 --stem const
    → Noisy constant-rate trial

  SKEWSQ_OUTPUT_DIR=results skewsq compare --plain --json
    → Include the unprojected estimator, JSON summary
""")
@run_config_options
@click.option("--stem", default="compare", show_default=True, help="Output file prefix")
@output_dir_option
@click.option(
    "--sign-reference",
    type=click.Choice(["propagated", "previous"], case_sensitive=False),
    default="propagated",
    show_default=True,
    help="Reference the root sign is matched against",
)
@click.option("--plain", "include_plain", is_flag=True, help="Also run the unprojected square-root estimator")
@click.option("-j", "--json", "output_json", is_flag=True, help="Print the summary as JSON")
@click.option("--color", is_flag=True, help="Colorize text output")
@click.help_option("-h", "--help")
@click.pass_context
def compare(
    ctx: click.Context,
    stem: str,
    output_dir: Optional[str],
    sign_reference: str,
    include_plain: bool,
    output_json: bool,
    color: bool,
    **kwargs: Any,
) -> None:
    """
    Compare the square-root estimator with the integration baseline.

    Simulates a trial, runs both estimators from the true initial angular
    velocity, and writes per-component series plus an error summary.
    """
    from skewsq.commands.compare import CompareCommand

    config = _build_config(ctx, **kwargs)
    command = CompareCommand()
    _finish(
        ctx,
        command.run(
            config=config,
            stem=stem,
            output_dir=output_dir,
            sign_reference=sign_reference,
            include_plain=include_plain,
            output_json=output_json,
            color=color,
        ),
    )


@cli.command(epilog="""Examples:

  skewsq bounds
    → 10000 random n=3 draws

  skewsq bounds -n 2 -d 500 --scale 0.1 --json
""")
@click.option("-d", "--draws", type=click.IntRange(min=1), default=10_000, show_default=True)
@click.option("-n", "--dimension", type=click.Choice(["2", "3"]), default="3", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option(
    "--scale",
    type=POSITIVE,
    default=0.5,
    show_default=True,
    help="Largest perturbation, relative to ||B||",
)
@click.option("-j", "--json", "output_json", is_flag=True, help="Output results in JSON format")
@click.option("-c", "--csv", "output_csv", is_flag=True, help="Output results in CSV format")
@click.option("--color", is_flag=True, help="Colorize text output")
@click.help_option("-h", "--help")
@click.pass_context
def bounds(
    ctx: click.Context,
    draws: int,
    dimension: str,
    seed: int,
    scale: float,
    output_json: bool,
    output_csv: bool,
    color: bool,
) -> None:
    """
    Check the angular velocity error bounds on random draws.

    Counts violations of ||W-W~||^4 <= C_n ||B-B^||^2 and of the projection
    bound ||B-B^|| <= 2 ||B-B~||.
    """
    from skewsq.commands.bounds import BoundsCommand

    command = BoundsCommand()
    _finish(
        ctx,
        command.run(
            draws=draws,
            dimension=int(dimension),
            seed=seed,
            scale=scale,
            output_json=output_json,
            output_csv=output_csv,
            color=color,
        ),
    )


def main() -> None:
    """Main entry point for the CLI."""
    cli()
