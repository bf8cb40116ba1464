"""Command-line front end.

Verbs: ``figure`` runs a shipped preset, ``sweep`` runs a config file,
``point`` evaluates all four schemes at a single parameter set, and
``validate`` checks a config file. All randomness flows from ``--seed``;
identical command lines produce byte-identical output. Exit codes: 0 on
success, 2 for validation/usage errors, 1 for runtime failures.

Results go to stdout unless ``--out`` names a file; a relative ``--out`` is
resolved under $CNOMA_OAM_OUTDIR when that variable is set.
"""

from __future__ import annotations

import functools
import os
import sys
from pathlib import Path
from typing import Any

import click

from .experiments import (DEFAULT_SEED, DEFAULT_TRIALS, FIGURE_IDS, figure_preset,
                          format_csv, load_config, run_sweep, with_overrides)
from .montecarlo import SCHEME_ORDER, estimate_all
from .params import (ConfigError, Metric, ParameterError, SystemParams,
                     coerce_param_value)

_OUTDIR_ENV = "CNOMA_OAM_OUTDIR"


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args: Any, **kwargs: Any):
        try:
            return fn(*args, **kwargs)
        except (ConfigError, ParameterError) as exc:
            _fail(str(exc), 2)
        except OSError as exc:
            _fail(str(exc), 1)
    return wrapper


def _parse_overrides(pairs: tuple[str, ...]) -> dict[str, Any]:
    overrides: dict[str, Any] = {}
    for pair in pairs:
        if "=" not in pair:
            raise ConfigError(f"override must look like key=value, got {pair!r}")
        key, value = (part.strip() for part in pair.split("=", 1))
        if key in overrides:
            raise ConfigError(f"duplicate override {key!r}")
        overrides[key] = coerce_param_value(key, value)
    return overrides


def _resolve_out(out: str | None) -> Path | None:
    if out is None:
        return None
    path = Path(out)
    outdir = os.environ.get(_OUTDIR_ENV)
    if outdir and not path.is_absolute():
        return Path(outdir) / path
    return path


def _emit(text: str, out: str | None) -> None:
    path = _resolve_out(out)
    if path is None:
        click.echo(text, nl=False)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


_common_options = [
    click.option("--trials", type=click.IntRange(min=1), default=None,
                 help=f"Trials per sweep point (default {DEFAULT_TRIALS})."),
    click.option("--seed", type=click.IntRange(min=0), default=None,
                 help=f"Master seed (default {DEFAULT_SEED})."),
    click.option("--workers", type=click.IntRange(min=1), default=1,
                 show_default=True, help="Parallel workers (results unchanged)."),
    click.option("--out", type=str, default=None,
                 help="Output file (default stdout; relative paths resolve "
                      f"under ${_OUTDIR_ENV} when set)."),
    click.option("--overrides", "overrides", multiple=True, metavar="KEY=VALUE",
                 help="Override a base parameter (repeatable)."),
]


def _add_options(fn):
    for option in reversed(_common_options):
        fn = option(fn)
    return fn


@click.group()
def cli() -> None:
    """Monte Carlo simulator for SWIPT-powered cooperative-NOMA with OAM."""


@cli.command()
@click.argument("figure_id", type=click.Choice(FIGURE_IDS))
@_add_options
@_handle_errors
def figure(figure_id: str, trials: int | None, seed: int | None, workers: int,
           out: str | None, overrides: tuple[str, ...]) -> None:
    """Run a shipped experiment preset (fig3..fig10) and emit CSV."""
    spec = figure_preset(figure_id,
                         n_trials=trials if trials is not None else DEFAULT_TRIALS,
                         seed=seed if seed is not None else DEFAULT_SEED)
    spec = with_overrides(spec, _parse_overrides(overrides))
    _emit(format_csv(run_sweep(spec, workers=workers)), out)


@cli.command()
@click.argument("config_path", type=str)
@_add_options
@_handle_errors
def sweep(config_path: str, trials: int | None, seed: int | None, workers: int,
          out: str | None, overrides: tuple[str, ...]) -> None:
    """Run a sweep described by a config file and emit CSV.

    --trials/--seed/--out take precedence over the config file when given.
    """
    spec = load_config(config_path)
    sweep_overrides: dict[str, Any] = {}
    if trials is not None:
        sweep_overrides["n_trials"] = trials
    if seed is not None:
        sweep_overrides["seed"] = seed
    if out is not None:
        sweep_overrides["output_path"] = None  # emitted via --out below
    spec = with_overrides(spec, _parse_overrides(overrides), **sweep_overrides)
    rows = run_sweep(spec, workers=workers)
    if out is not None or spec.output_path is None:
        _emit(format_csv(rows), out)


@cli.command()
@_add_options
@_handle_errors
def point(trials: int | None, seed: int | None, workers: int, out: str | None,
          overrides: tuple[str, ...]) -> None:
    """Evaluate all four schemes at one parameter set; one summary row each."""
    params = SystemParams.default().replace(**_parse_overrides(overrides))
    estimates = estimate_all(params,
                             trials if trials is not None else DEFAULT_TRIALS,
                             seed if seed is not None else DEFAULT_SEED,
                             workers)
    lines = ["scheme,c_ue1,c_ue2,c_sum,ee,n_trials"]
    for scheme in SCHEME_ORDER:
        per_scheme = estimates[scheme]
        lines.append(
            f"{scheme.value},"
            f"{per_scheme[Metric.C_UE1].mean:.9g},"
            f"{per_scheme[Metric.C_UE2].mean:.9g},"
            f"{per_scheme[Metric.C_SUM].mean:.9g},"
            f"{per_scheme[Metric.EE].mean:.9g},"
            f"{per_scheme[Metric.C_SUM].n_trials}")
    _emit("\n".join(lines) + "\n", out)


@cli.command()
@click.argument("config_path", type=str)
@_handle_errors
def validate(config_path: str) -> None:
    """Check a sweep config file; exit 0 if valid, 2 otherwise."""
    spec = load_config(config_path)
    click.echo(f"OK: {config_path} ({spec.axis.value} sweep, "
               f"{len(spec.axis_values)} points, {len(spec.schemes)} schemes, "
               f"{len(spec.metrics)} metrics)")


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
