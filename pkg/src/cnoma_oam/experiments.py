"""Declarative parameter sweeps, experiment presets, config files and CSV.

A sweep varies one axis (``rho_db``, ``d_s1`` or ``delta``) over an
increasing grid, estimates the requested metrics for the requested schemes
at every point, and emits one CSV row per (axis value, scheme, metric).
Every point reuses the run seed, so all points of a sweep see the same
fading realizations; curves are therefore noise-aligned and quantities that
do not depend on the axis variable (such as the time-switching scheme under
a delta sweep) come out bitwise constant.

The config format is a flat ``key = value`` text file (one key per line,
``#`` starts a comment) naming the sweep fields plus the full parameter
schema of :mod:`cnoma_oam.params`. Unknown keys are errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace as dataclass_replace
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, TextIO

from .montecarlo import SCHEME_ORDER, estimate_all
from .params import (ConfigError, Metric, ParameterError, Scheme, SystemParams,
                     coerce_param_value, PARAM_INPUT_KEYS)

DEFAULT_TRIALS = 100_000
DEFAULT_SEED = 42

FIGURE_IDS = ("fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10")

CSV_HEADER = "axis,axis_value,scheme,metric,mean,std_error,n_trials"


class SweepAxis(str, Enum):
    RHO_DB = "rho_db"
    D_S1 = "d_s1"
    DELTA = "delta"


@dataclass(frozen=True)
class SweepSpec:
    """One experiment: an axis grid, base parameters, schemes and metrics."""

    axis: SweepAxis
    axis_values: tuple[float, ...]
    base_params: SystemParams
    schemes: tuple[Scheme, ...] = SCHEME_ORDER
    metrics: tuple[Metric, ...] = (Metric.C_SUM,)
    n_trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    output_path: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "axis", SweepAxis(self.axis))
        object.__setattr__(self, "axis_values",
                           tuple(float(v) for v in self.axis_values))
        object.__setattr__(self, "schemes", tuple(Scheme(s) for s in self.schemes))
        object.__setattr__(self, "metrics", tuple(Metric(m) for m in self.metrics))
        object.__setattr__(self, "n_trials", int(self.n_trials))
        object.__setattr__(self, "seed", int(self.seed))
        values = self.axis_values
        if not values:
            raise ParameterError("axis_values must not be empty")
        if not all(math.isfinite(v) for v in values):
            raise ParameterError("axis_values must be finite")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ParameterError("axis_values must be strictly increasing")
        if self.axis is SweepAxis.D_S1 and not all(0.0 < v < 1.0 for v in values):
            raise ParameterError("d_s1 axis values must lie in (0, 1)")
        if self.axis is SweepAxis.DELTA and not all(0.0 <= v <= 1.0 for v in values):
            raise ParameterError("delta axis values must lie in [0, 1]")
        if not self.schemes:
            raise ParameterError("schemes must not be empty")
        if len(set(self.schemes)) != len(self.schemes):
            raise ParameterError("schemes must be unique")
        if not self.metrics:
            raise ParameterError("metrics must not be empty")
        if len(set(self.metrics)) != len(self.metrics):
            raise ParameterError("metrics must be unique")
        if self.n_trials < 1:
            raise ParameterError(f"n_trials must be >= 1, got {self.n_trials!r}")


@dataclass(frozen=True)
class SweepRow:
    axis: SweepAxis
    axis_value: float
    scheme: Scheme
    metric: Metric
    mean: float
    std_error: float
    n_trials: int


def apply_axis_value(base: SystemParams, axis: SweepAxis, value: float) -> SystemParams:
    """Clone ``base`` with the axis variable overridden.

    ``rho_db`` converts to linear (rho = 10**(dB/10)); ``d_s1`` re-derives
    the relay-hop distance under collinear placement.
    """
    axis = SweepAxis(axis)
    if axis is SweepAxis.RHO_DB:
        return base.replace(rho_db=value)
    if axis is SweepAxis.D_S1:
        return base.replace(d_s1=value)
    return base.replace(delta=value)


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[SweepRow]:
    """Execute a sweep; returns the rows and writes CSV when requested.

    Rows are sorted by (axis_value, scheme, metric) and the run is a
    deterministic function of ``spec`` alone, independent of ``workers``.
    """
    rows: list[SweepRow] = []
    for value in spec.axis_values:
        params = apply_axis_value(spec.base_params, spec.axis, value)
        estimates = estimate_all(params, spec.n_trials, spec.seed, workers)
        for scheme in spec.schemes:
            for metric in spec.metrics:
                est = estimates[scheme][metric]
                rows.append(SweepRow(
                    axis=spec.axis, axis_value=value, scheme=scheme,
                    metric=metric, mean=est.mean, std_error=est.std_error,
                    n_trials=est.n_trials))
    rows.sort(key=lambda r: (r.axis_value, r.scheme.value, r.metric.value))
    if spec.output_path is not None:
        write_csv(rows, spec.output_path)
    return rows


def format_csv(rows: Iterable[SweepRow]) -> str:
    """CSV text: fixed header, LF endings, floats at 9 significant digits."""
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            f"{r.axis.value},{r.axis_value:.9g},{r.scheme.value},{r.metric.value},"
            f"{r.mean:.9g},{r.std_error:.9g},{r.n_trials}")
    return "\n".join(lines) + "\n"


def write_csv(rows: Iterable[SweepRow], destination: str | Path | TextIO) -> None:
    text = format_csv(rows)
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        with open(destination, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


_RHO_GRID = tuple(float(v) for v in range(0, 31, 5))
_D_S1_GRID = tuple(i / 10 for i in range(1, 10))
_DELTA_GRID = tuple(i / 20 for i in range(1, 20))
_DELTA_GRID_INCLUSIVE = tuple(i / 20 for i in range(0, 21))


def figure_preset(figure_id: str, n_trials: int = DEFAULT_TRIALS,
                  seed: int = DEFAULT_SEED, output_path: str | None = None,
                  include_delta_endpoints: bool = False) -> SweepSpec:
    """Shipped experiment presets fig3..fig10.

    fig3/fig4/fig5 sweep the transmit SNR (0..30 dB, step 5) for the CCU,
    CEU and sum capacity respectively; fig6 sweeps the BS-to-CCU distance at
    15 dB for the sum capacity; fig7 sweeps the power-splitting factor at
    15 dB; fig8/fig9/fig10 repeat fig5/fig6/fig7 for energy efficiency.
    All presets compare all four schemes. The delta grid excludes the
    degenerate endpoints 0 and 1 unless ``include_delta_endpoints`` is set.

    Note: the distance presets (fig6/fig9) carry OAM modes l_s1=1, l_s2=2,
    swapped relative to the other presets; the mode index is bookkeeping
    only and does not change any number.
    """
    if figure_id not in FIGURE_IDS:
        raise ConfigError(
            f"unknown figure id {figure_id!r}; expected one of {', '.join(FIGURE_IDS)}")
    base = SystemParams.default()
    common = dict(schemes=SCHEME_ORDER, n_trials=n_trials, seed=seed,
                  output_path=output_path)
    delta_grid = _DELTA_GRID_INCLUSIVE if include_delta_endpoints else _DELTA_GRID

    if figure_id in ("fig3", "fig4", "fig5", "fig8"):
        metric = {"fig3": Metric.C_UE1, "fig4": Metric.C_UE2,
                  "fig5": Metric.C_SUM, "fig8": Metric.EE}[figure_id]
        return SweepSpec(axis=SweepAxis.RHO_DB, axis_values=_RHO_GRID,
                         base_params=base, metrics=(metric,), **common)
    if figure_id in ("fig6", "fig9"):
        metric = Metric.C_SUM if figure_id == "fig6" else Metric.EE
        distance_base = base.replace(rho_db=15.0, l_s1=1, l_s2=2)
        return SweepSpec(axis=SweepAxis.D_S1, axis_values=_D_S1_GRID,
                         base_params=distance_base, metrics=(metric,), **common)
    metric = Metric.C_SUM if figure_id == "fig7" else Metric.EE
    return SweepSpec(axis=SweepAxis.DELTA, axis_values=delta_grid,
                     base_params=base.replace(rho_db=15.0), metrics=(metric,),
                     **common)


_SWEEP_KEYS = ("axis", "axis_values", "schemes", "metrics", "n_trials", "seed",
               "output_path")


def serialize_config(spec: SweepSpec) -> str:
    """Config-file text that parses back to an equal spec."""
    lines = [
        "# sweep definition",
        f"axis = {spec.axis.value}",
        "axis_values = " + ", ".join(repr(v) for v in spec.axis_values),
        "schemes = " + ", ".join(s.value for s in spec.schemes),
        "metrics = " + ", ".join(m.value for m in spec.metrics),
        f"n_trials = {spec.n_trials}",
        f"seed = {spec.seed}",
    ]
    if spec.output_path is not None:
        lines.append(f"output_path = {spec.output_path}")
    lines.append("")
    lines.append("# system parameters")
    for key, value in spec.base_params.to_flat().items():
        if isinstance(value, bool):
            text = "true" if value else "false"
        elif isinstance(value, float):
            text = repr(value)
        else:
            text = str(value)
        lines.append(f"{key} = {text}")
    return "\n".join(lines) + "\n"


def parse_config(text: str) -> SweepSpec:
    """Parse config-file text into a validated :class:`SweepSpec`."""
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in entries:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        entries[key] = value

    unknown = set(entries) - set(_SWEEP_KEYS) - PARAM_INPUT_KEYS
    if unknown:
        raise ConfigError(f"unknown key(s): {', '.join(sorted(unknown))}")
    for required in ("axis", "axis_values"):
        if required not in entries:
            raise ConfigError(f"missing required key {required!r}")

    try:
        axis = SweepAxis(entries.pop("axis"))
    except ValueError:
        raise ConfigError(
            f"axis must be one of {', '.join(a.value for a in SweepAxis)}") from None
    try:
        axis_values = tuple(float(tok) for tok in entries.pop("axis_values").split(","))
    except ValueError as exc:
        raise ConfigError(f"bad axis_values: {exc}") from None

    schemes: tuple[Scheme, ...] = SCHEME_ORDER
    if "schemes" in entries:
        try:
            schemes = tuple(Scheme(tok.strip())
                            for tok in entries.pop("schemes").split(","))
        except ValueError:
            raise ConfigError(
                f"schemes must be drawn from {', '.join(s.value for s in Scheme)}") from None
    metrics: tuple[Metric, ...] = (Metric.C_SUM,)
    if "metrics" in entries:
        try:
            metrics = tuple(Metric(tok.strip())
                            for tok in entries.pop("metrics").split(","))
        except ValueError:
            raise ConfigError(
                f"metrics must be drawn from {', '.join(m.value for m in Metric)}") from None

    n_trials = DEFAULT_TRIALS
    if "n_trials" in entries:
        try:
            n_trials = int(entries.pop("n_trials"))
        except ValueError as exc:
            raise ConfigError(f"bad n_trials: {exc}") from None
    seed = DEFAULT_SEED
    if "seed" in entries:
        try:
            seed = int(entries.pop("seed"))
        except ValueError as exc:
            raise ConfigError(f"bad seed: {exc}") from None
    output_path = entries.pop("output_path", None)

    flat = {key: coerce_param_value(key, value) for key, value in entries.items()}
    base_params = SystemParams.from_flat(flat)
    return SweepSpec(axis=axis, axis_values=axis_values, base_params=base_params,
                     schemes=schemes, metrics=metrics, n_trials=n_trials,
                     seed=seed, output_path=output_path)


def load_config(path: str | Path) -> SweepSpec:
    """Read and parse a sweep config file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from None
    return parse_config(text)


def with_overrides(spec: SweepSpec, param_overrides: dict[str, Any] | None = None,
                   **sweep_overrides: Any) -> SweepSpec:
    """Copy a spec, optionally overriding base parameters and sweep fields."""
    if param_overrides:
        spec = dataclass_replace(spec, base_params=spec.base_params.replace(**param_overrides))
    if sweep_overrides:
        spec = dataclass_replace(spec, **sweep_overrides)
    return spec
