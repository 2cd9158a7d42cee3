"""Command-line front end: runs, sweeps, figure data, validation.

Subcommands: ``run | fig-rho01 | fig-tmin | fig-tmax | sweep | validate``.
Configuration comes from an optional flat key=value file plus flag
overrides (flags win). Output is CSV (default) or JSON, written to stdout
or ``--out``; temperatures are in units of ``delta_e`` (``delta_e / k_B``)
and times in ``1/g``, as stated in the CSV header comment. Exit codes:
0 success, 1 validation-suite failure, 2 usage or configuration error,
3 numeric failure.

All code paths are single-threaded and deterministic; ``--serial`` is
accepted for compatibility with scripted callers and pins the same
reference path that is always used, so output is byte-stable either way.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .analytic import Timescales, rho01_analytic, t_max, t_min
from .dynamics import IntegrationError, coherence_from_propagator
from .hilbert import (
    LEVEL_E,
    LEVEL_G,
    CoherentPrep,
    FockCutoff,
    PhysicalParams,
    TruncationError,
    bloch_vector,
)
from .protocol import ProtocolConfig, run_protocol, sweep_interaction_time
from .validation import run_all_checks


class ConfigError(ValueError):
    """Bad configuration file or flag combination (exit code 2)."""


# Schema of the flat key=value config file; flags of the same name override.
_CONFIG_KEYS: dict[str, type] = {
    "n_bar": float,
    "g": float,
    "delta_e": float,
    "phi": float,
    "time": float,
    "pe0": float,
    "initial_beta": float,
    "cutoff": int,
    "grid_points": int,
    "initial_level": str,
    "pulse_mode": str,
    "format": str,
    "out": str,
}

_INITIAL_LEVELS = ("e", "g", "both")


def parse_config_file(path: str) -> dict:
    """Parse a flat ``key = value`` file (#-comments and blank lines ok)."""
    values: dict = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value, got {raw.strip()!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(
                f"{path}:{lineno}: unknown key {key!r} (known: "
                f"{', '.join(sorted(_CONFIG_KEYS))})"
            )
        try:
            values[key] = _CONFIG_KEYS[key](value)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    return values


@dataclass(frozen=True)
class RunSpec:
    """Fully resolved invocation: subcommand plus effective settings."""

    command: str
    n_bar: float = 36.0
    g: float = 1.0
    delta_e: float = 1.0
    phi: float = 0.0
    time: float = 0.0
    pe0: float | None = None
    initial_beta: float | None = None
    cutoff: int | None = None
    grid_points: int | None = None
    initial_level: str = "e"
    pulse_mode: str = "explicit_unitary"
    fmt: str = "csv"
    out: str | None = None
    serial: bool = False
    n_bar_given: bool = False

    def __post_init__(self) -> None:
        if self.n_bar <= 0:
            raise ConfigError(f"n_bar must be positive, got {self.n_bar}")
        if self.g <= 0:
            raise ConfigError(f"g must be positive, got {self.g}")
        if self.delta_e <= 0:
            raise ConfigError(f"delta_e must be positive, got {self.delta_e}")
        if self.time < 0:
            raise ConfigError(f"time must be non-negative, got {self.time}")
        if self.pe0 is not None and not 0.0 <= self.pe0 <= 1.0:
            raise ConfigError(f"pe0 must lie in [0, 1], got {self.pe0}")
        if self.pe0 is not None and self.initial_beta is not None:
            raise ConfigError("give at most one of pe0 and initial_beta")
        if self.cutoff is not None and self.cutoff <= 0:
            raise ConfigError(f"cutoff must be positive, got {self.cutoff}")
        if self.grid_points is not None and self.grid_points < 1:
            raise ConfigError(f"grid_points must be >= 1, got {self.grid_points}")
        if self.initial_level not in _INITIAL_LEVELS:
            raise ConfigError(
                f"initial_level must be one of {_INITIAL_LEVELS}, got "
                f"{self.initial_level!r}"
            )
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.fmt!r}")

    @property
    def params(self) -> PhysicalParams:
        return PhysicalParams(delta_e=self.delta_e, g=self.g)

    @property
    def alpha(self) -> complex:
        return math.sqrt(self.n_bar) * complex(math.cos(self.phi), math.sin(self.phi))

    @property
    def timescales(self) -> Timescales:
        return Timescales(self.n_bar, self.g)

    def prep(self) -> CoherentPrep:
        if self.cutoff is not None:
            return CoherentPrep(self.alpha, FockCutoff(self.cutoff))
        return CoherentPrep(self.alpha)

    def protocol_config(self, t: float | None = None) -> ProtocolConfig:
        kwargs: dict = dict(
            prep=self.prep(),
            interaction_time=self.time if t is None else t,
            physical=self.params,
            pulse_mode=self.pulse_mode,
        )
        if self.pe0 is not None:
            kwargs["initial_pe"] = self.pe0
        else:
            kwargs["initial_beta"] = 1.0 if self.initial_beta is None else self.initial_beta
        return ProtocolConfig(**kwargs)


_UNITS_COMMENT = "# units: temperatures in delta_e/k_B, times in 1/g"


def _fmt_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            raise ValueError("refusing to emit NaN")
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.17g}"
    if value is None:
        return ""
    return str(value)


def _render_csv(fieldnames: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    buf.write(_UNITS_COMMENT + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fieldnames)
    for row in rows:
        writer.writerow([_fmt_cell(row.get(name)) for name in fieldnames])
    return buf.getvalue()


def _sanitize_json(obj):
    if isinstance(obj, dict):
        return {k: _sanitize_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize_json(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if math.isnan(value):
            raise ValueError("refusing to emit NaN")
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    return obj


def _render_json(fieldnames: list[str], rows: list[dict]) -> str:
    payload = {
        "units": {"temperature": "delta_e/k_B", "time": "1/g"},
        "rows": [_sanitize_json({k: row.get(k) for k in fieldnames}) for row in rows],
    }
    return json.dumps(payload, indent=2) + "\n"


def _write_output(spec: RunSpec, fieldnames: list[str], rows: list[dict]) -> None:
    text = (_render_csv(fieldnames, rows) if spec.fmt == "csv"
            else _render_json(fieldnames, rows))
    if spec.out is None or spec.out == "-":
        sys.stdout.write(text)
    else:
        with open(spec.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _result_row(t: float, result) -> dict:
    pre = bloch_vector(result.rho_pre_pulse)
    post = bloch_vector(result.rho_post_pulse)
    return {
        "t": t,
        "pe": result.reading.pe,
        "temperature": result.reading.temperature,
        "inverted": result.reading.inverted,
        "collapse_completed": result.validity.collapse_completed,
        "within_half_revival": result.validity.within_half_revival,
        "pulse_residual_ok": result.validity.pulse_residual_ok,
        "pulse_residual": result.pulse_residual,
        "pre_x": pre[0], "pre_y": pre[1], "pre_z": pre[2],
        "post_x": post[0], "post_y": post[1], "post_z": post[2],
    }


_RUN_FIELDS = [
    "t", "pe", "temperature", "inverted", "collapse_completed",
    "within_half_revival", "pulse_residual_ok", "pulse_residual",
    "pre_x", "pre_y", "pre_z", "post_x", "post_y", "post_z",
]


def cmd_run(spec: RunSpec) -> int:
    result = run_protocol(spec.protocol_config())
    _write_output(spec, _RUN_FIELDS, [_result_row(spec.time, result)])
    return 0


def cmd_fig_rho01(spec: RunSpec) -> int:
    points = spec.grid_points if spec.grid_points is not None else 400
    grid = np.linspace(0.0, 0.6 * spec.timescales.tau_revival, points)
    levels = {"e": [(LEVEL_E, "")], "g": [(LEVEL_G, "")],
              "both": [(LEVEL_E, "_e"), (LEVEL_G, "_g")]}[spec.initial_level]
    n_max = spec.prep().n_max
    fieldnames = ["t"]
    for _, suffix in levels:
        fieldnames += [f"re_num{suffix}", f"im_num{suffix}"]
    fieldnames += ["re_analytic", "im_analytic"]
    rows = []
    for t in grid:
        row: dict = {"t": float(t)}
        for level, suffix in levels:
            num = coherence_from_propagator(float(t), spec.alpha, spec.params,
                                            level, n_max)
            row[f"re_num{suffix}"] = num.real
            row[f"im_num{suffix}"] = num.imag
        ana = rho01_analytic(float(t), spec.n_bar, spec.params, spec.phi)
        row["re_analytic"] = ana.real
        row["im_analytic"] = ana.imag
        rows.append(row)
    _write_output(spec, fieldnames, rows)
    return 0


def _n_bar_grid(spec: RunSpec) -> np.ndarray:
    if spec.n_bar_given:
        return np.array([spec.n_bar])
    points = spec.grid_points if spec.grid_points is not None else 20
    return np.logspace(1.0, 3.0, points)


def cmd_fig_tmin(spec: RunSpec) -> int:
    rows = [
        {"n_bar": float(n), "t_min": t_min(float(n), spec.delta_e).temperature}
        for n in _n_bar_grid(spec)
    ]
    _write_output(spec, ["n_bar", "t_min"], rows)
    return 0


def cmd_fig_tmax(spec: RunSpec) -> int:
    rows = []
    for n in _n_bar_grid(spec):
        rows.append({
            "n_bar": float(n),
            "t_max_numeric": t_max(float(n), spec.delta_e, "numeric",
                                   g=spec.g).temperature,
            "t_max_closed_form": t_max(float(n), spec.delta_e, "closed_form",
                                       g=spec.g).temperature,
        })
    _write_output(spec, ["n_bar", "t_max_numeric", "t_max_closed_form"], rows)
    return 0


def cmd_sweep(spec: RunSpec) -> int:
    points = spec.grid_points if spec.grid_points is not None else 200
    grid = np.linspace(0.0, spec.timescales.half_revival, points)
    sweep = sweep_interaction_time(spec.protocol_config(), grid)
    fieldnames = _RUN_FIELDS + ["error"]
    rows = []
    for point in sweep:
        if point.ok:
            row = _result_row(point.t, point.result)
            row["error"] = ""
        else:
            row = {"t": point.t, "error": point.error}
        rows.append(row)
    _write_output(spec, fieldnames, rows)
    return 0


def cmd_validate(spec: RunSpec) -> int:
    report = run_all_checks()
    print(report.format_report())
    if spec.out is not None and spec.out != "-":
        rows = [
            {"name": c.name, "passed": c.passed, "duration": c.duration,
             "detail": c.detail}
            for c in report.checks
        ]
        _write_output(spec, ["name", "passed", "duration", "detail"], rows)
    return 0 if report.all_passed else 1


_COMMANDS = {
    "run": cmd_run,
    "fig-rho01": cmd_fig_rho01,
    "fig-tmin": cmd_fig_tmin,
    "fig-tmax": cmd_fig_tmax,
    "sweep": cmd_sweep,
    "validate": cmd_validate,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cavitytherm",
        description=(
            "Temperature control of a two-level atom through timed cavity "
            "interaction and a phase-locked half pulse."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("run", "run the protocol once and emit one record"),
        ("fig-rho01", "coherence vs time: exact and closed form"),
        ("fig-tmin", "floor temperature vs mean photon number"),
        ("fig-tmax", "ceiling temperature vs mean photon number (both variants)"),
        ("sweep", "sweep the interaction time over a grid"),
        ("validate", "run the full self-validation battery"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="flat key=value config file")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--format", choices=["csv", "json"], dest="fmt")
        p.add_argument("--serial", action="store_true",
                       help="force the single-threaded reference path")
        p.add_argument("--n-bar", type=float, dest="n_bar",
                       help="mean photon number (fig-tmin/fig-tmax: single-point grid)")
        p.add_argument("--g", type=float, help="atom-field coupling")
        p.add_argument("--delta-e", type=float, dest="delta_e",
                       help="atomic splitting (= field frequency)")
        p.add_argument("--phi", type=float, help="coherent field phase")
        p.add_argument("--time", type=float, help="interaction time")
        p.add_argument("--pe0", type=float,
                       help="initial excited population (else thermal initial_beta)")
        p.add_argument("--cutoff", type=int, help="Fock cutoff override")
        p.add_argument("--grid-points", type=int, dest="grid_points",
                       help="grid size for sweep/figure subcommands")
        p.add_argument("--initial-level", choices=_INITIAL_LEVELS,
                       dest="initial_level",
                       help="initial atom level for fig-rho01 (default e)")
        p.add_argument("--pulse-mode", choices=["explicit_unitary", "diagonalize"],
                       dest="pulse_mode", help="how the half pulse is realized")
    return parser


def _build_spec(args: argparse.Namespace) -> RunSpec:
    settings: dict = {}
    if args.config:
        settings.update(parse_config_file(args.config))
    for key in ("n_bar", "g", "delta_e", "phi", "time", "pe0", "cutoff",
                "grid_points", "initial_level", "pulse_mode", "fmt", "out"):
        flag_value = getattr(args, key if key != "fmt" else "fmt", None)
        if flag_value is not None:
            settings[key] = flag_value
    if "format" in settings:
        settings["fmt"] = settings.pop("format")
    n_bar_given = "n_bar" in settings
    return RunSpec(
        command=args.command,
        serial=bool(args.serial),
        n_bar_given=n_bar_given,
        **settings,
    )


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        spec = _build_spec(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return _COMMANDS[spec.command](spec)
    except (TruncationError, IntegrationError, ArithmeticError,
            FloatingPointError, ValueError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
