"""Command-line front end.

Subcommands:

* ``run`` evaluates a preset or a TOML config and writes a CSV plus a JSON
  run manifest.
* ``list-presets`` prints the built-in figure presets.
* ``validate`` checks a config file and reports the resolved scenario.

Exit codes: 0 success, 1 configuration error, 2 numerical failure (every
grid point failed), 3 I/O error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from collections import Counter
from pathlib import Path

from . import __version__
from ._kernels import NUMBA_AVAILABLE, default_backend
from .config import ScenarioConfig, load_config
from .errors import ChiralTmmError, ConfigError
from .presets import get_preset, list_presets
from .spectra import SweepResult, run_sweep

CSV_HEADER = (
    "frequency_hz,theta_deg,R_co,R_cross,T_co,T_cross,"
    "R_total,T_total,rotation_deg,conservation_residual"
)


def _format_row(row) -> str:
    values = (
        row.frequency_hz,
        row.theta_deg,
        row.r_co,
        row.r_cross,
        row.t_co,
        row.t_cross,
        row.r_total,
        row.t_total,
        row.rotation_deg,
        row.conservation_residual,
    )
    return ",".join(f"{v:.9g}" for v in values)


def render_csv(result: SweepResult) -> str:
    """Deterministic CSV text: frozen header, 9 significant digits,
    '.' decimals and '\\n' line endings on every platform."""
    lines = [CSV_HEADER]
    lines.extend(_format_row(r) for r in result.rows)
    return "\n".join(lines) + "\n"


def write_outputs(config: ScenarioConfig, result: SweepResult, out_path: Path, backend: str) -> dict:
    csv_text = render_csv(result)
    out_path.write_text(csv_text, encoding="utf-8", newline="")
    manifest = {
        "tool": "chiral-tmm",
        "version": __version__,
        "scenario": config.name,
        "engine": config.engine,
        "backend": backend if config.engine == "cascade" else None,
        "config_sha256": config.config_hash(),
        "points_total": config.grid.n_points,
        "points_failed": result.n_failures,
        "failures_by_kind": dict(Counter(f.kind for f in result.failures)),
        "rows_written": len(result.rows),
        "csv_sha256": hashlib.sha256(csv_text.encode()).hexdigest(),
        "csv_path": out_path.name,
    }
    manifest_path = out_path.with_name(out_path.name + ".manifest.json")
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return manifest


def _resolve_scenario(args) -> ScenarioConfig:
    if args.preset:
        config = get_preset(args.preset).config
    else:
        config = load_config(args.config)
    if args.engine:
        config = config.with_engine(args.engine)
    if args.points is not None:
        config = config.with_points(args.points)
    return config


def _cmd_run(args) -> int:
    try:
        config = _resolve_scenario(args)
    except (ConfigError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    backend = default_backend()
    if args.threads and backend == "numba" and NUMBA_AVAILABLE:
        import numba

        numba.set_num_threads(max(1, args.threads))

    result = run_sweep(
        config.build_stack(),
        config.grid,
        incident=(config.e_par, config.e_perp),
        engine=config.engine,
    )
    if not result.rows:
        print(
            f"error: all {config.grid.n_points} grid points failed "
            f"({dict(Counter(f.kind for f in result.failures))})",
            file=sys.stderr,
        )
        return 2

    out_path = Path(args.out) if args.out else Path(f"{config.name}.csv")
    try:
        manifest = write_outputs(config, result, out_path, backend)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 3

    print(
        f"{config.name}: wrote {manifest['rows_written']} rows to {out_path}"
        + (f" ({result.n_failures} failed points)" if result.n_failures else "")
    )
    return 0


def _cmd_list_presets(_args) -> int:
    rows = list_presets()
    width = max(len(name) for name, _, _ in rows)
    for name, figure, summary in rows:
        print(f"{name:<{width}}  fig {figure:>2}  {summary}")
    return 0


def _cmd_validate(args) -> int:
    try:
        config = load_config(args.config)
        stack = config.build_stack()
    except ConfigError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 1
    thick = ", ".join(
        f"{n}={config.thicknesses_m[n] * 1e6:.3f}um" for n in sorted(config.thicknesses_m)
    )
    print(
        f"ok: {len(stack)} slabs, {config.grid.n_points} grid points, "
        f"engine={config.engine}, thicknesses: {thick}"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chiral-tmm",
        description="Reflected/transmitted power spectra of periodic chiral multilayers",
    )
    parser.add_argument("--version", action="version", version=f"chiral-tmm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="evaluate a scenario and write CSV + manifest")
    src = run_p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", help="built-in preset name (see list-presets)")
    src.add_argument("--config", help="TOML scenario file")
    run_p.add_argument("--engine", choices=("cascade", "direct"), help="override solver engine")
    run_p.add_argument("--out", help="output CSV path (default <scenario>.csv)")
    run_p.add_argument("--points", type=int, help="re-sample swept axes to N points")
    run_p.add_argument("--threads", type=int, help="numba thread count for the sweep kernel")
    run_p.set_defaults(func=_cmd_run)

    list_p = sub.add_parser("list-presets", help="print the built-in figure presets")
    list_p.set_defaults(func=_cmd_list_presets)

    val_p = sub.add_parser("validate", help="check a config file")
    val_p.add_argument("--config", required=True)
    val_p.set_defaults(func=_cmd_validate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ChiralTmmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
