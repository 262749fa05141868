"""Command-line front end.

Exit status: 0 on success, 1 when verification fails, 2 on usage or IO errors.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from pathlib import Path

from vacrad import __version__, commands
from vacrad.export import (
    ConfigError,
    RunManifest,
    load_config,
    write_json,
    write_scalars,
    write_table,
)
from vacrad.verify import build_report

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE = 0, 1, 2

_FLAGS = {
    "rho": dict(type=float, help="omega_cm / omega_0"),
    "beta": dict(type=float, help="v_m / c"),
    "x": dict(type=float, help="reduced photon frequency omega / omega_cm"),
    "pol": dict(choices=["te", "tm", "both"]),
    "n_theta": dict(type=int, help="number of polar-angle samples (or quadrature nodes)"),
    "n_x": dict(type=int, help="number of frequency samples on [0, 1]"),
    "n_phi": dict(type=int, help="azimuthal quadrature nodes"),
    "seed": dict(type=int),
    "polar": dict(action="store_const", const=True, help="also write normalized (theta, r) polar data"),
    "level": dict(choices=["fast", "full"]),
    "branch": dict(choices=["forward", "backward", "both"], help="longitudinal branch of the partner photon"),
    "workers": dict(type=int, help="Monte Carlo worker threads (results do not depend on it)"),
}

_HELP = {
    "mie-angular": "one-photon angular distribution vs theta",
    "mie-rate": "one-photon total rate, closed form and quadrature",
    "dce-angular": "pair-emission angular spectrum at fixed x",
    "dce-spectrum": "pair-emission frequency spectrum",
    "dce-rates": "total pair-emission rates and sphere comparison",
    "planar-spectrum": "constrained angular shape under planar symmetry",
    "verify": "run the self-test and write a verification report",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vacrad", description="Radiation from an oscillating ground-state atom.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, defaults in commands.DEFAULTS.items():
        sp = sub.add_parser(name, help=_HELP[name])
        for key in defaults:
            sp.add_argument("--" + key.replace("_", "-"), dest=key, default=None, **_FLAGS[key])
        sp.add_argument("--out", default=None, help=f"CSV output path (default {name}.csv)")
        sp.add_argument("--config", default=None, help="key = value parameter file; flags take precedence")
    return parser


def _merge(command: str, args: argparse.Namespace) -> tuple[dict, str]:
    from_file = load_config(args.config) if args.config else {}
    flags = {k: getattr(args, k) for k in commands.DEFAULTS[command] if getattr(args, k, None) is not None}
    params = commands.resolve(command, {**from_file, **flags})
    out = args.out or from_file.get("out") or f"{command}.csv"
    return params, out


def _use_color(stream) -> bool:
    return not os.environ.get("VACRAD_NO_COLOR") and hasattr(stream, "isatty") and stream.isatty()


def _print_report(report, stream=sys.stdout):
    color = _use_color(stream)
    paint = {"pass": "\033[32m", "fail": "\033[31m", "informational": "\033[33m"}
    for c in report.checks:
        tag = c.status.upper()
        if color:
            tag = f"{paint[c.status]}{tag}\033[0m"
        print(f"{tag:<13} {c.name}: actual={c.actual!s} expected={c.expected!s} tol={c.tolerance}", file=stream)
    s = report.summary
    print(f"{s['passed']} passed, {s['failed']} failed, {s['informational']} informational", file=stream)


def _outputs(out_path: Path):
    return out_path, out_path.with_suffix(".json"), out_path.with_name(out_path.stem + "_polar.csv")


def _run_verify(params, out_path: Path) -> int:
    report = build_report(params["level"], params["seed"], params["workers"])
    csv_path, json_path, _ = _outputs(out_path)
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        fh.write("# units: mixed (see expected/actual per check)\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["name", "status", "expected", "actual", "tolerance"])
        for c in report.checks:
            w.writerow([c.name, c.status, c.expected, c.actual, c.tolerance])
    manifest = RunManifest("verify", params, __version__, seed=params["seed"], outputs=[str(csv_path)])
    write_json({**manifest.to_dict(), "report": report.to_dict()}, json_path)
    _print_report(report)
    return EXIT_OK if report.ok else EXIT_VERIFY_FAILED


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on bad flags
    command = args.command
    try:
        params, out = _merge(command, args)
        out_path = Path(out)
        if not out_path.parent.is_dir():
            raise OSError(f"output directory {out_path.parent} does not exist")
        if command == "verify":
            return _run_verify(params, out_path)
        result = commands.BUILDERS[command](params)
        csv_path, json_path, polar_path = _outputs(out_path)
        written = []
        if result.table is not None:
            written.append(write_table(result.table, csv_path))
        if result.scalars is not None:
            written.append(write_scalars(result.scalars, result.units, csv_path))
        if result.polar is not None:
            written.append(write_table(result.polar, polar_path))
        manifest = RunManifest(
            command, params, __version__, seed=params.get("seed"), outputs=[str(p) for p in written], results=result.results
        )
        write_json(manifest.to_dict(), json_path)
    except ConfigError as exc:
        print(f"vacrad: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"vacrad: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for note in result.notes:
        print(f"vacrad: note: {note}", file=sys.stderr)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
