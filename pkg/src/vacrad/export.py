"""Config files, CSV tables, run manifests and verification reports."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from vacrad.core import SpectrumTable


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _choice(*options):
    def conv(text):
        v = str(text).strip().lower()
        if v not in options:
            raise ValueError(f"expected one of {', '.join(options)}")
        return v

    return conv


def _bool(text):
    if isinstance(text, bool):
        return text
    v = str(text).strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ValueError("expected a boolean (true/false)")


def _finite_float(text):
    v = float(text)
    if not math.isfinite(v):
        raise ValueError("expected a finite number")
    return v


CONFIG_KEYS = {
    "rho": _finite_float,
    "beta": _finite_float,
    "x": _finite_float,
    "pol": _choice("te", "tm", "both"),
    "n_theta": int,
    "n_x": int,
    "n_phi": int,
    "seed": int,
    "out": str,
    "polar": _bool,
    "level": _choice("fast", "full"),
    "branch": _choice("forward", "backward", "both"),
    "workers": int,
}


def coerce(key: str, value, line: int | None = None):
    name = key.strip().replace("-", "_")
    if name not in CONFIG_KEYS:
        raise ConfigError(f"unknown key {key.strip()!r}", line)
    try:
        return name, CONFIG_KEYS[name](value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad value {str(value).strip()!r} for {name}: {exc}", line) from None


def parse_config(text: str) -> dict[str, Any]:
    params: dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, value = line.split("=", 1)
        if not value.strip():
            raise ConfigError(f"missing value for {key.strip()!r}", lineno)
        name, val = coerce(key, value.strip(), lineno)
        params[name] = val
    return params


def load_config(path) -> dict[str, Any]:
    """Read ``key = value`` lines (``#`` starts a comment). Unknown keys are errors."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from None
    return parse_config(text)


def dump_config(params: dict[str, Any]) -> str:
    lines = []
    for key, val in params.items():
        if val is None:
            continue
        if isinstance(val, bool):
            text = "true" if val else "false"
        elif isinstance(val, float):
            text = repr(val)
        else:
            text = str(val)
        lines.append(f"{key} = {text}")
    return "\n".join(lines) + "\n"


def format_number(v: float) -> str:
    return format(float(v), ".17g")


def render_table(table: SpectrumTable) -> str:
    lines = [f"# units: {table.units}", ",".join(table.columns)]
    for row in table.rows():
        lines.append(",".join(format_number(v) for v in row))
    return "\n".join(lines) + "\n"


def write_table(table: SpectrumTable, path) -> Path:
    """CSV: a '# units:' line, the header, then rows at 17 significant digits; LF, UTF-8."""
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_table(table))
    return path


def write_scalars(rows: dict[str, float], units: str, path) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"# units: {units}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["quantity", "value"])
        for k, v in rows.items():
            w.writerow([k, format_number(v)])
    return path


@dataclass
class RunManifest:
    command: str
    parameters: dict[str, Any]
    tool_version: str
    seed: int | None = None
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))
    outputs: list[str] = field(default_factory=list)
    results: dict[str, Any] = field(default_factory=dict)

    def to_dict(self):
        return asdict(self)


@dataclass
class Check:
    name: str
    expected: Any
    actual: Any
    tolerance: float | None
    passed: bool
    informational: bool = False

    @property
    def status(self) -> str:
        if self.informational:
            return "informational"
        return "pass" if self.passed else "fail"


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    def add(self, name, expected, actual, tolerance=None, passed=None, informational=False) -> Check:
        if passed is None:
            passed = _within(expected, actual, tolerance)
        chk = Check(name, expected, actual, tolerance, bool(passed), informational)
        self.checks.append(chk)
        return chk

    @property
    def summary(self) -> dict[str, int]:
        counted = [c for c in self.checks if not c.informational]
        return {
            "passed": sum(c.passed for c in counted),
            "failed": sum(not c.passed for c in counted),
            "informational": len(self.checks) - len(counted),
        }

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks if not c.informational)

    def to_dict(self):
        return {
            "checks": [
                {
                    "name": c.name,
                    "expected": _jsonable(c.expected),
                    "actual": _jsonable(c.actual),
                    "tolerance": c.tolerance,
                    "pass": c.passed,
                    "status": c.status,
                }
                for c in self.checks
            ],
            "summary": self.summary,
            "pass": self.ok,
        }


def _within(expected, actual, tolerance) -> bool:
    """Relative tolerance when |expected| > 0, absolute otherwise."""
    if tolerance is None:
        return expected == actual
    expected, actual = float(expected), float(actual)
    if not (math.isfinite(expected) and math.isfinite(actual)):
        return False
    scale = abs(expected) if expected != 0 else 1.0
    return abs(actual - expected) <= tolerance * scale


def _jsonable(v):
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    try:
        return float(v)
    except (TypeError, ValueError):
        return str(v)


def write_json(obj, path) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh, indent=2, sort_keys=False, ensure_ascii=False)
        fh.write("\n")
    return path
