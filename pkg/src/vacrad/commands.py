"""Pure table builders behind each CLI subcommand.

Each builder takes a resolved parameter dict and returns a CommandOutput; all
file writing happens in vacrad.cli.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from vacrad import dce, mie, planar
from vacrad.core import ReducedMieParams, SpectrumTable
from vacrad.quadrature import QuadratureSpec

DEFAULTS: dict[str, dict[str, Any]] = {
    "mie-angular": {"rho": math.sqrt(2.0), "beta": 0.01, "n_theta": 181, "polar": False},
    "mie-rate": {"rho": 2.0, "beta": 0.01, "n_theta": 16, "n_phi": 32},
    "dce-angular": {"x": 0.5, "pol": "both", "n_theta": 181, "polar": False},
    "dce-spectrum": {"pol": "both", "n_x": 101},
    "dce-rates": {},
    "planar-spectrum": {"x": 0.7, "pol": "both", "n_theta": 181, "branch": "forward", "polar": False},
    "verify": {"level": "fast", "seed": 42, "workers": 1},
}


@dataclass
class CommandOutput:
    table: SpectrumTable | None = None
    scalars: dict[str, float] | None = None
    units: str = ""
    polar: SpectrumTable | None = None
    results: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)


def _pols(pol: str) -> list[str]:
    return ["te", "tm"] if pol == "both" else [pol]


def _need(cond, message):
    if not cond:
        raise ValueError(message)


def mie_angular(p) -> CommandOutput:
    _need(p["n_theta"] >= 2, "n_theta must be >= 2")
    params = ReducedMieParams(p["rho"], p["beta"])
    theta = np.linspace(0.0, np.pi, p["n_theta"])
    rate = mie.mie_angular_rate(params, theta)
    cols = {"rate": rate}
    out = CommandOutput(units=f"rate: {mie.UNITS_ANGULAR}; normalized: rate / rate(theta=0)")
    if params.rho > 1.0:
        profile = mie.mie_polar_profile(params, p["n_theta"])
        cols["normalized"] = profile.values["normalized"]
        if p.get("polar"):
            out.polar = SpectrumTable("theta", theta, {"r": profile.values["normalized"]}, "dimensionless")
    else:
        out.notes.append(f"rho = {params.rho} <= 1: no one-photon emission, normalized column omitted")
        if p.get("polar"):
            raise mie.EmptySpectrumError("--polar needs rho > 1 (nothing to normalize)")
    out.table = SpectrumTable("theta", theta, cols, out.units)
    return out


def mie_rate(p) -> CommandOutput:
    params = ReducedMieParams(p["rho"], p["beta"])
    q = QuadratureSpec(p["n_theta"], p["n_phi"])
    closed = mie.mie_total_rate(params)
    quad = mie.mie_total_rate_quadrature(params, q)
    analytic = mie.angular_integral_analytic(params)
    ratio = mie.rate_discrepancy_ratio(params.rho)
    cols = {
        "total_rate_closed_form": [closed],
        "angular_integral_quadrature": [quad],
        "angular_integral_analytic": [analytic],
        "discrepancy_ratio": [ratio],
    }
    out = CommandOutput(units=f"{mie.UNITS_RATE} (discrepancy_ratio dimensionless)")
    out.table = SpectrumTable("rho", [params.rho], cols, out.units)
    out.results = {k: v[0] for k, v in cols.items()}
    return out


def dce_angular(p) -> CommandOutput:
    x = p["x"]
    _need(0.0 <= x <= 1.0, "x must lie in [0, 1]")
    _need(p["n_theta"] >= 2, "n_theta must be >= 2")
    theta = np.linspace(0.0, np.pi, p["n_theta"])
    pols = _pols(p["pol"])
    out = CommandOutput(units=dce.UNITS_ANGULAR)
    out.table = SpectrumTable("theta", theta, {pol: dce.dce_angular_spectrum(x, theta, pol) for pol in pols}, out.units)
    if p.get("polar"):
        # normalized by the common upper-limit on-axis factor f(1, 0) = 5
        ref = dce.angular_factor(1.0, 0.0, "te")
        out.polar = SpectrumTable(
            "theta", theta, {f"r_{pol}": dce.angular_factor(x, theta, pol) / ref for pol in pols}, "dimensionless"
        )
    return out


def dce_spectrum(p) -> CommandOutput:
    _need(p["n_x"] >= 2, "n_x must be >= 2")
    x = np.linspace(0.0, 1.0, p["n_x"])
    pols = _pols(p["pol"])
    cols = {pol: dce.dce_frequency_spectrum(x, pol) for pol in pols}
    if len(pols) == 2:
        cols["total"] = cols["te"] + cols["tm"]
    out = CommandOutput(units=dce.UNITS_FREQUENCY)
    out.table = SpectrumTable("x", x, cols, out.units)
    return out


def dce_rates_cmd(p) -> CommandOutput:
    r = dce.dce_rates()
    s = dce.sphere_rate_comparison(1.0)
    scalars = {
        "gamma_te": r.gamma_te,
        "gamma_tm": r.gamma_tm,
        "gamma_total": r.gamma_total,
        "tm_te_ratio": r.tm_te_ratio,
        "gamma_sphere": s.gamma_sphere,
        "atom_over_sphere": s.atom_over_sphere,
    }
    out = CommandOutput(scalars=scalars, units=f"{dce.UNITS_RATE} (ratios dimensionless)")
    out.results = dict(scalars)
    out.results["gamma_total_exact"] = "23/(5670 pi)"
    out.results["tm_te_ratio_exact"] = f"{r.tm_fraction / r.te_fraction}"
    return out


def planar_spectrum(p) -> CommandOutput:
    x = p["x"]
    _need(0.0 < x < 1.0, "x must lie in (0, 1)")
    _need(p["n_theta"] >= 2, "n_theta must be >= 2")
    theta = np.linspace(0.0, np.pi / 2, p["n_theta"])
    pols = _pols(p["pol"])
    cols = {pol: planar.planar_angular_spectrum(x, theta, pol, p["branch"]) for pol in pols}
    out = CommandOutput(units="arbitrary (shape only)")
    out.table = SpectrumTable("theta", theta, cols, out.units)
    cone = planar.emission_cone_boundary(x)
    out.results = {"cone_boundary_deg": None if cone is None else math.degrees(cone)}
    if p.get("polar"):
        polar_cols = {}
        for pol, v in cols.items():
            peak = float(np.max(v))
            polar_cols[f"r_{pol}"] = v / peak if peak > 0 else v
        out.polar = SpectrumTable("theta", theta, polar_cols, "dimensionless (each column scaled to its maximum)")
    return out


BUILDERS = {
    "mie-angular": mie_angular,
    "mie-rate": mie_rate,
    "dce-angular": dce_angular,
    "dce-spectrum": dce_spectrum,
    "dce-rates": dce_rates_cmd,
    "planar-spectrum": planar_spectrum,
}


def resolve(command: str, overrides: dict[str, Any]) -> dict[str, Any]:
    params = dict(DEFAULTS[command])
    for k, v in overrides.items():
        if k in params and v is not None:
            params[k] = v
    return params
