"""One-photon motion-induced excitation (MIE) of an oscillating two-level atom.

Rates are in units of the spontaneous rate Gamma_0 of the atom at rest (or of
Gamma_s for each level of a multi-level atom). The Heaviside gate uses
Theta(0) = 1, but the (rho - 1)**3 factor makes the rate vanish at threshold.
"""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np

from vacrad.core import ReducedMieParams, SpectrumTable, TransitionSpec
from vacrad.quadrature import QuadratureSpec, solid_angle_integrate

UNITS_ANGULAR = "Gamma_0/sr"
UNITS_RATE = "Gamma_0"


class EmptySpectrumError(ValueError):
    """Raised when a normalized profile is requested below threshold (rho <= 1)."""


def _angular(rho, beta, theta):
    rho = np.asarray(rho, dtype=float)
    gate = rho >= 1.0
    excess = np.where(gate, rho - 1.0, 0.0)
    c2 = np.cos(theta) ** 2
    s2 = np.sin(theta) ** 2
    return 0.25 * beta**2 * excess**3 * (2.0 * c2 / rho**2 + s2)


def mie_angular_rate(p: ReducedMieParams, theta) -> float | np.ndarray:
    """dGamma_MIE/dOmega in Gamma_0 per steradian at polar angle theta from the motion axis."""
    out = _angular(p.rho, p.beta, theta)
    return float(out) if np.ndim(out) == 0 else out


def mie_total_rate(p: ReducedMieParams) -> float:
    """Closed-form excitation rate, (2/3) beta^2 (1 + 1/rho)^2 (rho - 1)^3, in Gamma_0.

    This is the published total-rate expression. It does not equal the
    solid-angle integral of mie_angular_rate; see angular_integral_analytic
    and rate_discrepancy_ratio.
    """
    if p.rho < 1.0:
        return 0.0
    return (2.0 / 3.0) * p.beta**2 * (1.0 + 1.0 / p.rho) ** 2 * (p.rho - 1.0) ** 3


def angular_integral_analytic(p: ReducedMieParams) -> float:
    """Exact solid-angle integral of mie_angular_rate: (2 pi/3) beta^2 (rho-1)^3 (1 + rho^-2)."""
    if p.rho < 1.0:
        return 0.0
    return (2.0 * math.pi / 3.0) * p.beta**2 * (p.rho - 1.0) ** 3 * (1.0 + p.rho**-2)


def rate_discrepancy_ratio(rho: float) -> float:
    """angular_integral_analytic / mie_total_rate = pi (1 + rho^-2) / (1 + rho^-1)^2.

    Defined for every rho > 0 (the Heaviside gates cancel in the ratio).
    """
    return math.pi * (1.0 + rho**-2) / (1.0 + 1.0 / rho) ** 2


def mie_total_rate_quadrature(p: ReducedMieParams, q: QuadratureSpec | None = None) -> float:
    q = q or QuadratureSpec()
    if p.rho < 1.0:
        return 0.0
    return float(solid_angle_integrate(lambda t, _phi: _angular(p.rho, p.beta, t), q))


def mie_multilevel_angular(transitions: Sequence[TransitionSpec], beta: float, theta) -> float | np.ndarray:
    """Sum over levels of the single-transition distribution, each scaled by its Gamma_s.

    omega_ratio of each transition is omega_s / omega_cm, so its rho is 1/omega_ratio.
    """
    if not transitions:
        raise ValueError("need at least one transition")
    total = 0.0
    for tr in transitions:
        total = total + tr.gamma_s * _angular(1.0 / tr.omega_ratio, beta, theta)
    return float(total) if np.ndim(total) == 0 else total


def mie_polar_profile(p: ReducedMieParams, n_theta: int) -> SpectrumTable:
    """Angular distribution on a uniform theta grid over [0, pi], normalized to its on-axis value."""
    if n_theta < 2:
        raise ValueError(f"n_theta must be >= 2, got {n_theta}")
    if p.rho <= 1.0:
        raise EmptySpectrumError(f"no one-photon emission for rho = {p.rho} <= 1")
    theta = np.linspace(0.0, np.pi, n_theta)
    vals = _angular(p.rho, p.beta, theta)
    on_axis = _angular(p.rho, p.beta, 0.0)
    return SpectrumTable("theta", theta, {"normalized": vals / on_axis}, units="dGamma/dOmega(theta=0)")
