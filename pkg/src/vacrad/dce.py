"""Two-photon emission (microscopic dynamical Casimir effect) by an oscillating atom.

Reduced conventions:
  x = omega / omega_cm for a photon; the pair satisfies x1 + x2 = 1 in the
  stationary limit.
  Pair amplitudes drop the prefactor 2 pi alpha_0 v_m (omega_1 omega_2)^(1/2) / (L^3 c)
  except for the (x1 x2)^(1/2) part, and time is measured as t * omega_cm.
  Spectra and rates are dimensionless numbers times the unit tag exported next to
  each function (UNITS_*), so a single multiplication restores dimensions.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from vacrad.core import (
    MOTION_AXIS,
    Direction,
    PhotonMode,
    Polarization,
    TransitionSpec,
    direction_to_unit,
    polarization_vector,
)

UNITS_ANGULAR = "(alpha_0 v_m)^2 omega_cm^6/(60 pi^2 c^8)"  # per unit omega and solid angle
UNITS_FREQUENCY = "(alpha_0 v_m)^2 omega_cm^6/(45 pi c^8)"  # per unit omega
UNITS_TOTAL = "(alpha_0 a)^2 omega_cm^8/(pi c^8)"  # per unit omega; equals (alpha_0 v_m)^2 omega_cm^6/(pi c^8)
UNITS_RATE = "(alpha_0 a)^2 omega_cm^9/c^8"

# Reduced angular density times this factor is the polarization-summed solid-angle
# integral over the partner photon: f = (15 / 8 pi) * sum_pol2 \oint |a.bracket|^2 dOmega_2.
PARTNER_INTEGRAL_TO_F = 15.0 / (8.0 * math.pi)


class DegenerateTransitionError(ValueError):
    pass


# --- polarizability -----------------------------------------------------------


def polarizability(transitions: Sequence[TransitionSpec], omega: float = 0.0) -> float:
    """Isotropic polarizability (2/3) sum_e omega_e |d_e|^2 / (omega_e^2 - omega^2), hbar = 1.

    Frequencies share the units of TransitionSpec.omega_ratio.
    """
    total = 0.0
    for tr in transitions:
        w = tr.omega_ratio
        if w == 0:
            raise DegenerateTransitionError("transition frequency must be non-zero")
        if omega != 0.0 and math.isclose(w * w, omega * omega):
            raise DegenerateTransitionError(f"omega = {omega} sits on the resonance at {w}")
        total += w * tr.dipole_sq / (w * w - omega * omega)
    return (2.0 / 3.0) * total


def static_polarizability(transitions: Sequence[TransitionSpec]) -> float:
    return polarizability(transitions, 0.0)


# --- pair amplitude -------------------------------------------------------------


@dataclass(frozen=True)
class PairBracket:
    vec: np.ndarray

    def along_motion(self) -> float:
        return float(self.vec @ MOTION_AXIS)


@dataclass(frozen=True)
class PairAmplitude:
    value: complex
    delta_omega: float


def bracket_vectors(x1, k1, e1, x2, k2, e2) -> np.ndarray:
    """Vectorized pair bracket over trailing 3-vector axes.

    (e1.e2)(x1 k1 + x2 k2) + (k1 x e1) x e2 + (k2 x e2) x e1
    """
    x1 = np.asarray(x1, float)[..., None]
    x2 = np.asarray(x2, float)[..., None]
    dot = np.sum(e1 * e2, axis=-1)[..., None]
    return dot * (x1 * k1 + x2 * k2) + np.cross(np.cross(k1, e1), e2) + np.cross(np.cross(k2, e2), e1)


def pair_bracket(mode1: PhotonMode, mode2: PhotonMode) -> PairBracket:
    k1, k2 = direction_to_unit(mode1.dir), direction_to_unit(mode2.dir)
    e1 = polarization_vector(mode1.dir, mode1.pol)
    e2 = polarization_vector(mode2.dir, mode2.pol)
    return PairBracket(bracket_vectors(mode1.x, k1, e1, mode2.x, k2, e2))


def pair_amplitude(mode1: PhotonMode, mode2: PhotonMode, reduced_time: float) -> PairAmplitude:
    """First-order, rotating-wave pair amplitude at time t (in units of 1/omega_cm)."""
    if reduced_time <= 0:
        raise ValueError(f"reduced_time must be positive, got {reduced_time}")
    t = reduced_time
    dw = mode1.x + mode2.x - 1.0
    # sin(dw t/2)/dw without cancellation near resonance
    envelope = 0.5 * t * np.sinc(dw * t / (2.0 * np.pi))
    proj = pair_bracket(mode1, mode2).along_motion()
    value = -math.sqrt(mode1.x * mode2.x) * np.exp(0.5j * dw * t) * envelope * proj
    return PairAmplitude(complex(value), dw)


# --- stationary spectra -----------------------------------------------------------


def angular_factor(x, theta, pol) -> np.ndarray | float:
    """The polarization-dependent factor f(x, theta) of the angular spectrum."""
    x = np.asarray(x, float)
    c2 = np.cos(theta) ** 2
    if Polarization.parse(pol) is Polarization.TE:
        out = (1 - x) ** 2 * (5 * c2 + 2) + 5 * x
    else:
        out = (1 - x) * (1 - 6 * x) * c2 + (1 - x) ** 2 + 5
    return float(out) if np.ndim(out) == 0 else out


def tm_cos2_coefficient(x):
    """Coefficient of cos^2(theta) in the TM factor; changes sign at x = 1/6."""
    return (1 - np.asarray(x, float)) * (1 - 6 * np.asarray(x, float))


def te_cos2_coefficient(x):
    return 5 * (1 - np.asarray(x, float)) ** 2


def frequency_factor(x, pol) -> np.ndarray | float:
    """F(x): the solid-angle integral of f times 3/(4 pi)."""
    x = np.asarray(x, float)
    if Polarization.parse(pol) is Polarization.TE:
        out = 11 * x**2 - 7 * x + 11
    else:
        out = 9 * x**2 - 13 * x + 19
    return float(out) if np.ndim(out) == 0 else out


def _check_x(x):
    x = np.asarray(x, float)
    if np.any((x < 0) | (x > 1)) or np.any(~np.isfinite(x)):
        raise ValueError("reduced frequency must lie in [0, 1]")
    return x


def _weight(x):
    return x**3 * (1 - x) ** 3


def dce_angular_spectrum(x, theta, pol):
    """Photons per unit time, frequency and solid angle, in UNITS_ANGULAR."""
    x = _check_x(x)
    out = _weight(x) * angular_factor(x, theta, pol)
    return float(out) if np.ndim(out) == 0 else out


def dce_frequency_spectrum(x, pol):
    """Photons per unit time and frequency of one polarization, in UNITS_FREQUENCY."""
    x = _check_x(x)
    out = _weight(x) * frequency_factor(x, pol)
    return float(out) if np.ndim(out) == 0 else out


def dce_total_spectrum(x):
    """TE + TM spectrum, (2/3) x^3 (1-x)^3 [1 - (2/3) x (1-x)] in UNITS_TOTAL.

    Symmetric under x -> 1 - x. Numerically it equals (TE + TM)/45 expressed in
    UNITS_FREQUENCY.
    """
    x = _check_x(x)
    s = x * (1 - x)
    out = (2.0 / 3.0) * s**3 * (1.0 - (2.0 / 3.0) * s)
    return float(out) if np.ndim(out) == 0 else out


# --- rates ------------------------------------------------------------------------


def _beta_moment(k: int) -> Fraction:
    """Exact int_0^1 x^(3+k) (1-x)^3 dx = (3+k)! 3! / (7+k)!."""
    return Fraction(math.factorial(3 + k) * math.factorial(3), math.factorial(7 + k))


def _polynomial_rate_coefficient(pol) -> Fraction:
    """int_0^1 x^3 (1-x)^3 F(x) dx as an exact fraction."""
    if Polarization.parse(pol) is Polarization.TE:
        c0, c1, c2 = 11, -7, 11
    else:
        c0, c1, c2 = 19, -13, 9
    return c0 * _beta_moment(0) + c1 * _beta_moment(1) + c2 * _beta_moment(2)


@dataclass(frozen=True)
class DceRates:
    gamma_te: float
    gamma_tm: float
    gamma_total: float
    tm_te_ratio: float
    te_fraction: Fraction
    tm_fraction: Fraction


def dce_rates() -> DceRates:
    """Total pair-photon emission rates in UNITS_RATE.

    gamma = (1/45 pi) int_0^1 x^3 (1-x)^3 F(x) dx per polarization, which gives
    gamma_TE = 19/(11340 pi), gamma_TM = 27/(11340 pi) and gamma_total = 23/(5670 pi).
    te_fraction / tm_fraction hold the exact rational parts (gamma = fraction / pi).
    """
    te = _polynomial_rate_coefficient(Polarization.TE) / 45
    tm = _polynomial_rate_coefficient(Polarization.TM) / 45
    total = te + tm
    return DceRates(
        gamma_te=float(te) / math.pi,
        gamma_tm=float(tm) / math.pi,
        gamma_total=float(total) / math.pi,
        tm_te_ratio=float(tm / te),
        te_fraction=te,
        tm_fraction=tm,
    )


@dataclass(frozen=True)
class SphereComparison:
    gamma_sphere: float
    atom_over_sphere: float


def sphere_rate_comparison(alpha_sphere_over_alpha0: float = 1.0) -> SphereComparison:
    """Small perfectly reflecting sphere vs. atom, both in UNITS_RATE with alpha_0 as reference.

    gamma_sphere = ratio^2 / (10368 pi^3); atom_over_sphere uses the atomic total rate.
    """
    r = alpha_sphere_over_alpha0
    if not r > 0:
        raise ValueError(f"polarizability ratio must be positive, got {r}")
    gamma_sphere = r**2 / (10368.0 * math.pi**3)
    return SphereComparison(gamma_sphere, dce_rates().gamma_total / gamma_sphere)


def mode(theta: float, phi: float, x: float, pol) -> PhotonMode:
    """Shorthand constructor."""
    return PhotonMode(Direction(theta, phi), x, Polarization.parse(pol))
