"""Pair emission restricted by planar translation symmetry.

A half-space of in-phase oscillating atoms with the motion axis normal to the
interface only emits pairs whose wave vectors have opposite transverse parts,
x1 sin(theta1) = x2 sin(theta2) with phi2 = phi1 + pi, and equal polarizations.
Together with x1 + x2 = 1 this fixes the partner up to the sign of its
longitudinal component. By default the partner is taken in the same
(vacuum-side) half-space, cos(theta2) >= 0.

Angular shapes carry no phase-space Jacobian and have an arbitrary overall scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from vacrad.core import (
    Direction,
    PhotonMode,
    Polarization,
    direction_to_unit,
    polarization_vectors,
    unit_vectors,
)
from vacrad.dce import bracket_vectors

FORWARD = "forward"
BACKWARD = "backward"
BOTH = "both"
_BRANCHES = (FORWARD, BACKWARD, BOTH)


@dataclass(frozen=True)
class ConstrainedPair:
    mode1: PhotonMode
    mode2: PhotonMode | None
    exists: bool


def emission_cone_boundary(x: float) -> float | None:
    """Largest allowed polar angle (radians) for x > 1/2; None when every angle is allowed."""
    if not (0.0 < x < 1.0):
        raise ValueError(f"reduced frequency must lie in (0, 1), got {x}")
    arg = 1.0 / x - 1.0
    if arg >= 1.0:
        return None
    return math.asin(arg)


def _partner_angle(x, theta):
    """sin(theta2) = x sin(theta) / (1 - x); nan where no partner exists."""
    x = np.asarray(x, float)
    s2 = x * np.sin(theta) / (1.0 - x)
    # sin(theta) for theta near pi/2 can exceed the exact value by an ulp
    s2 = np.where((s2 > 1.0) & (s2 <= 1.0 + 4 * np.finfo(float).eps), 1.0, s2)
    return np.where(s2 <= 1.0, np.arcsin(np.minimum(s2, 1.0)), np.nan)


def partner_mode(mode1: PhotonMode, branch: str = FORWARD) -> ConstrainedPair:
    if branch not in (FORWARD, BACKWARD):
        raise ValueError(f"partner branch must be {FORWARD!r} or {BACKWARD!r}, got {branch!r}")
    x1 = mode1.x
    if not (0.0 < x1 < 1.0):
        raise ValueError(f"reduced frequency must lie in (0, 1), got {x1}")
    theta1 = mode1.dir.theta
    t2 = float(_partner_angle(x1, theta1))
    if math.isnan(t2):
        return ConstrainedPair(mode1, None, False)
    if branch == BACKWARD:
        t2 = math.pi - t2
    mode2 = PhotonMode(Direction(t2, mode1.dir.phi + math.pi), 1.0 - x1, mode1.pol)
    return ConstrainedPair(mode1, mode2, True)


def _shape_branch(x, theta, pol, sign):
    x, theta = np.broadcast_arrays(np.asarray(x, float), np.asarray(theta, float))
    t2 = _partner_angle(x, theta)
    ok = ~np.isnan(t2)
    t2 = np.where(ok, t2, 0.0)
    if sign < 0:
        t2 = np.pi - t2
    phi1 = np.zeros_like(theta)
    phi2 = phi1 + np.pi
    k1, k2 = unit_vectors(theta, phi1), unit_vectors(t2, phi2)
    i = 0 if Polarization.parse(pol) is Polarization.TE else 1
    e1 = polarization_vectors(theta, phi1)[i]
    e2 = polarization_vectors(t2, phi2)[i]
    proj = bracket_vectors(x, k1, e1, 1.0 - x, k2, e2)[..., 2]
    return np.where(ok, proj**2 * x**3 * (1 - x) ** 3, 0.0)


def planar_angular_spectrum(x, theta, pol, branch: str = FORWARD):
    """Unnormalized constrained angular shape |a.bracket|^2 x^3 (1-x)^3.

    theta must lie in [0, pi/2] (emission towards the vacuum side). Zero outside
    the emission cone. ``branch='both'`` sums the forward and backward partners.
    """
    if branch not in _BRANCHES:
        raise ValueError(f"branch must be one of {_BRANCHES}, got {branch!r}")
    x = np.asarray(x, float)
    if np.any((x <= 0) | (x >= 1)):
        raise ValueError("reduced frequency must lie in (0, 1)")
    theta = np.asarray(theta, float)
    if np.any((theta < 0) | (theta > np.pi / 2 + 1e-15)):
        raise ValueError("theta must lie in [0, pi/2]")
    out = 0.0
    if branch in (FORWARD, BOTH):
        out = out + _shape_branch(x, theta, pol, +1)
    if branch in (BACKWARD, BOTH):
        out = out + _shape_branch(x, theta, pol, -1)
    return float(out) if np.ndim(out) == 0 else out


def constraint_residual(pair: ConstrainedPair) -> tuple[float, float]:
    """(|a x (x1 k1 + x2 k2)|, |x1 + x2 - 1|) for an existing pair."""
    m1, m2 = pair.mode1, pair.mode2
    ksum = m1.x * direction_to_unit(m1.dir) + m2.x * direction_to_unit(m2.dir)
    return float(math.hypot(ksum[0], ksum[1])), abs(m1.x + m2.x - 1.0)
