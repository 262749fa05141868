"""Reduced parameters, emission geometry and the TE/TM polarization basis.

Everything downstream works in dimensionless units: frequencies are measured
in units of the mechanical frequency (or the transition frequency for the
one-photon process), velocities in units of c. The motion axis is fixed to +z.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

MOTION_AXIS = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True)
class ReducedMieParams:
    """rho = omega_cm / omega_0, beta = v_m / c (with v_m = omega_cm * a)."""

    rho: float
    beta: float

    def __post_init__(self):
        if not np.isfinite(self.rho) or self.rho <= 0:
            raise ValueError(f"rho must be positive, got {self.rho}")
        if not np.isfinite(self.beta) or self.beta < 0:
            raise ValueError(f"beta must be non-negative, got {self.beta}")
        if self.beta >= 1:
            raise ValueError(f"beta must be < 1 (non-relativistic motion), got {self.beta}")


@dataclass(frozen=True)
class Direction:
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.theta <= np.pi):
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not np.isfinite(self.phi):
            raise ValueError(f"phi must be finite, got {self.phi}")
        # Store the azimuth reduced to [0, 2pi).
        object.__setattr__(self, "phi", float(np.mod(self.phi, 2 * np.pi)))


class Polarization(enum.Enum):
    TE = "te"
    TM = "tm"

    @classmethod
    def parse(cls, label: str | Polarization) -> Polarization:
        if isinstance(label, cls):
            return label
        try:
            return cls(str(label).lower())
        except ValueError:
            raise ValueError(f"unknown polarization {label!r}; expected 'te' or 'tm'") from None


@dataclass(frozen=True)
class PhotonMode:
    """Emission direction, reduced frequency x = omega / omega_cm and polarization."""

    dir: Direction
    x: float
    pol: Polarization

    def __post_init__(self):
        if not (0.0 <= self.x <= 1.0):
            raise ValueError(f"reduced frequency must lie in [0, 1], got {self.x}")
        object.__setattr__(self, "pol", Polarization.parse(self.pol))


@dataclass(frozen=True)
class TransitionSpec:
    """One ground-to-excited transition.

    omega_ratio is omega_s / omega_cm; gamma_s and dipole_sq are in arbitrary but
    mutually consistent units.
    """

    omega_ratio: float
    gamma_s: float = 1.0
    dipole_sq: float = 1.0

    def __post_init__(self):
        if self.omega_ratio <= 0:
            raise ValueError(f"omega_ratio must be positive, got {self.omega_ratio}")
        if self.gamma_s < 0:
            raise ValueError(f"gamma_s must be non-negative, got {self.gamma_s}")
        if self.dipole_sq < 0:
            raise ValueError(f"dipole_sq must be non-negative, got {self.dipole_sq}")


def direction_to_unit(dir: Direction) -> np.ndarray:
    st = np.sin(dir.theta)
    return np.array([st * np.cos(dir.phi), st * np.sin(dir.phi), np.cos(dir.theta)])


def unit_vectors(theta, phi) -> np.ndarray:
    """Vectorized k-hat; output shape is broadcast(theta, phi).shape + (3,)."""
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)


def polarization_vectors(theta, phi) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized (eps_TE, eps_TM).

    eps_TE = (-sin phi, cos phi, 0) is the normalized z-hat x k-hat, so it is
    perpendicular to the plane containing k-hat and the motion axis; at the
    poles the same formula is kept as the convention. eps_TM = k-hat x eps_TE.
    (eps_TE, eps_TM, k-hat) is a right-handed triad.
    """
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    k = unit_vectors(theta, phi)
    te = np.stack([-np.sin(phi), np.cos(phi), np.zeros_like(phi)], axis=-1)
    tm = np.cross(k, te)
    return te, tm


def polarization_basis(dir: Direction) -> tuple[np.ndarray, np.ndarray]:
    te, tm = polarization_vectors(dir.theta, dir.phi)
    return te, tm


def polarization_vector(dir: Direction, pol: Polarization) -> np.ndarray:
    te, tm = polarization_basis(dir)
    return te if Polarization.parse(pol) is Polarization.TE else tm


@dataclass
class SpectrumTable:
    """Sampled spectrum: one grid column plus named value columns sharing a unit tag."""

    grid_name: str
    grid: np.ndarray
    values: dict[str, np.ndarray]
    units: str

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float).reshape(-1)
        if np.any(np.diff(self.grid) <= 0):
            raise ValueError("grid must be strictly increasing")
        cols = {}
        for name, col in self.values.items():
            col = np.asarray(col, dtype=float).reshape(-1)
            if col.shape != self.grid.shape:
                raise ValueError(f"column {name!r} has {col.size} values for {self.grid.size} grid points")
            if np.any(col < 0):
                raise ValueError(f"column {name!r} has negative entries")
            cols[name] = col
        self.values = cols

    @property
    def columns(self) -> list[str]:
        return [self.grid_name, *self.values]

    def rows(self):
        data = [self.grid, *self.values.values()]
        for i in range(self.grid.size):
            yield [float(c[i]) for c in data]

    def __len__(self):
        return self.grid.size
