"""Product quadrature on the unit sphere and polarization-summed tensor averages.

Gauss-Legendre in cos(theta) times the uniform rule in phi. Every integrand in
this package is a low-order polynomial in the components of k-hat, so the rule
is exact once the node counts pass a small threshold; the node-doubling check
guards against integrands where that is not the case.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from vacrad.core import polarization_vectors, unit_vectors


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class QuadratureSpec:
    n_theta: int = 16
    n_phi: int = 32
    tolerance: float = 1e-12

    def __post_init__(self):
        if self.n_theta < 8 or self.n_phi < 8:
            raise ValueError(f"need at least 8 nodes per axis, got {self.n_theta}x{self.n_phi}")
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")

    def doubled(self) -> QuadratureSpec:
        return QuadratureSpec(2 * self.n_theta, 2 * self.n_phi, self.tolerance)


@lru_cache(maxsize=32)
def _nodes(n_theta: int, n_phi: int):
    u, wu = np.polynomial.legendre.leggauss(n_theta)
    phi = 2 * np.pi * np.arange(n_phi) / n_phi
    theta = np.arccos(u)
    T, P = np.meshgrid(theta, phi, indexing="ij")
    W = np.outer(wu, np.full(n_phi, 2 * np.pi / n_phi))
    for a in (T, P, W):
        a.setflags(write=False)
    return T, P, W


def sphere_nodes(q: QuadratureSpec):
    """(theta, phi, weight) arrays of shape (n_theta, n_phi); weights sum to 4 pi."""
    return _nodes(q.n_theta, q.n_phi)


def _integrate_once(f, q: QuadratureSpec):
    """Integral and integral of |f|; trailing component axes are kept."""
    T, P, W = sphere_nodes(q)
    vals = np.asarray(f(T, P), dtype=float)
    integral = np.tensordot(W, vals, axes=([0, 1], [0, 1]))
    magnitude = np.tensordot(W, np.abs(vals), axes=([0, 1], [0, 1]))
    return integral, magnitude


def _rel_change(a, b, magnitude) -> float:
    # integrals that cancel to zero are judged against the integral of |f|
    scale = max(float(np.max(magnitude)), np.finfo(float).tiny)
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))) / scale)


def solid_angle_integrate(f, q: QuadratureSpec | None = None):
    """Integral of f(theta, phi) over the unit sphere.

    ``f`` takes broadcastable arrays of polar and azimuthal angles and returns
    values of shape theta.shape (+ optional trailing component axes). The result
    is computed at q and at twice the node counts; if the two disagree by more
    than q.tolerance, relative to the largest component of the integral of |f|,
    ConvergenceError is raised. The refined value is returned.
    """
    q = q or QuadratureSpec()
    coarse, _ = _integrate_once(f, q)
    fine, magnitude = _integrate_once(f, q.doubled())
    change = _rel_change(coarse, fine, magnitude)
    if change > q.tolerance:
        raise ConvergenceError(
            f"solid-angle quadrature not converged: relative change {change:.3e} "
            f"> tolerance {q.tolerance:.1e} at {q.n_theta}x{q.n_phi} nodes"
        )
    return fine[()] if np.ndim(fine) == 0 else fine


@dataclass(frozen=True)
class TensorAverages:
    rank2: np.ndarray
    rank3_norm: float
    c1: float
    c2: float
    rank4: np.ndarray


def _polarization_sums(theta, phi):
    k = unit_vectors(theta, phi)
    te, tm = polarization_vectors(theta, phi)
    return k, (te, tm)


def polarization_tensor_averages(q: QuadratureSpec | None = None) -> TensorAverages:
    """Direction averages of polarization-summed products of eps and k-hat.

    rank2[i,j]       = sum_pol <eps_i eps_j>
    rank3[i,j,m]     = sum_pol <k_i eps_j eps_m>
    rank4[i,j,m,n]   = sum_pol <k_m k_n eps_i eps_j>

    c1, c2 are the least-squares coefficients of rank4 on
    delta_ij delta_mn and delta_im delta_jn + delta_in delta_jm.
    """
    q = q or QuadratureSpec()

    def rank2(t, p):
        _, eps = _polarization_sums(t, p)
        return sum(np.einsum("...i,...j->...ij", e, e) for e in eps)

    def rank3(t, p):
        k, eps = _polarization_sums(t, p)
        return sum(np.einsum("...i,...j,...m->...ijm", k, e, e) for e in eps)

    def rank4(t, p):
        k, eps = _polarization_sums(t, p)
        return sum(np.einsum("...m,...n,...i,...j->...ijmn", k, k, e, e) for e in eps)

    norm = 4 * np.pi
    r2 = solid_angle_integrate(rank2, q) / norm
    r3 = solid_angle_integrate(rank3, q) / norm
    r4 = solid_angle_integrate(rank4, q) / norm

    d = np.eye(3)
    basis_a = np.einsum("ij,mn->ijmn", d, d)
    basis_b = np.einsum("im,jn->ijmn", d, d) + np.einsum("in,jm->ijmn", d, d)
    A = np.stack([basis_a.ravel(), basis_b.ravel()], axis=1)
    (c1, c2), *_ = np.linalg.lstsq(A, r4.ravel(), rcond=None)
    return TensorAverages(rank2=r2, rank3_norm=float(np.max(np.abs(r3))), c1=float(c1), c2=float(c2), rank4=r4)
