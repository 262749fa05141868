"""Brute-force routes to the DCE spectra, independent of the closed-form polynomials.

The angular spectrum is rebuilt by integrating |a . bracket|^2 over the
partner photon's direction and summing over its polarization, using only the
polarization basis from vacrad.core and the pair bracket. The energy delta is
collapsed analytically (partner frequency 1 - x), which leaves

    dGamma/(dx dOmega) = x^3 (1-x)^3 * (15 / 8 pi) * sum_pol2 \\oint |a.B|^2 dOmega_2

in the same units as dce.dce_angular_spectrum. The 15/(8 pi) is the ratio of
the pair-rate prefactor 1/(32 pi^3) to the angular unit 1/(60 pi^2).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from vacrad.core import Polarization, polarization_vectors, unit_vectors
from vacrad.dce import PARTNER_INTEGRAL_TO_F, bracket_vectors
from vacrad.quadrature import ConvergenceError, QuadratureSpec, sphere_nodes

# angular density (60 pi^2 units) -> frequency density (45 pi units): 45 pi / 60 pi^2
_ANGULAR_TO_FREQUENCY_UNITS = 3.0 / (4.0 * math.pi)

MC_CHUNK = 1 << 16


def _check_open_x(x):
    if not (0.0 < x < 1.0):
        raise ValueError(f"reduced frequency must lie in (0, 1), got {x}")


def _photon1(theta1, phi1, pol):
    k1 = unit_vectors(theta1, phi1)
    te, tm = polarization_vectors(theta1, phi1)
    return k1, te if Polarization.parse(pol) is Polarization.TE else tm


def _partner_sum(x, k1, e1, k2, basis2):
    """sum over partner polarizations of (a . bracket)^2, broadcasting photon-1 over photon-2 axes."""
    total = 0.0
    for e2 in basis2:
        proj = bracket_vectors(x, k1, e1, 1.0 - x, k2, e2)[..., 2]
        total = total + proj**2
    return total


def _partner_integral(x, theta1, phi1, pol, q: QuadratureSpec):
    """Fixed-rule partner integral for arrays of photon-1 angles."""
    theta1 = np.asarray(theta1, float)
    phi1 = np.asarray(phi1, float)
    k1, e1 = _photon1(theta1, phi1, pol)
    T2, P2, W2 = sphere_nodes(q)
    k2 = unit_vectors(T2, P2)
    basis2 = polarization_vectors(T2, P2)
    # photon-1 axes first, then the (n_theta, n_phi) partner grid
    extra = (None,) * 2
    k1b = k1[(..., *extra, slice(None))]
    e1b = e1[(..., *extra, slice(None))]
    g = _partner_sum(x, k1b, e1b, k2, basis2)
    return np.sum(g * W2, axis=(-2, -1))


def _converged(coarse, fine, tol, what):
    scale = max(float(np.max(np.abs(fine))), np.finfo(float).tiny)
    change = float(np.max(np.abs(coarse - fine))) / scale
    if change > tol:
        raise ConvergenceError(f"{what}: relative change {change:.3e} > tolerance {tol:.1e}")
    return fine


def angular_spectrum_bruteforce(x: float, theta, pol, q: QuadratureSpec | None = None, phi: float = 0.0):
    """Angular DCE density by explicit partner integration (units of dce.UNITS_ANGULAR)."""
    q = q or QuadratureSpec()
    _check_open_x(x)
    coarse = _partner_integral(x, theta, phi, pol, q)
    fine = _partner_integral(x, theta, phi, pol, q.doubled())
    integral = _converged(coarse, fine, q.tolerance, "partner integral")
    out = x**3 * (1 - x) ** 3 * PARTNER_INTEGRAL_TO_F * integral
    return float(out) if np.ndim(out) == 0 else out


def _double_integral(x, pol, q: QuadratureSpec):
    T1, P1, W1 = sphere_nodes(q)
    total = 0.0
    # one polar ring of photon-1 directions at a time keeps memory bounded
    for i in range(T1.shape[0]):
        total += float(np.sum(W1[i] * _partner_integral(x, T1[i], P1[i], pol, q)))
    return total


def frequency_spectrum_bruteforce(x: float, pol, q: QuadratureSpec | None = None) -> float:
    """Frequency DCE density by double solid-angle quadrature (units of dce.UNITS_FREQUENCY)."""
    q = q or QuadratureSpec()
    _check_open_x(x)
    coarse = _double_integral(x, pol, q)
    fine = _double_integral(x, pol, q.doubled())
    integral = _converged(np.asarray(coarse), np.asarray(fine), q.tolerance, "double quadrature")
    return float(_ANGULAR_TO_FREQUENCY_UNITS * x**3 * (1 - x) ** 3 * PARTNER_INTEGRAL_TO_F * integral)


@dataclass(frozen=True)
class MonteCarloEstimate:
    estimate: float
    std_error: float
    n_samples: int
    seed: int
    workers: int
    chunk_size: int = MC_CHUNK


def _mc_chunk(args):
    x, k1, e1, n, seed_seq = args
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    u = rng.random(n)
    v = rng.random(n)
    theta2 = np.arccos(1.0 - 2.0 * u)
    phi2 = 2.0 * np.pi * v
    k2 = unit_vectors(theta2, phi2)
    return _partner_sum(x, k1, e1, k2, polarization_vectors(theta2, phi2))


def monte_carlo_spectrum(
    x: float, theta: float, pol, n_samples: int, seed: int, workers: int = 1
) -> MonteCarloEstimate:
    """Angular DCE density with the partner direction sampled uniformly on the sphere.

    Samples are drawn in fixed-size chunks, each from its own child of
    SeedSequence(seed), and reassembled in chunk order, so the output depends
    only on (seed, n_samples) and not on ``workers``.
    """
    if n_samples < 1000:
        raise ValueError(f"n_samples must be >= 1000, got {n_samples}")
    _check_open_x(x)
    k1, e1 = _photon1(theta, 0.0, pol)
    sizes = [MC_CHUNK] * (n_samples // MC_CHUNK)
    if n_samples % MC_CHUNK:
        sizes.append(n_samples % MC_CHUNK)
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = [(x, k1, e1, n, s) for n, s in zip(sizes, children)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_mc_chunk, jobs))
    else:
        parts = [_mc_chunk(j) for j in jobs]
    g = np.concatenate(parts)
    scale = x**3 * (1 - x) ** 3 * PARTNER_INTEGRAL_TO_F * 4.0 * np.pi
    est = scale * float(np.mean(g))
    err = scale * float(np.std(g, ddof=1)) / math.sqrt(g.size)
    return MonteCarloEstimate(est, err, int(g.size), int(seed), int(workers))
