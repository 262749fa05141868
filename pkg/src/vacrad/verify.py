"""Self-test: every reproducible number and shape claim as a pass/fail check."""

from __future__ import annotations

import math

import numpy as np

from vacrad import commands, dce, mie, oracle, planar
from vacrad.core import ReducedMieParams
from vacrad.export import VerificationReport, render_table
from vacrad.quadrature import QuadratureSpec, polarization_tensor_averages, solid_angle_integrate

CLOSURE_X = (0.1, 0.25, 0.5, 0.75, 0.9)


def _gl_rate(pol, n=8):
    """Gauss-Legendre on [0, 1] of the frequency spectrum; exact for the degree-8 integrand."""
    u, w = np.polynomial.legendre.leggauss(n)
    x = 0.5 * (u + 1.0)
    return 0.5 * float(np.sum(w * dce.dce_frequency_spectrum(x, pol))) / (45.0 * math.pi)


def check_rates(rep: VerificationReport):
    r = dce.dce_rates()
    rep.add("dce.gamma_total", 23.0 / (5670.0 * math.pi), r.gamma_total, 1e-12)
    rep.add("dce.tm_te_ratio", 27.0 / 19.0, r.tm_te_ratio, 1e-12)
    te, tm = _gl_rate("te"), _gl_rate("tm")
    rep.add("dce.tm_te_ratio.quadrature", 27.0 / 19.0, tm / te, 1e-12)
    rep.add("dce.gamma_total.quadrature", 23.0 / (5670.0 * math.pi), te + tm, 1e-12)
    rep.add("dce.rate_additivity", 0.0, r.gamma_te + r.gamma_tm - r.gamma_total, 1e-15)


def check_closure(rep: VerificationReport, q: QuadratureSpec):
    worst = 0.0
    for x in CLOSURE_X:
        for pol in ("te", "tm"):
            integral = solid_angle_integrate(lambda t, _p: dce.dce_angular_spectrum(x, t, pol), q)
            got = 3.0 / (4.0 * math.pi) * integral
            want = dce.dce_frequency_spectrum(x, pol)
            worst = max(worst, abs(got - want) / want)
    rep.add("dce.angular_to_frequency_closure.max_rel_err", 0.0, worst, 1e-10, passed=worst <= 1e-10)


def check_oracle(rep: VerificationReport, q: QuadratureSpec, n_grid: int):
    xs = np.linspace(0.1, 0.9, n_grid)
    thetas = np.linspace(0.0, math.pi, n_grid)
    worst = 0.0
    for x in xs:
        for pol in ("te", "tm"):
            got = oracle.angular_spectrum_bruteforce(float(x), thetas, pol, q)
            want = dce.dce_angular_spectrum(x, thetas, pol)
            worst = max(worst, float(np.max(np.abs(got - want) / want)))
    rep.add(f"oracle.angular_bruteforce_{n_grid}x{n_grid}.max_rel_err", 0.0, worst, 1e-8, passed=worst <= 1e-8)
    ta = polarization_tensor_averages(q)
    r2err = float(np.max(np.abs(ta.rank2 - (2.0 / 3.0) * np.eye(3))))
    rep.add("oracle.rank2_minus_two_thirds_identity", 0.0, r2err, 1e-10, passed=r2err <= 1e-10)
    rep.add("oracle.rank3_norm", 0.0, ta.rank3_norm, 1e-10, passed=ta.rank3_norm <= 1e-10)
    rep.add("oracle.C1", 4.0 / 15.0, ta.c1, 1e-10, passed=abs(ta.c1 - 4.0 / 15.0) <= 1e-10)
    rep.add("oracle.C2", -1.0 / 15.0, ta.c2, 1e-10, passed=abs(ta.c2 + 1.0 / 15.0) <= 1e-10)


def check_frequency_oracle(rep: VerificationReport, q: QuadratureSpec):
    for pol, want in (("te", 10.25), ("tm", 14.75)):
        got = oracle.frequency_spectrum_bruteforce(0.5, pol, q) / 0.5**6
        rep.add(f"oracle.frequency_bruteforce.{pol}(0.5)", want, got, 1e-8)


def check_symmetries(rep: VerificationReport):
    x = np.linspace(0.0, 1.0, 101)
    tot = dce.dce_total_spectrum(x)
    mirror = float(np.max(np.abs(tot - dce.dce_total_spectrum(1.0 - x))))
    rep.add("dce.total_mirror_symmetry.max_abs", 0.0, mirror, 1e-14, passed=mirror <= 1e-14)
    te_skew = dce.dce_frequency_spectrum(x, "te") - dce.dce_frequency_spectrum(1 - x, "te")
    tm_skew = dce.dce_frequency_spectrum(x, "tm") - dce.dce_frequency_spectrum(1 - x, "tm")
    upper = (x > 0.5 + 1e-9) & (x < 1.0)
    opposite = bool(np.all(te_skew[upper] > 0) and np.all(tm_skew[upper] < 0))
    rep.add("dce.te_up_tm_down_skew", True, opposite, passed=opposite)

    eps = 1e-6
    below = dce.angular_factor(1 / 6 - eps, 0.0, "tm") - dce.angular_factor(1 / 6 - eps, math.pi / 2, "tm")
    above = dce.angular_factor(1 / 6 + eps, 0.0, "tm") - dce.angular_factor(1 / 6 + eps, math.pi / 2, "tm")
    rep.add("dce.tm_cos2_coeff_below_1/6_positive", True, below > 0, passed=below > 0)
    rep.add("dce.tm_cos2_coeff_above_1/6_negative", True, above < 0, passed=above < 0)

    poly = 7 * x**2 - 9 * x + 7
    pole = max(
        float(np.max(np.abs(dce.angular_factor(x, 0.0, "te") - poly))),
        float(np.max(np.abs(dce.angular_factor(x, 0.0, "tm") - poly))),
    )
    rep.add("dce.pole_polarization_equality.max_abs", 0.0, pole, 1e-13, passed=pole <= 1e-13)


def check_mie(rep: VerificationReport, q: QuadratureSpec):
    theta = np.linspace(0.0, math.pi, 721)
    iso = mie.mie_angular_rate(ReducedMieParams(math.sqrt(2.0), 0.01), theta)
    rep.add("mie.isotropy_at_sqrt2.max_over_min", 1.0, float(iso.max() / iso.min()), 1e-13)
    p = ReducedMieParams(1.01, 0.01)
    ratio = mie.mie_angular_rate(p, 0.0) / mie.mie_angular_rate(p, math.pi / 2)
    rep.add("mie.anisotropy_rho1.01.axis_over_orthogonal", 2.0 / 1.01**2, ratio, 1e-10)

    def gap(rho):
        pp = ReducedMieParams(rho, 0.01)
        return mie.mie_angular_rate(pp, 0.0) - mie.mie_angular_rate(pp, math.pi / 2)

    lo, hi = 1.01, 3.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if gap(mid) > 0:
            lo = mid
        else:
            hi = mid
    rep.add("mie.crossover_rho", math.sqrt(2.0), 0.5 * (lo + hi), 1e-12)

    p = ReducedMieParams(1e3, 0.01)
    asym = mie.mie_total_rate(p) / (p.beta**2 * p.rho**3)
    rep.add("mie.asymptote_rate_over_beta2rho3", 2.0 / 3.0, asym, 4e-3)

    for rho in (1.1, 2.0, 5.0):
        p = ReducedMieParams(rho, 0.01)
        rep.add(
            f"mie.quadrature_vs_analytic(rho={rho})",
            mie.angular_integral_analytic(p),
            mie.mie_total_rate_quadrature(p, q),
            1e-10,
        )
    for rho in (2.0, 1e3):
        p = ReducedMieParams(rho, 0.01)
        rep.add(
            f"mie.angular_integral_over_total_rate(rho={rho:g})",
            mie.rate_discrepancy_ratio(rho),
            mie.angular_integral_analytic(p) / mie.mie_total_rate(p),
            informational=True,
        )


def check_planar(rep: VerificationReport):
    th0 = planar.emission_cone_boundary(0.7)
    want = math.degrees(math.asin(3.0 / 7.0))
    got = math.degrees(th0)
    rep.add("planar.cone_boundary_deg(0.7)", want, got, 0.01, passed=abs(got - want) <= 0.01)
    outside = np.linspace(th0, math.pi / 2, 400)[1:]
    leak = float(np.max(np.abs(planar.planar_angular_spectrum(0.7, outside, "te")))) + float(
        np.max(np.abs(planar.planar_angular_spectrum(0.7, outside, "tm")))
    )
    rep.add("planar.zero_outside_cone", 0.0, leak, passed=leak == 0.0)

    fine = np.linspace(0.0, th0, 200001)
    tm = planar.planar_angular_spectrum(0.7, fine, "tm")
    peak = math.degrees(fine[int(np.argmax(tm))])
    offset = math.degrees(th0) - peak
    rep.add("planar.tm_peak_offset_from_cone_deg(0.7)", 0.0, offset, 1.0, passed=abs(offset) <= 1.0)

    for x in (0.3, 0.5, 0.7):
        t = np.array([0.0, 1e-3, 1e-2])
        te = planar.planar_angular_spectrum(x, t, "te")
        tmv = planar.planar_angular_spectrum(x, t, "tm")
        rep.add(f"planar.te_local_max_at_pole(x={x})", True, bool(te[0] > te[1] > te[2]), passed=te[0] > te[1] > te[2])
        rep.add(
            f"planar.tm_local_min_at_pole(x={x})", True, bool(tmv[0] < tmv[1] < tmv[2]), passed=tmv[0] < tmv[1] < tmv[2]
        )


def check_sphere(rep: VerificationReport):
    s = dce.sphere_rate_comparison(1.0)
    rep.add("sphere.gamma_sphere", 1.0 / (10368.0 * math.pi**3), s.gamma_sphere, 1e-12)
    rep.add("sphere.atom_over_sphere", 23.0 * 10368.0 * math.pi**2 / 5670.0, s.atom_over_sphere, 1e-9)


def check_monte_carlo(rep: VerificationReport, n_samples: int, seed: int, workers: int):
    first = oracle.monte_carlo_spectrum(0.5, 0.0, "te", n_samples, seed, workers)
    again = oracle.monte_carlo_spectrum(0.5, 0.0, "te", n_samples, seed, workers)
    want = dce.dce_angular_spectrum(0.5, 0.0, "te")
    dev = abs(first.estimate - want) / first.std_error
    rep.add(f"mc.deviation_in_std_errors(n={n_samples},seed={seed})", 0.0, dev, 3.0, passed=dev <= 3.0)
    same = first.estimate == again.estimate and first.std_error == again.std_error
    rep.add("mc.bit_identical_rerun", True, same, passed=same)


def check_determinism(rep: VerificationReport):
    for name, build in commands.BUILDERS.items():
        p = commands.resolve(name, {"polar": True} if "polar" in commands.DEFAULTS[name] else {})
        a, b = build(p), build(p)
        same = _render(a) == _render(b)
        rep.add(f"determinism.{name}", True, same, passed=same)


def _render(out: commands.CommandOutput) -> str:
    parts = []
    for t in (out.table, out.polar):
        if t is not None:
            parts.append(render_table(t))
    if out.scalars:
        parts.append(repr(sorted(out.scalars.items())))
    return "\n".join(parts)


def build_report(level: str = "fast", seed: int = 42, workers: int = 1) -> VerificationReport:
    if level not in ("fast", "full"):
        raise ValueError(f"level must be 'fast' or 'full', got {level!r}")
    full = level == "full"
    q = QuadratureSpec(16, 32, 1e-12)
    rep = VerificationReport()
    check_rates(rep)
    check_closure(rep, q)
    check_oracle(rep, QuadratureSpec(16, 32, 1e-11), 9 if full else 3)
    if full:
        check_frequency_oracle(rep, QuadratureSpec(8, 16, 1e-11))
    check_symmetries(rep)
    check_mie(rep, q)
    check_planar(rep)
    check_sphere(rep)
    check_monte_carlo(rep, 10**6 if full else 10**5, seed, workers)
    check_determinism(rep)
    return rep
