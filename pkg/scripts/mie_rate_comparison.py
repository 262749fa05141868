"""Compare the closed-form one-photon rate with the solid-angle integral of the angular rate.

    python3 scripts/mie_rate_comparison.py

The two agree in their large-rho scaling but differ by pi (1 + rho^-2) / (1 + rho^-1)^2
at finite rho; the quadrature column checks the angular integral independently.
"""

from vacrad.core import ReducedMieParams
from vacrad.mie import angular_integral_analytic, mie_total_rate, mie_total_rate_quadrature, rate_discrepancy_ratio


def main(beta=0.01):
    print(f"{'rho':>8} {'closed':>14} {'quadrature':>14} {'analytic':>14} {'ratio':>8}")
    for rho in (1.1, 1.5, 2.0, 5.0, 10.0, 100.0, 1000.0):
        p = ReducedMieParams(rho, beta)
        print(
            f"{rho:8g} {mie_total_rate(p):14.6e} {mie_total_rate_quadrature(p):14.6e} "
            f"{angular_integral_analytic(p):14.6e} {rate_discrepancy_ratio(rho):8.4f}"
        )


if __name__ == "__main__":
    main()
