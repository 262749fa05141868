"""Where does the constrained TM shape peak, and how does that depend on the partner branch?

    python3 scripts/planar_branch_study.py

Prints, for several x > 1/2, the cone edge and the TM peak angle for the
forward partner (default), the backward partner and their sum.
"""

import math

import numpy as np

from vacrad import planar


def peak_deg(x, branch, n=200001):
    th0 = planar.emission_cone_boundary(x)
    theta = np.linspace(0.0, th0, n)
    shape = planar.planar_angular_spectrum(x, theta, "tm", branch)
    return math.degrees(theta[int(np.argmax(shape))])


def main():
    print(f"{'x':>5} {'theta0':>9} {'forward':>9} {'backward':>9} {'both':>9}")
    for x in (0.55, 0.6, 0.7, 0.8, 0.9, 0.95):
        th0 = math.degrees(planar.emission_cone_boundary(x))
        peaks = [peak_deg(x, b) for b in (planar.FORWARD, planar.BACKWARD, planar.BOTH)]
        print(f"{x:5.2f} {th0:9.4f} " + " ".join(f"{p:9.4f}" for p in peaks))


if __name__ == "__main__":
    main()
