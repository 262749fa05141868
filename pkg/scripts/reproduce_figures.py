"""Write every figure table and the quoted rates into one output directory.

    python3 scripts/reproduce_figures.py [outdir]

Each run goes through the CLI entry point, so every CSV comes with its JSON
manifest. Nothing is plotted; the *_polar.csv files hold (theta, r) pairs.
"""

import sys
from pathlib import Path

from vacrad import cli

RUNS = {
    # one-photon angular patterns: below, at and above the isotropy point
    "mie_rho1.01": ["mie-angular", "--rho", "1.01", "--polar"],
    "mie_rho1.414": ["mie-angular", "--rho", "1.4142135623730951", "--polar"],
    "mie_rho3": ["mie-angular", "--rho", "3", "--polar"],
    # pair angular spectra at low, middle and high frequency
    "dce_angular_x0.1": ["dce-angular", "--x", "0.1", "--polar"],
    "dce_angular_x0.5": ["dce-angular", "--x", "0.5", "--polar"],
    "dce_angular_x0.9": ["dce-angular", "--x", "0.9", "--polar"],
    "dce_spectrum": ["dce-spectrum", "--n-x", "201"],
    "dce_rates": ["dce-rates"],
    # constrained shapes for a planar distribution of atoms
    "planar_x0.3": ["planar-spectrum", "--x", "0.3", "--polar"],
    "planar_x0.7": ["planar-spectrum", "--x", "0.7", "--n-theta", "901", "--polar"],
}


def main(outdir="results"):
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    for stem, argv in RUNS.items():
        code = cli.run([*argv, "--out", str(out / f"{stem}.csv")])
        print(f"{stem}: exit {code}")
        if code:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(main(*sys.argv[1:]))
