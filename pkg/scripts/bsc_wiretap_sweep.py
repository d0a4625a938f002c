"""Sweep the crossover probability of a BSC wiretap and print CSV.

For each p = k/steps in [0, 1/2] the adversary sees the input through
bsc(p)^c. Columns: exact guessing probability for a uniform input, exact
statistical distance between the views of two fixed inputs, a Monte Carlo
estimate of that distance and its 99% error bound.

    python3 scripts/bsc_wiretap_sweep.py --c 2 --steps 10 --n 20000
"""

import argparse
import csv
import sys
from fractions import Fraction

from chanlab import (
    Distribution,
    WiretapSetting,
    bsc,
    estimate_leakage_sd,
    input_guessing,
    leakage_sd,
    power,
)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--c", type=int, default=1, help="number of channel uses")
    ap.add_argument("--steps", type=int, default=10)
    ap.add_argument("--n", type=int, default=20000, help="samples per view")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)

    zeros, ones = "0" * args.c, "1" * args.c
    bits = [format(i, f"0{args.c}b") for i in range(2 ** args.c)]
    p0, p1 = Distribution.point(zeros), Distribution.point(ones)
    px = Distribution.uniform(bits)

    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["p", "guess", "sd_exact", "sd_mc", "bound"])
    for k in range(args.steps + 1):
        p = Fraction(k, 2 * args.steps)
        s = WiretapSetting(args.c, power(bsc(0), args.c), power(bsc(p), args.c))
        guess = input_guessing(s, px).cond_min_entropy_input
        exact = leakage_sd(s, p0, p1).sd_views
        mc = estimate_leakage_sd(s, p0, p1, n=args.n, seed=args.seed + k, workers=args.workers)
        out.writerow([p, f"{float(guess):.6f}", f"{float(exact):.6f}",
                      f"{mc.sd_views:.6f}", f"{float(mc.error_bound):.6f}"])
    return 0


if __name__ == "__main__":
    sys.exit(main())
