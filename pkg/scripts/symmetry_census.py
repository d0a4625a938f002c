"""Count symmetric channels among all small channels with entries in {0, 1/4, ..., 1}.

Every instance is checked by both the partition search and the brute-force
oracle; the script exits non-zero if they ever disagree.

    python3 scripts/symmetry_census.py --rows 2 --cols 3
"""

import argparse
import itertools
import sys
import time
from fractions import Fraction

from chanlab import brute_force_is_symmetric, find_symmetry_partition, new_dense


def stochastic_rows(width, denom):
    for cut in itertools.product(range(denom + 1), repeat=width - 1):
        if sum(cut) <= denom:
            yield tuple(Fraction(v, denom) for v in cut + (denom - sum(cut),))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=2)
    ap.add_argument("--cols", type=int, default=3)
    ap.add_argument("--denom", type=int, default=4)
    args = ap.parse_args(argv)

    rows = list(stochastic_rows(args.cols, args.denom))
    domain = [str(i) for i in range(args.rows)]
    range_ = [f"y{j}" for j in range(args.cols)]
    total = symmetric = disagree = 0
    start = time.perf_counter()
    for matrix in itertools.product(rows, repeat=args.rows):
        ch = new_dense(domain, range_, matrix)
        fast = bool(find_symmetry_partition(ch))
        disagree += fast != bool(brute_force_is_symmetric(ch))
        symmetric += fast
        total += 1
    elapsed = time.perf_counter() - start
    print(f"rows={args.rows} cols={args.cols} denom={args.denom}")
    print(f"channels={total} symmetric={symmetric} disagreements={disagree} time={elapsed:.2f}s")
    return 1 if disagree else 0


if __name__ == "__main__":
    sys.exit(main())
