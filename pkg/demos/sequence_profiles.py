"""Dimension profiles of decreasing-sequence sets.

The set {0} u {n^-p : n >= 1} has a window-dimension with a closed form:
under a power-law window of exponent theta the value is theta/(p+theta).
This script sweeps a few (p, theta) pairs, runs the certified estimator
down a geometric scale grid, and prints the bracket against the formula
so you can watch the convergence (and see how theta -> 1 approaches the
box dimension 1/(p+1)).
"""

import argparse
import math

from scaledim.estimator import dimension_profile
from scaledim.scalefun import PowerLaw
from scaledim.setmodels import SequenceSet

LOG2 = math.log(2.0)


def get_args():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--depth", type=int, default=400,
                        help="finest scale as -log2(delta) (default 400)")
    parser.add_argument("--tol", type=float, default=1e-3,
                        help="bisection tolerance (default 1e-3)")
    return parser.parse_args()


def main():
    args = get_args()
    grid = [-k * LOG2 for k in range(args.depth // 10, args.depth + 1, args.depth // 10)]
    print(f"scale grid: log2 delta from {grid[0]/LOG2:.0f} to {grid[-1]/LOG2:.0f}")
    print(f"{'p':>4} {'theta':>6} {'formula':>9} {'bracket':>22} {'mid err':>9}")
    for p in (0.5, 1.0, 2.0):
        for theta in (0.2, 0.5, 0.8):
            true = theta / (p + theta)
            prof = dimension_profile(SequenceSet(p), PowerLaw(theta), grid, tol=args.tol)
            lo, hi = prof.lower_estimate, prof.upper_estimate
            mid = 0.5 * (lo + hi)
            print(f"{p:4.1f} {theta:6.1f} {true:9.5f} [{lo:9.5f}, {hi:9.5f}] {abs(mid-true):9.2e}")
    print()
    print("box dimension check (theta=1 window): expect 1/(p+1)")
    for p in (0.5, 1.0, 2.0):
        prof = dimension_profile(SequenceSet(p), PowerLaw(0.999), grid[:4], tol=args.tol)
        print(f"  p={p}: upper estimate {prof.upper_estimate:.4f}  target {1/(p+1):.4f}")


if __name__ == "__main__":
    main()
