"""Why the lower window-dimension is not finitely stable.

Two Cantor-type schedules E and F alternate sparse (ratio 1/5) and dense
(ratio 1/3) construction regimes out of phase.  Whenever one of them has
just finished a sparse run its own cover cost is cheap -- a single level
of construction intervals certifies a small exponent.  The union never
gets that break: a mass-distribution certificate shows its cover cost
stays bounded below at every checkpoint scale r_n, so

    lower-dim(E u F)  >  max(lower-dim E, lower-dim F).

This script rebuilds the pair, prints the sparse-end exponents of each
member against the sparse ceiling, and then the union's certified floor
at each checkpoint.
"""

import argparse
import math

import numpy as np

from scaledim.covers import ScaleWindow, cover_cost, schedule_mass_constant
from scaledim.estimator import critical_exponent
from scaledim.scalefun import PowerLaw
from scaledim.setmodels import build_stability_pair

LOG2 = math.log(2.0)


def get_args():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--levels", type=int, default=3,
                        help="number of checkpoint scales to build (default 3)")
    return parser.parse_args()


def main():
    args = get_args()
    pair = build_stability_pair(PowerLaw(0.5), args.levels)
    e_set, f_set, union = pair.e_set, pair.f_set, pair.union

    ceiling = 10.0 * LOG2 / (9.0 * math.log(5.0))
    print(f"sparse ceiling: {ceiling:.4f}")
    print("member exponents at their own sparse-end scales:")
    for n, log_end in pair.sparse_end_scales():
        member = e_set if n % 2 == 0 else f_set
        name = "E" if n % 2 == 0 else "F"
        level = 10 ** (pair.state.k[n] + 1) - 1
        single = level * LOG2 / (-member.log_length(level))
        print(f"  n={n} ({name}, level {level}): single-level exponent {single:.4f}")

    s_cert = 2.0 * LOG2 / math.log(15.0) - 0.02
    print(f"\nunion certificate at s = {s_cert:.4f} (just under the mixed rate):")
    for i, log_r in enumerate(pair.state.log_r_seq):
        window = ScaleWindow(2.0 * log_r, log_r)
        log_c = np.logaddexp(
            schedule_mass_constant(e_set, window, s_cert),
            schedule_mass_constant(f_set, window, s_cert),
        ) - LOG2
        cost = cover_cost(union, window, s_cert)
        print(f"  r_{i} (log r = {log_r:.4g}): mass floor {-log_c:.4g}, "
              f"cover cost lower {cost.log_cost_lower:.4g}")

    print("\nunion exponent at the members' sparse-end scales (no dip):")
    for n, log_end in pair.sparse_end_scales()[:args.levels]:
        ce = critical_exponent(union, PowerLaw(0.5), log_end, tol=1e-3)
        print(f"  n={n}: union bracket [{ce.s_lower:.4f}, {ce.s_upper:.4f}]")


if __name__ == "__main__":
    main()
