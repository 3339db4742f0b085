"""Compare minimiser outcomes for the vacuum fiducial vs random fiducials.

For vacuum frames the minimum Wehrl entropy is exactly zero (attained on
coherent states); for a generic fiducial the frame is still tight but the
observed minimum stays an order of magnitude or more away from zero.
This script collects that evidence; it proves nothing by itself.
"""

import argparse
import sys

from wehrl import parse_group, parse_generators, subgroup_closure
from wehrl.minimize import MinimizerConfig, scan_fiducials


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--group", required=True, help="e.g. Z4 or Z2xZ2")
    parser.add_argument("--subgroup", default=None,
                        help="generator list like '2' or '1,0;0,1' (default: whole group)")
    parser.add_argument("--trials", type=int, default=8,
                        help="number of random fiducials (default 8)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    group = parse_group(args.group)
    sub = None
    if args.subgroup is not None:
        sub = subgroup_closure(group, parse_generators(group, args.subgroup))
    config = MinimizerConfig(seed=args.seed)
    scan = scan_fiducials(group, sub, trials=args.trials, config=config)

    print(f"group {scan['group']}  subgroup {scan['subgroup']}  seed {scan['seed']}")
    print(f"{'fiducial':12s} {'best entropy':>14s} {'overlap':>10s} {'iters':>6s} {'conv':>5s}")
    for row in scan["rows"]:
        print(f"{row['fiducial_kind']:12s} {row['best_entropy']:14.6e} "
              f"{row['overlap']:10.6f} {row['iterations']:6d} {str(row['converged']):>5s}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
