"""Run the full check battery over the standard suite and print a summary.

One line per (group, subgroup) pair with the worst residual across all
checks; exits 1 if anything fails.  The whole run stays well under the
five-minute budget on a laptop.
"""

import argparse
import sys
import time

from wehrl.verify import run_checks, suite_pairs


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument(
        "--rho-samples", type=int, default=200,
        help="random density matrices per statistical check (default 200)",
    )
    args = parser.parse_args()

    failures = 0
    total_checks = 0
    t0 = time.perf_counter()
    for group, sub in suite_pairs():
        t1 = time.perf_counter()
        results = run_checks(group, sub, seed=args.seed, rho_samples=args.rho_samples)
        dt = time.perf_counter() - t1
        total_checks += len(results)
        bad = [r for r in results if not r.passed]
        failures += len(bad)
        worst = max(r.residual for r in results)
        status = "ok" if not bad else "FAIL(" + ",".join(r.name for r in bad) + ")"
        print(f"{str(group):12s} H={str(sub):20s} {len(results):3d} checks  "
              f"worst={worst:9.2e}  {dt:6.2f}s  {status}")
    elapsed = time.perf_counter() - t0
    print(f"\n{total_checks} checks, {failures} failures, {elapsed:.1f}s total")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
