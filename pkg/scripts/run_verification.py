#!/usr/bin/env python3
"""Run every property suite, print a summary table and optionally save the JSON."""
import argparse
import json
import time

from schwarz_regions.verification import (
    VerifyConfig,
    suite_attainment,
    suite_boundary,
    suite_lower_order,
    suite_membership,
    suite_peschl_equality,
    suite_peschl_strict,
    suite_root_solver,
    suite_rotation,
    suite_strictness,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-degree", type=int, default=6)
    ap.add_argument("--no-oracle", action="store_true", help="skip the brute-force boundary comparison")
    ap.add_argument("--json")
    args = ap.parse_args()

    cfg = VerifyConfig(trials=args.trials, seed=args.seed, max_degree=args.max_degree)
    suites = [
        suite_membership, suite_strictness, suite_attainment, suite_lower_order,
        suite_peschl_equality, suite_peschl_strict, suite_rotation, suite_root_solver,
        lambda c: suite_boundary(c, n=256, oracle=not args.no_oracle),
    ]
    rows = []
    print(f"{'suite':<16}{'trials':>8}{'fail':>6}{'worst':>12}  {'measure':<34}{'time':>7}")
    for fn in suites:
        t0 = time.perf_counter()
        res = fn(cfg)
        dt = time.perf_counter() - t0
        rows.append({**res.as_dict(), "seconds": dt})
        print(f"{res.name:<16}{res.trials:>8}{res.failures:>6}{res.worst:>12.3e}  {res.worst_label:<34}{dt:>6.1f}s")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
