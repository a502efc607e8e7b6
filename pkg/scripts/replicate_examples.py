"""Run every bundled scenario and print a step-by-step table."""

import argparse
import sys

from serrext.scenarios import SCENARIOS, run_scenario


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--budget", type=int, default=1000)
    args = ap.parse_args()
    ok = True
    for name in sorted(SCENARIOS):
        sc = run_scenario(name, seed=args.seed, budget=args.budget)
        ok &= sc.ok
        print(f"{name} over {sc.ring}: {'PASS' if sc.ok else 'FAIL'}")
        for st in sc.steps:
            mark = "ok" if st.ok else "XX"
            print(f"  [{mark}] {st.name:<40} {st.actual}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
