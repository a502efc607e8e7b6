"""Time canonicalization on random integer matrices of growing size."""

import argparse
import random
import time

from serrext.fpmod import Presentation, smith_normalize
from serrext.rings import INTEGERS


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=2000)
    ap.add_argument("--bound", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print(f"{'size':<8}{'matrices':>10}{'seconds':>10}{'us/matrix':>12}")
    for n in (2, 3, 4, 6, 8, 12):
        mats = [[[rng.randint(-args.bound, args.bound) for _ in range(n)] for _ in range(n)]
                for _ in range(args.count)]
        t0 = time.perf_counter()
        for a in mats:
            smith_normalize(Presentation.from_rows(INTEGERS, a, n))
        dt = time.perf_counter() - t0
        print(f"{n}x{n:<6}{args.count:>10}{dt:>10.2f}{1e6 * dt / args.count:>12.1f}")


if __name__ == "__main__":
    main()
