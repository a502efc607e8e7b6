"""Tabulate the Serre criterion over every pair of base descriptors."""

import argparse
import itertools

from serrext.rings import RingSpec, SpclSet
from serrext.serrecat import ART, FG, TOR, SuppCat, serre_criterion


def bases(ring):
    out = [FG, ART, TOR, SuppCat(SpclSet.empty(ring)), SuppCat(SpclSet.all_maximals(ring)),
           SuppCat(SpclSet.spec(ring))]
    if not ring.is_local:
        out.insert(3, SuppCat(SpclSet.of(ring, [2])))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ring", default="Z_(2)")
    ap.add_argument("--budget", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    ring = RingSpec.parse(args.ring)
    print(f"{'first':<12}{'second':<12}{'outcome':<22}certificate")
    for c1, c2 in itertools.product(bases(ring), repeat=2):
        res = serre_criterion(c1, c2, ring, budget=args.budget, seed=args.seed, workers=args.workers)
        cert = res.certificate["witness_text"] if res.certificate else ""
        print(f"{str(c1):<12}{str(c2):<12}{res.outcome:<22}{cert}")


if __name__ == "__main__":
    main()
