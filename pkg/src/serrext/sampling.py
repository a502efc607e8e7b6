"""Seeded random generators for modules, homs and supports.

Default distribution: primes from {2, 3, 5, 7}, exponents <= 4, ranks <= 3,
atom multiplicities <= 3. Every search takes a ``random.Random`` so runs
are reproducible from a single seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd
from typing import Tuple

from .fpmod import FpModule, ModuleHom, from_cyclics
from .rings import RingSpec, SpclSet
from .symmod import SymModule, cyclic_atom, free_atom, prufer_atom, rationals_atom


@dataclass(frozen=True)
class Distribution:
    primes: Tuple[int, ...] = (2, 3, 5, 7)
    max_exp: int = 4
    max_rank: int = 3
    max_mult: int = 3
    max_cyclics: int = 3

    def primes_for(self, ring: RingSpec) -> Tuple[int, ...]:
        if ring.is_local:
            return (ring.p,)
        return self.primes


DEFAULT = Distribution()


def random_fpmodule(rng: random.Random, ring: RingSpec, dist: Distribution = DEFAULT,
                    allow_free: bool = True) -> FpModule:
    primes = dist.primes_for(ring)
    orders = [0] * (rng.randint(0, dist.max_rank) if allow_free else 0)
    for _ in range(rng.randint(0, dist.max_cyclics)):
        orders.append(rng.choice(primes) ** rng.randint(1, dist.max_exp))
    return from_cyclics(ring, orders)


def random_finite_module(rng: random.Random, ring: RingSpec, dist: Distribution = DEFAULT) -> FpModule:
    return random_fpmodule(rng, ring, dist, allow_free=False)


def atom_choices(ring: RingSpec, dist: Distribution = DEFAULT) -> list:
    primes = dist.primes_for(ring)
    atoms = [free_atom(), rationals_atom()]
    for q in primes:
        atoms += [cyclic_atom(q, k) for k in range(1, dist.max_exp + 1)]
        atoms.append(prufer_atom(q))
    return atoms


def random_symmodule(rng: random.Random, ring: RingSpec, dist: Distribution = DEFAULT,
                     max_kinds: int = 3) -> SymModule:
    choices = atom_choices(ring, dist)
    picked = rng.sample(choices, rng.randint(1, min(max_kinds, len(choices))))
    return SymModule(ring, tuple((a, rng.randint(1, dist.max_mult)) for a in picked))


def random_entry(rng: random.Random, src_order: int, tgt_order: int, bound: int = 6) -> int:
    """A matrix entry compatible with the two generator orders (0 = free)."""
    if src_order and not tgt_order:
        return 0
    if not tgt_order:
        return rng.randint(-bound, bound)
    step = tgt_order // gcd(src_order, tgt_order) if src_order else 1
    return step * rng.randrange(tgt_order // step)


def random_hom(rng: random.Random, a: FpModule, b: FpModule) -> ModuleHom:
    rows = tuple(
        tuple(random_entry(rng, s, t) for s in a.orders) for t in b.orders
    )
    return ModuleHom(a, b, rows)


def random_spcl(rng: random.Random, ring: RingSpec, dist: Distribution = DEFAULT) -> SpclSet:
    r = rng.random()
    if r < 0.1:
        return SpclSet.spec(ring)
    if r < 0.2:
        return SpclSet.all_maximals(ring)
    primes = dist.primes_for(ring)
    return SpclSet.of(ring, [q for q in primes if rng.random() < 0.5])


def rng_for(seed: int) -> random.Random:
    return random.Random(seed)
