"""Finitely presented modules over ``Z`` and ``Z_(p)``.

A module is stored in Smith canonical form: ``factors`` is the invariant
factor chain ``d_1 | d_2 | ...`` (each >= 2; p-powers over ``Z_(p)``) and
``rank`` the free rank. Canonical generators are ordered torsion first,
then free.

Homomorphisms are integer matrices of shape ``(target.ngens,
source.ngens)``; column ``j`` is the image of source generator ``j``.
Over ``Z_(p)`` every map is a unit multiple of an integer matrix, so
integer matrices lose nothing for kernels, images and cokernels. All
internal computations run over ``Z`` and are localized at the end.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Iterator, Optional, Sequence, Tuple

from .rings import (
    GENERIC,
    INTEGERS,
    RingMismatchError,
    RingSpec,
    SpclSet,
    maximal,
)
from .smith import Matrix, diagonal, left_kernel, matmul, smith_form, transpose


class InvalidHomError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    """Cokernel of ``matrix`` (rows are relations among ``ngens`` generators)."""

    ring: RingSpec
    matrix: Tuple[Tuple[int, ...], ...]
    ngens: int

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.matrix)
        for r in rows:
            if len(r) != self.ngens:
                raise ValueError(f"relation {r} has {len(r)} entries, expected {self.ngens}")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def from_rows(cls, ring: RingSpec, rows: Sequence[Sequence[int]], ngens: Optional[int] = None):
        if ngens is None:
            if not rows:
                raise ValueError("empty relation list needs an explicit generator count")
            ngens = len(rows[0])
        return cls(ring, tuple(map(tuple, rows)), ngens)


@dataclass(frozen=True)
class FpModule:
    ring: RingSpec = INTEGERS
    rank: int = 0
    factors: Tuple[int, ...] = ()

    def __post_init__(self):
        fs = tuple(int(d) for d in self.factors)
        object.__setattr__(self, "factors", fs)
        if self.rank < 0:
            raise ValueError("negative rank")
        for d in fs:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
            if self.ring.is_local and self.ring.valuation_part(d) != d:
                raise ValueError(f"{d} is not a power of {self.ring.p}")
        for a, b in zip(fs, fs[1:]):
            if b % a:
                raise ValueError(f"factors {fs} do not form a divisibility chain")

    @property
    def ngens(self) -> int:
        return len(self.factors) + self.rank

    @property
    def orders(self) -> Tuple[int, ...]:
        """Order of each canonical generator; 0 marks a free generator."""
        return self.factors + (0,) * self.rank

    @property
    def is_zero(self) -> bool:
        return self.ngens == 0

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def order(self) -> Optional[int]:
        return prod(self.factors) if self.rank == 0 else None

    def relations(self) -> Matrix:
        n = self.ngens
        return [[d if j == i else 0 for j in range(n)] for i, d in enumerate(self.factors)]

    def presentation(self) -> Presentation:
        return Presentation.from_rows(self.ring, self.relations(), self.ngens)

    def reduce(self, vec: Sequence[int]) -> Tuple[int, ...]:
        return tuple(x % d if d else x for x, d in zip(vec, self.orders))

    def elements(self) -> Iterator[Tuple[int, ...]]:
        if self.rank:
            raise ValueError("infinite module has no element list")
        return itertools.product(*(range(d) for d in self.factors))

    def to_json(self) -> dict:
        return {"rank": self.rank, "factors": list(self.factors)}

    def __str__(self):
        parts = [f"Z/{d}" for d in self.factors]
        if self.rank:
            base = "R" if self.ring.is_local else "Z"
            parts.append(base if self.rank == 1 else f"{base}^{self.rank}")
        return " + ".join(parts) if parts else "0"


def zero(ring: RingSpec = INTEGERS) -> FpModule:
    return FpModule(ring)


def free(ring: RingSpec, rank: int) -> FpModule:
    return FpModule(ring, rank)


def cyclic(ring: RingSpec, n: int) -> FpModule:
    """``R/nR``; ``n = 0`` gives ``R``."""
    return from_cyclics(ring, [n])


def _same_ring(*mods):
    rings = {m.ring for m in mods}
    if len(rings) > 1:
        raise RingMismatchError(" vs ".join(sorted(map(str, rings))))


# -- canonicalization -------------------------------------------------------


def _canonicalize(ring: RingSpec, rows: Sequence[Sequence[int]], n: int):
    """Canonical form of ``Z^n / rows`` localized to ``ring``.

    Returns ``(module, P, S)``: ``P`` (canon x n) sends old generators to
    canonical coordinates, ``S`` (n x canon) sends canonical generators to
    old coordinates.
    """
    D, _, V, Vi = smith_form(rows, n)
    diag = diagonal(D, n)
    torsion, free_idx = [], []
    for k, d in enumerate(diag):
        if d == 0:
            free_idx.append(k)
        else:
            f = ring.valuation_part(d)
            if f >= 2:
                torsion.append((k, f))
    kept = [(k, f) for k, f in torsion] + [(k, 0) for k in free_idx]
    P = [[(V[i][k] % f) if f else V[i][k] for i in range(n)] for k, f in kept]
    S = [[Vi[k][i] for k, _ in kept] for i in range(n)]
    module = FpModule(ring, len(free_idx), tuple(f for _, f in torsion))
    return module, P, S


def _canonical_only(ring: RingSpec, rows: Sequence[Sequence[int]], n: int) -> FpModule:
    D, *_ = smith_form(rows, n, transforms=False)
    diag = diagonal(D, n)
    rank = sum(1 for d in diag if d == 0)
    factors = tuple(f for f in (ring.valuation_part(d) for d in diag if d) if f >= 2)
    return FpModule(ring, rank, factors)


def smith_normalize(p: Presentation) -> FpModule:
    return _canonical_only(p.ring, p.matrix, p.ngens)


def from_cyclics(ring: RingSpec, orders: Sequence[int]) -> FpModule:
    """Canonical form of ``R/o_1 + R/o_2 + ...`` (order 0 means free)."""
    n = len(orders)
    rows = [[o if j == i else 0 for j in range(n)] for i, o in enumerate(orders) if o]
    return _canonical_only(ring, rows, n)


# -- homomorphisms ----------------------------------------------------------


@dataclass(frozen=True)
class ModuleHom:
    source: FpModule
    target: FpModule
    matrix: Tuple[Tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        _same_ring(self.source, self.target)
        m, n = self.target.ngens, self.source.ngens
        rows = self.matrix
        if not rows and m:
            rows = tuple((0,) * n for _ in range(m))
        if len(rows) != m or any(len(r) != n for r in rows):
            raise InvalidHomError(f"matrix shape must be {m}x{n}")
        t_orders, s_orders = self.target.orders, self.source.orders
        reduced = tuple(
            tuple((int(x) % t) if t else int(x) for x in row) for row, t in zip(rows, t_orders)
        )
        for j, d in enumerate(s_orders):
            if not d:
                continue
            for i, t in enumerate(t_orders):
                x = reduced[i][j]
                if (t and (d * x) % t) or (not t and x):
                    raise InvalidHomError(
                        f"generator {j} of order {d} cannot map to {x} in coordinate {i} "
                        f"(order {t or 'inf'})"
                    )
        object.__setattr__(self, "matrix", reduced)

    def columns(self) -> Matrix:
        """Images of the source generators, one row each."""
        return transpose(self.matrix, self.source.ngens) if self.matrix else [[] for _ in range(self.source.ngens)]

    def __call__(self, vec: Sequence[int]) -> Tuple[int, ...]:
        img = [sum(a * b for a, b in zip(row, vec)) for row in self.matrix]
        return self.target.reduce(img)

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for row in self.matrix for x in row)

    def to_json(self) -> list:
        return [list(r) for r in self.matrix]


def identity_hom(m: FpModule) -> ModuleHom:
    n = m.ngens
    return ModuleHom(m, m, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def zero_hom(a: FpModule, b: FpModule) -> ModuleHom:
    return ModuleHom(a, b)


def compose(g: ModuleHom, f: ModuleHom) -> ModuleHom:
    """``g o f``."""
    if f.target != g.source:
        raise InvalidHomError("composition of non-composable maps")
    return ModuleHom(f.source, g.target, _mat(g.matrix, f.matrix, g.target.ngens, f.source.ngens))


def _mat(a, b, rows: int, cols: int) -> Tuple[Tuple[int, ...], ...]:
    if not rows:
        return ()
    if not cols or not b:
        return tuple((0,) * cols for _ in range(rows))
    return tuple(map(tuple, matmul(a, b)))


def scalar_hom(m: FpModule, x: int) -> ModuleHom:
    n = m.ngens
    return ModuleHom(m, m, tuple(tuple(x if i == j else 0 for j in range(n)) for i in range(n)))


def hom_equal(f: ModuleHom, g: ModuleHom) -> bool:
    return f.source == g.source and f.target == g.target and f.matrix == g.matrix


# -- kernels, cokernels, submodules -----------------------------------------


def _submodule(ring: RingSpec, rel: Sequence[Sequence[int]], n: int, gens: Sequence[Sequence[int]]):
    """Canonical form of the submodule of ``Z^n/rel`` spanned by ``gens``.

    Returns ``(K, incl)`` with ``incl`` (n x K.ngens) in ambient coordinates.
    """
    gens = [list(g) for g in gens if any(g)]
    s = len(gens)
    if s == 0:
        return FpModule(ring), [[] for _ in range(n)]
    stacked = gens + [[-x for x in r] for r in rel]
    lk = left_kernel(stacked, n)
    rel_k = [row[:s] for row in lk if any(row[:s])]
    K, _, S = _canonicalize(ring, rel_k, s)
    if K.ngens == 0:
        return K, [[] for _ in range(n)]
    incl = matmul(transpose(gens), S)
    return K, incl


def _kernel(ring, src_rel, m, images, tgt_rel, n_t):
    """Kernel of the map ``Z^m/src_rel -> Z^n_t/tgt_rel`` given by ``images`` rows."""
    if m == 0:
        return FpModule(ring), []
    stacked = [list(r) for r in images] + [[-x for x in r] for r in tgt_rel]
    lk = left_kernel(stacked, n_t)
    xs = [row[:m] for row in lk]
    return _submodule(ring, src_rel, m, xs)


def kernel(f: ModuleHom) -> Tuple[FpModule, ModuleHom]:
    src, tgt = f.source, f.target
    K, incl = _kernel(src.ring, src.relations(), src.ngens, f.columns(), tgt.relations(), tgt.ngens)
    return K, ModuleHom(K, src, tuple(map(tuple, incl)))


def cokernel(f: ModuleHom) -> Tuple[FpModule, ModuleHom]:
    tgt = f.target
    rows = tgt.relations() + [r for r in f.columns() if any(r)]
    C, P, _ = _canonicalize(tgt.ring, rows, tgt.ngens)
    return C, ModuleHom(tgt, C, tuple(map(tuple, P)))


def cokernel_with_section(f: ModuleHom):
    """Cokernel, its projection, and lifts of its generators (target x C matrix)."""
    tgt = f.target
    rows = tgt.relations() + [r for r in f.columns() if any(r)]
    C, P, S = _canonicalize(tgt.ring, rows, tgt.ngens)
    return C, ModuleHom(tgt, C, tuple(map(tuple, P))), S


def image(f: ModuleHom) -> Tuple[FpModule, ModuleHom]:
    tgt = f.target
    K, incl = _submodule(tgt.ring, tgt.relations(), tgt.ngens, f.columns())
    return K, ModuleHom(K, tgt, tuple(map(tuple, incl)))


def is_injective(f: ModuleHom) -> bool:
    return kernel(f)[0].is_zero


def is_surjective(f: ModuleHom) -> bool:
    return cokernel(f)[0].is_zero


# -- direct sums ------------------------------------------------------------


def _block_relations(mods: Sequence[FpModule]) -> Tuple[Matrix, int]:
    n = sum(m.ngens for m in mods)
    rows, off = [], 0
    for m in mods:
        for r in m.relations():
            rows.append([0] * off + r + [0] * (n - off - m.ngens))
        off += m.ngens
    return rows, n


def direct_sum(a: FpModule, b: FpModule) -> FpModule:
    _same_ring(a, b)
    return from_cyclics(a.ring, a.orders + b.orders)


def direct_sum_maps(a: FpModule, b: FpModule):
    """``(a + b, inc_a, inc_b, proj_a, proj_b)``."""
    _same_ring(a, b)
    rows, n = _block_relations([a, b])
    S_mod, P, S = _canonicalize(a.ring, rows, n)
    na = a.ngens
    inc_a = ModuleHom(a, S_mod, tuple(tuple(r[:na]) for r in P))
    inc_b = ModuleHom(b, S_mod, tuple(tuple(r[na:]) for r in P))
    proj_a = ModuleHom(S_mod, a, tuple(map(tuple, S[:na])))
    proj_b = ModuleHom(S_mod, b, tuple(map(tuple, S[na:])))
    return S_mod, inc_a, inc_b, proj_a, proj_b


# -- support, associated primes, section functor -----------------------------


def support(m: FpModule) -> SpclSet:
    if m.rank:
        return SpclSet.spec(m.ring)
    primes = set()
    for d in m.factors:
        primes.update(m.ring.primes_of(d))
    return SpclSet.of(m.ring, primes)


def ass_primes(m: FpModule) -> frozenset:
    out = {GENERIC} if m.rank else set()
    for d in m.factors:
        out.update(maximal(q) for q in m.ring.primes_of(d))
    return frozenset(out)


def w_part(ring: RingSpec, d: int, w: SpclSet) -> int:
    """Largest divisor of ``d`` whose primes all lie in ``w``."""
    out = 1
    for q in ring.primes_of(d):
        if w.contains_prime(q):
            while d % (out * q) == 0:
                out *= q
    return out


def gamma_w(m: FpModule, w: SpclSet):
    """``(G, inclusion, M/G, projection)`` for ``G`` the sections supported in ``w``."""
    if m.ring != w.ring:
        raise RingMismatchError(f"{m.ring} vs {w.ring}")
    if w.generic:
        z = FpModule(m.ring)
        return m, identity_hom(m), z, zero_hom(m, z)
    gens = []
    for i, d in enumerate(m.factors):
        dw = w_part(m.ring, d, w)
        if dw > 1:
            gens.append([d // dw if j == i else 0 for j in range(m.ngens)])
    G, incl = _submodule(m.ring, m.relations(), m.ngens, gens)
    inc = ModuleHom(G, m, tuple(map(tuple, incl)))
    Q, proj = cokernel(inc)
    return G, inc, Q, proj


def torsion_submodule(m: FpModule):
    return gamma_w(m, SpclSet.all_maximals(m.ring))


# -- Hom and Ext ------------------------------------------------------------


def hom_group(a: FpModule, b: FpModule) -> FpModule:
    _same_ring(a, b)
    orders = []
    for s in a.orders:
        for t in b.orders:
            if s and t:
                orders.append(gcd(s, t))
            elif not s:
                orders.append(t)
            # Hom(R/s, R) = 0
    return from_cyclics(a.ring, orders)


def ext_group(a: FpModule, b: FpModule) -> FpModule:
    """``Ext^1(a, b)``."""
    _same_ring(a, b)
    orders = []
    for s in a.factors:
        for t in b.orders:
            orders.append(gcd(s, t) if t else s)
    return from_cyclics(a.ring, orders)


def ext_presentation(right: FpModule, left: FpModule):
    """Ext^1(right, left) as ``+_i left / r_i left`` over the torsion generators of ``right``.

    Returns ``(E, S)`` where ``S`` lifts a canonical class of ``E`` to the
    stacked cocycle coordinates (one copy of ``left`` per torsion generator).
    """
    _same_ring(right, left)
    nl = left.ngens
    s = len(right.factors)
    n = s * nl
    rows = []
    lrel = left.relations()
    for i, r in enumerate(right.factors):
        off = i * nl
        for row in lrel:
            rows.append([0] * off + row + [0] * (n - off - nl))
        for j in range(nl):
            rows.append([r if k == off + j else 0 for k in range(n)])
    E, _, S = _canonicalize(left.ring, rows, n)
    return E, S


def class_vector(e: FpModule, index) -> Tuple[int, ...]:
    """Decode a class given as a coordinate tuple or a mixed-radix integer."""
    if isinstance(index, int):
        if e.rank:
            raise ValueError("integer class index needs a finite Ext group")
        total = prod(e.factors)
        if not 0 <= index < total:
            raise IndexError(f"class index {index} out of range [0, {total})")
        out = []
        for d in reversed(e.factors):
            index, c = divmod(index, d)
            out.append(c)
        return tuple(reversed(out))
    vec = tuple(int(x) for x in index)
    if len(vec) != e.ngens:
        raise IndexError(f"class has {len(vec)} coordinates, Ext group has {e.ngens}")
    for x, d in zip(vec, e.orders):
        if d and not 0 <= x < d:
            raise IndexError(f"coordinate {x} out of range for Z/{d}")
    return vec
