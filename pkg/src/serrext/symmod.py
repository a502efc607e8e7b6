"""Symbolic modules: finite direct sums of classified indecomposables.

Atoms are ``Free`` (the ring), ``Cyclic(p, k)`` (``R/p^k``), ``Prufer(p)``
(the injective hull of ``R/p``) and ``Rationals`` (the fraction field).
Infinite direct sums are not representable; anything that would need one
raises :class:`~serrext.rings.UnrepresentableError`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple

from .fpmod import FpModule, from_cyclics
from .rings import INTEGERS, RingMismatchError, RingSpec, SpclSet, UnrepresentableError, valuation

FREE, CYCLIC, PRUFER, RATIONALS = "Free", "Cyclic", "Prufer", "Rationals"
_KIND_ORDER = {FREE: 0, CYCLIC: 1, PRUFER: 2, RATIONALS: 3}


@dataclass(frozen=True)
class Atom:
    kind: str
    p: Optional[int] = None
    k: Optional[int] = None

    def __post_init__(self):
        if self.kind not in _KIND_ORDER:
            raise ValueError(f"unknown atom kind {self.kind!r}")
        if self.kind == CYCLIC and (self.p is None or self.k is None or self.k < 1):
            raise ValueError("Cyclic needs a prime and an exponent >= 1")
        if self.kind == PRUFER and self.p is None:
            raise ValueError("Prufer needs a prime")
        if self.kind in (FREE, RATIONALS) and (self.p is not None or self.k is not None):
            raise ValueError(f"{self.kind} takes no parameters")

    @property
    def is_torsion(self) -> bool:
        return self.kind in (CYCLIC, PRUFER)

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.p or 0, self.k or 0)

    def params(self) -> list:
        return [x for x in (self.p, self.k) if x is not None]

    def __str__(self):
        if self.kind == CYCLIC:
            return f"Cyclic({self.p},{self.k})"
        if self.kind == PRUFER:
            return f"Prufer({self.p})"
        return self.kind


def free_atom() -> Atom:
    return Atom(FREE)


def cyclic_atom(p: int, k: int) -> Atom:
    return Atom(CYCLIC, p, k)


def prufer_atom(p: int) -> Atom:
    return Atom(PRUFER, p)


def rationals_atom() -> Atom:
    return Atom(RATIONALS)


@dataclass(frozen=True)
class SymModule:
    ring: RingSpec = INTEGERS
    atoms: Tuple[Tuple[Atom, int], ...] = ()

    def __post_init__(self):
        counts: Counter = Counter()
        for atom, mult in self.atoms:
            if mult < 0:
                raise ValueError("negative multiplicity")
            if atom.p is not None and not self.ring.admits(atom.p):
                raise ValueError(f"{atom} is not a module over {self.ring}")
            counts[atom] += mult
        canon = tuple(sorted(((a, m) for a, m in counts.items() if m), key=lambda am: am[0].sort_key()))
        object.__setattr__(self, "atoms", canon)

    @classmethod
    def of(cls, ring: RingSpec, *atoms: Atom) -> "SymModule":
        return cls(ring, tuple((a, 1) for a in atoms))

    @classmethod
    def from_counts(cls, ring: RingSpec, counts: Dict[Atom, int]) -> "SymModule":
        return cls(ring, tuple(counts.items()))

    def counts(self) -> Counter:
        return Counter(dict(self.atoms))

    def count(self, kind: str) -> int:
        return sum(m for a, m in self.atoms if a.kind == kind)

    def atom_list(self) -> list:
        return [a for a, m in self.atoms for _ in range(m)]

    @property
    def is_zero(self) -> bool:
        return not self.atoms

    @property
    def size(self) -> int:
        return sum(m for _, m in self.atoms)

    def __add__(self, other: "SymModule") -> "SymModule":
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        return SymModule(self.ring, self.atoms + other.atoms)

    def to_json(self) -> dict:
        return {"ring": str(self.ring), "atoms": [[a.kind, *a.params(), m] for a, m in self.atoms]}

    @classmethod
    def from_json(cls, data: dict, ring: Optional[RingSpec] = None) -> "SymModule":
        ring = RingSpec.parse(data["ring"]) if "ring" in data else (ring or INTEGERS)
        atoms = []
        for entry in data["atoms"]:
            kind, *rest = entry
            if kind == CYCLIC:
                p, k, mult = rest
                atoms.append((Atom(CYCLIC, int(p), int(k)), int(mult)))
            elif kind == PRUFER:
                p, mult = rest
                atoms.append((Atom(PRUFER, int(p)), int(mult)))
            elif kind in (FREE, RATIONALS):
                (mult,) = rest
                atoms.append((Atom(kind), int(mult)))
            else:
                raise ValueError(f"unknown atom kind {kind!r}")
        return cls(ring, tuple(atoms))

    def __str__(self):
        if not self.atoms:
            return "0"
        return " + ".join(str(a) if m == 1 else f"{a}^{m}" for a, m in self.atoms)


def _atom_json(a: Atom) -> list:
    return [a.kind, *a.params()]


def _atom_from_json(entry) -> Atom:
    kind, *rest = entry
    return Atom(kind, *(int(x) for x in rest))


def zero_sym(ring: RingSpec) -> SymModule:
    return SymModule(ring)


def from_fp(m: FpModule) -> SymModule:
    """Primary decomposition of a finitely presented module."""
    atoms = [(free_atom(), m.rank)]
    for d in m.factors:
        for q in m.ring.primes_of(d):
            atoms.append((cyclic_atom(q, valuation(d, q)), 1))
    return SymModule(m.ring, tuple(atoms))


def to_fp(m: SymModule) -> FpModule:
    if not predicate(m, "fg"):
        raise ValueError(f"{m} is not finitely generated")
    orders = [0] * m.count(FREE)
    for a, mult in m.atoms:
        if a.kind == CYCLIC:
            orders += [a.p ** a.k] * mult
    return from_cyclics(m.ring, orders)


# -- predicates -------------------------------------------------------------


def _atom_is(atom: Atom, which: str) -> bool:
    if which == "fg":
        return atom.kind in (FREE, CYCLIC)
    if which in ("artinian", "torsion"):
        return atom.is_torsion
    raise ValueError(which)


def predicate(m: SymModule, which: str) -> bool:
    """fg / artinian / torsion / minimax / maxmini."""
    if which in ("minimax", "maxmini"):
        from .serrecat import ART, FG, ExtCat, member

        desc = ExtCat(FG, ART) if which == "minimax" else ExtCat(ART, FG)
        return member(m, desc).is_member
    return all(_atom_is(a, which) for a, _ in m.atoms)


def rational_dimension(m: SymModule) -> int:
    """``dim_Q (M tensor Q)``."""
    return m.count(FREE) + m.count(RATIONALS)


def sym_support(m: SymModule) -> SpclSet:
    if m.count(FREE) or m.count(RATIONALS):
        return SpclSet.spec(m.ring)
    return SpclSet.of(m.ring, {a.p for a, _ in m.atoms})


# -- functors ---------------------------------------------------------------


def _check_x(ring: RingSpec, x: int):
    if x == 0:
        raise ValueError("the zero ideal has no socle/torsion functor here")


def annihilator_submodule(m: SymModule, x: int) -> SymModule:
    """``(0 :_M x)``."""
    _check_x(m.ring, x)
    out: Counter = Counter()
    for a, mult in m.atoms:
        if not a.is_torsion or x % a.p:
            continue
        e = valuation(x, a.p)
        k = e if a.kind == PRUFER else min(a.k, e)
        out[cyclic_atom(a.p, k)] += mult
    return SymModule.from_counts(m.ring, out)


def socle_wrt(m: SymModule, x: int) -> SymModule:
    return annihilator_submodule(m, x)


def gamma_i(m: SymModule, x: int) -> SymModule:
    """The ``(x)``-torsion submodule."""
    _check_x(m.ring, x)
    return SymModule(m.ring, tuple((a, mult) for a, mult in m.atoms if a.is_torsion and x % a.p == 0))


def localize_invert(m: SymModule, x: int) -> SymModule:
    """``M[1/x]``."""
    _check_x(m.ring, x)
    out: Counter = Counter()
    for a, mult in m.atoms:
        if a.kind == FREE:
            if m.ring.is_local and x % m.ring.p == 0:
                out[rationals_atom()] += mult
            elif m.ring.valuation_part(x) == 1:
                out[a] += mult
            else:
                raise UnrepresentableError(f"{m.ring}[1/{x}] is not an atom")
        elif a.kind == RATIONALS:
            out[a] += mult
        elif x % a.p:
            out[a] += mult
    return SymModule.from_counts(m.ring, out)


def injective_hull(m: SymModule) -> SymModule:
    out: Counter = Counter()
    for a, mult in m.atoms:
        if a.kind in (FREE, RATIONALS):
            out[rationals_atom()] += mult
        else:
            out[prufer_atom(a.p)] += mult
    return SymModule.from_counts(m.ring, out)


def truncate(m: SymModule, k: int) -> FpModule:
    """``(0 :_M p^k)`` over ``Z_(p)`` as a finite module."""
    if not m.ring.is_local:
        raise ValueError("truncation is defined over Z_(p)")
    return to_fp(annihilator_submodule(m, m.ring.p ** k))


# -- symbolic short exact sequences -----------------------------------------

QMODZ = "Q/Z"


@dataclass(frozen=True)
class Piece:
    """One indecomposable building block ``0 -> left -> middle -> right -> 0``.

    ``right_qmodz`` counts copies of ``Q/Z`` over the integers, which is an
    infinite direct sum and therefore kept outside :class:`SymModule`.
    """

    left: Tuple[Atom, ...]
    middle: Tuple[Atom, ...]
    right: Tuple[Atom, ...]
    right_qmodz: int = 0


def atomic_pieces(ring: RingSpec, atom: Atom) -> list:
    """All catalogued extensions with middle ``atom`` (split pieces first)."""
    pieces = [Piece((atom,), (atom,), ()), Piece((), (atom,), (atom,))]
    if atom.kind == RATIONALS:
        if ring.is_local:
            pieces.append(Piece((free_atom(),), (atom,), (prufer_atom(ring.p),)))
        else:
            pieces.append(Piece((free_atom(),), (atom,), (), 1))
    return pieces


def catalogue_extensions(ring: RingSpec, left: Atom, right: Atom) -> list:
    """Non-split extensions of ``right`` by ``left`` whose middle is one atom."""
    out = []
    if left.kind == FREE and right.kind == PRUFER and ring.is_local:
        out.append(rationals_atom())
    if left.kind == CYCLIC and right.kind == CYCLIC and left.p == right.p:
        out.append(cyclic_atom(left.p, left.k + right.k))
    if left.kind == CYCLIC and right.kind == PRUFER and left.p == right.p:
        out.append(prufer_atom(left.p))
    if left.kind == FREE and right.kind == CYCLIC:
        out.append(free_atom())
    return out


def catalogue_subquotients(ring: RingSpec, atom: Atom) -> Tuple[list, list]:
    """Representative proper nonzero submodules and quotients of an atom."""
    subs, quots = [], []
    if atom.kind == FREE:
        subs.append(atom)
        if ring.is_local:
            quots.append(cyclic_atom(ring.p, 1))
    elif atom.kind == CYCLIC:
        for j in range(1, atom.k):
            subs.append(cyclic_atom(atom.p, j))
            quots.append(cyclic_atom(atom.p, j))
    elif atom.kind == PRUFER:
        subs.append(cyclic_atom(atom.p, 1))
        quots.append(atom)
    elif atom.kind == RATIONALS:
        subs.append(free_atom())
        if ring.is_local:
            quots.append(prufer_atom(ring.p))
    return subs, quots


@dataclass(frozen=True)
class SymSES:
    """A symbolic short exact sequence assembled from catalogued pieces."""

    ring: RingSpec
    pieces: Tuple[Piece, ...]

    def _sum(self, side: str) -> SymModule:
        c: Counter = Counter()
        for pc in self.pieces:
            for a in getattr(pc, side):
                c[a] += 1
        return SymModule.from_counts(self.ring, c)

    @property
    def left(self) -> SymModule:
        return self._sum("left")

    @property
    def middle(self) -> SymModule:
        return self._sum("middle")

    @property
    def right(self) -> SymModule:
        if self.right_qmodz:
            raise UnrepresentableError("right term contains Q/Z")
        return self._sum("right")

    @property
    def right_qmodz(self) -> int:
        return sum(pc.right_qmodz for pc in self.pieces)

    def right_description(self) -> str:
        base = self._sum("right")
        extra = f"(Q/Z)^{self.right_qmodz}" if self.right_qmodz > 1 else "Q/Z"
        if not self.right_qmodz:
            return str(base)
        return extra if base.is_zero else f"{base} + {extra}"

    def validate(self) -> None:
        for pc in self.pieces:
            if len(pc.middle) != 1:
                if pc.left or pc.right or pc.right_qmodz:
                    raise ValueError("unknown piece")
                continue
            (mid,) = pc.middle
            if pc in atomic_pieces(self.ring, mid):
                continue
            if len(pc.left) == 1 and len(pc.right) == 1 and mid in catalogue_extensions(self.ring, pc.left[0], pc.right[0]):
                continue
            raise ValueError(f"piece {pc} is not a catalogued extension")

    def to_json(self) -> dict:
        right = self._sum("right").to_json()
        out = {"left": self.left.to_json(), "middle": self.middle.to_json(), "right": right}
        if self.right_qmodz:
            out["right_unrepresentable"] = {"Q/Z": self.right_qmodz}
        out["pieces"] = [
            {
                "left": [_atom_json(a) for a in pc.left],
                "middle": [_atom_json(a) for a in pc.middle],
                "right": [_atom_json(a) for a in pc.right],
                "right_qmodz": pc.right_qmodz,
            }
            for pc in self.pieces
        ]
        return out

    @classmethod
    def from_json(cls, data: dict, ring: Optional[RingSpec] = None) -> "SymSES":
        """Rebuild from ``to_json`` output; call :meth:`validate` to re-check it."""
        ring = RingSpec.parse(data["middle"]["ring"]) if "ring" in data.get("middle", {}) else (ring or INTEGERS)
        pieces = tuple(
            Piece(
                tuple(_atom_from_json(a) for a in pc["left"]),
                tuple(_atom_from_json(a) for a in pc["middle"]),
                tuple(_atom_from_json(a) for a in pc["right"]),
                int(pc.get("right_qmodz", 0)),
            )
            for pc in data["pieces"]
        )
        return cls(ring, pieces)

    def __str__(self):
        return f"0 -> {self.left} -> {self.middle} -> {self.right_description()} -> 0"


def canonical_ses_r_q_prufer(ring: RingSpec) -> SymSES:
    """``0 -> R -> Q -> Prufer(p) -> 0`` over ``Z_(p)``."""
    if not ring.is_local:
        raise UnrepresentableError("over Z the cokernel of Z -> Q is Q/Z, an infinite sum")
    ses = SymSES(ring, (Piece((free_atom(),), (rationals_atom(),), (prufer_atom(ring.p),)),))
    ses.validate()
    return ses


def split_sym_ses(left: SymModule, right: SymModule) -> SymSES:
    pieces = [Piece((a,), (a,), ()) for a in left.atom_list()]
    pieces += [Piece((), (a,), (a,)) for a in right.atom_list()]
    return SymSES(left.ring, tuple(pieces))


def atoms_universe(ring: RingSpec, primes: Iterable[int] = (2, 3), max_exp: int = 2, torsion_only_prime: Optional[int] = None) -> list:
    """A finite list of atoms used for exhaustive checks."""
    if ring.is_local:
        primes = [ring.p]
    primes = [q for q in primes if ring.admits(q)]
    if torsion_only_prime is not None:
        q = torsion_only_prime
        return [cyclic_atom(q, k) for k in range(1, max_exp + 1)] + [prufer_atom(q)]
    out = [free_atom()]
    for q in primes:
        out += [cyclic_atom(q, k) for k in range(1, max_exp + 1)]
    out += [prufer_atom(q) for q in primes]
    out.append(rationals_atom())
    return sorted(out, key=Atom.sort_key)


def all_sym_modules(ring: RingSpec, atoms: list, max_atoms: int):
    """Every multiset of at most ``max_atoms`` atoms from ``atoms``."""
    from itertools import combinations_with_replacement

    for size in range(max_atoms + 1):
        for combo in combinations_with_replacement(atoms, size):
            yield SymModule.of(ring, *combo)
