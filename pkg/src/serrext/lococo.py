"""Condition (C_I) checks and local cohomology at the maximal ideal of Z_(p).

With ``I = (p)`` the Čech complex is ``0 -> M -> M[1/p] -> 0``, so
``H^0 = Γ_I(M)`` and ``H^1 = coker(M -> M[1/p])``. For an atom sum this
is one Prufer atom per free summand; every other atom contributes nothing
to ``H^1``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .fpmod import FpModule, cokernel, ext_group, from_cyclics, kernel, scalar_hom, torsion_submodule
from .rings import RingSpec
from .serrecat import (
    CONFIRMED,
    Descriptor,
    ExtCat,
    member,
    serre_criterion,
    sym_ext_witness,
)
from .symmod import (
    CYCLIC,
    FREE,
    PRUFER,
    RATIONALS,
    SymModule,
    all_sym_modules,
    atoms_universe,
    cyclic_atom,
    from_fp,
    gamma_i,
    prufer_atom,
    socle_wrt,
    to_fp,
)


class LococoError(ValueError):
    pass


@dataclass(frozen=True)
class LocalCohomologyResult:
    h0: SymModule
    h1: SymModule
    dim_input: int
    flag: str = ""

    @property
    def top(self) -> SymModule:
        return self.h1 if self.dim_input == 1 else self.h0

    def to_json(self) -> dict:
        out = {"h0": self.h0.to_json(), "h1": self.h1.to_json(), "dim": self.dim_input}
        if self.flag:
            out["flag"] = self.flag
        return out


def _require_local(ring: RingSpec):
    if not ring.is_local:
        raise LococoError(f"local cohomology is only realized over Z_(p), not {ring}")


def local_cohomology(m: Union[FpModule, SymModule], ideal: Optional[int] = None) -> LocalCohomologyResult:
    sym = from_fp(m) if isinstance(m, FpModule) else m
    ring = sym.ring
    _require_local(ring)
    p = ring.p
    if ideal is not None and ring.valuation_part(ideal) != p:
        raise LococoError(f"only the maximal ideal ({p}) is supported, got ({ideal})")
    h0 = gamma_i(sym, p)
    h1 = SymModule(ring, ((prufer_atom(p), sym.count(FREE)),))
    if sym.count(FREE) or sym.count(RATIONALS):
        dim, flag = 1, ""
    elif sym.is_zero:
        dim, flag = 0, "zero module: dimension undefined, 0 reported"
    else:
        dim, flag = 0, ""
    return LocalCohomologyResult(h0, h1, dim, flag)


def top_local_cohomology(m: Union[FpModule, SymModule]) -> SymModule:
    """``H^{dim M}_I(M)``."""
    return local_cohomology(m).top


def cech_truncation(m: FpModule, k: int):
    """``(0 :_M p^k)`` and ``(M/Γ_I M)/p^k``, the level-``k`` pieces of ``H^0`` and ``H^1``."""
    _require_local(m.ring)
    q = m.ring.p ** k
    h0k = kernel(scalar_hom(m, q))[0]
    free = cokernel(torsion_submodule(m)[1])[0]
    h1k = cokernel(scalar_hom(free, q))[0]
    return h0k, h1k


# -- condition (C_I) ----------------------------------------------------------


@dataclass
class CIReport:
    descriptor: str
    checked: int = 0
    skipped: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "descriptor": self.descriptor,
            "checked": self.checked,
            "skipped": self.skipped,
            "violations": self.violations,
            "status": "consistent within budget" if self.passed else "violated",
        }


def torsion_family(ring: RingSpec, max_atoms: int = 6, max_exp: int = 3) -> list:
    """Every nonzero p-torsion atom sum with at most ``max_atoms`` atoms."""
    _require_local(ring)
    atoms = atoms_universe(ring, max_exp=max_exp, torsion_only_prime=ring.p)
    return [m for m in all_sym_modules(ring, atoms, max_atoms) if not m.is_zero]


def check_ci(c: Descriptor, family: Iterable[SymModule], ring: RingSpec) -> CIReport:
    _require_local(ring)
    p = ring.p
    rep = CIReport(str(c))
    for m in family:
        if gamma_i(m, p) != m:
            rep.skipped += 1
            continue
        rep.checked += 1
        soc = socle_wrt(m, p)
        if member(soc, c).is_member and not member(m, c).is_member:
            rep.violations.append({"module": m.to_json(), "socle": soc.to_json()})
    return rep


def _quotient(m: SymModule, lcount: int) -> SymModule:
    """``M/L`` for ``L`` the socle copies of the first ``lcount`` torsion atoms."""
    out: Counter = Counter()
    left = lcount
    for a in m.atom_list():
        if left and a.is_torsion:
            left -= 1
            if a.kind == CYCLIC and a.k > 1:
                out[cyclic_atom(a.p, a.k - 1)] += 1
            elif a.kind == PRUFER:
                out[a] += 1
        else:
            out[a] += 1
    return SymModule.from_counts(m.ring, out)


def transfer_objects(m: SymModule, c1: Descriptor, c2: Descriptor) -> Optional[dict]:
    """The objects ``L``, ``(0:_M I)``, ``(0:_{M/L} I)``, ``Ext^1(R/I, L)`` for one sample."""
    p = m.ring.p
    soc = socle_wrt(m, p)
    w = sym_ext_witness(soc, c1, c2)
    if w is None:
        return None
    L = w.left
    ML = _quotient(m, L.size)
    soc_q = socle_wrt(ML, p)
    ext1 = ext_group(from_cyclics(m.ring, [p]), to_fp(L))
    return {
        "module": str(m),
        "L": str(L),
        "socle": str(soc),
        "quotient": str(ML),
        "quotient_socle": str(soc_q),
        "ext1": str(ext1),
        "quotient_socle_in_reverse": member(soc_q, ExtCat(c2, c1)).is_member,
    }


@dataclass
class TransferReport:
    first: str
    second: str
    reverse: CIReport
    forward: CIReport
    samples: list = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return (not self.reverse.passed) or self.forward.passed

    def to_json(self) -> dict:
        return {
            "first": self.first,
            "second": self.second,
            "reverse": self.reverse.to_json(),
            "forward": self.forward.to_json(),
            "samples": self.samples,
            "status": "consistent within budget" if self.consistent else "inconsistent",
        }


def ci_transfer_check(c1: Descriptor, c2: Descriptor, ring: RingSpec, family: Optional[list] = None,
                      budget: int = 1000, seed: int = 0) -> TransferReport:
    """If ``ext(c2,c1)`` satisfies (C_I) on the family, so must ``ext(c1,c2)``."""
    _require_local(ring)
    crit = serre_criterion(c1, c2, ring, budget=budget, seed=seed)
    if crit.outcome != CONFIRMED:
        raise LococoError(f"ext({c1},{c2}) is not known to be Serre: {crit.outcome}")
    family = torsion_family(ring) if family is None else family
    rev = check_ci(ExtCat(c2, c1), family, ring)
    fwd = check_ci(ExtCat(c1, c2), family, ring)
    samples = []
    for m in family:
        if member(socle_wrt(m, ring.p), ExtCat(c1, c2)).is_member:
            obj = transfer_objects(m, c1, c2)
            if obj is not None:
                samples.append(obj)
    return TransferReport(str(c1), str(c2), rev, fwd, samples)
