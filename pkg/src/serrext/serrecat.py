"""Category descriptors, membership decisions, witnesses and closure searches.

Descriptors: ``SuppCat(W)``, ``FG``, ``ART``, ``TOR`` and ``ExtCat(A, B)``,
the modules ``M`` with ``0 -> S1 -> M -> S2 -> 0`` for some ``S1`` in ``A``
and ``S2`` in ``B``.

Membership in ``ExtCat(A, B)`` for base ``A``, ``B`` is decided atom by
atom. ``ExtCat(A, B)`` is closed under quotients and finite direct sums,
so a finite direct sum lies in it iff every summand does; for a single
atom the catalogued pieces in :func:`serrext.symmod.atomic_pieces` cover
every submodule that can matter.
"""

from __future__ import annotations

import json
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Union

from . import sampling
from .fpmod import FpModule, ModuleHom, cokernel, gamma_w, identity_hom, kernel, torsion_submodule
from .rings import RingSpec, SpclSet, spcl_subset, spcl_union
from .sesalg import (
    SES,
    enumerate_middles,
    ext_classes,
    extension_from_class,
    ses_from_inclusion,
)
from .symmod import (
    CYCLIC,
    FREE,
    PRUFER,
    RATIONALS,
    Atom,
    Piece,
    SymModule,
    SymSES,
    atomic_pieces,
    catalogue_extensions,
    catalogue_subquotients,
    from_fp,
    split_sym_ses,
)


# -- descriptors ------------------------------------------------------------


@dataclass(frozen=True)
class Named:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class SuppCat:
    w: SpclSet

    def __str__(self):
        w = self.w
        if w.generic:
            return "supp{spec}"
        if w.has_all_maximals:
            return "supp{max}"
        return "supp{" + ",".join(str(q) for q in sorted(w.maximals)) + "}"


@dataclass(frozen=True)
class ExtCat:
    first: "Descriptor"
    second: "Descriptor"

    def __str__(self):
        return f"ext({self.first},{self.second})"


FG = Named("fg")
ART = Named("artin")
TOR = Named("tor")

Descriptor = Union[Named, SuppCat, ExtCat]


def is_base(c: Descriptor) -> bool:
    return not isinstance(c, ExtCat)


def depth(c: Descriptor) -> int:
    return 1 + max(depth(c.first), depth(c.second)) if isinstance(c, ExtCat) else 1


def parse_descriptor(text: str, ring: RingSpec) -> Descriptor:
    """Parse ``supp{2,3} | supp{max} | supp{spec} | fg | artin | tor | ext(A,B)``."""
    s = re.sub(r"\s+", "", text)
    pos = 0

    def parse():
        nonlocal pos
        if s.startswith("ext(", pos):
            pos += 4
            a = parse()
            if pos >= len(s) or s[pos] != ",":
                raise ValueError(f"expected ',' at {pos} in {text!r}")
            pos += 1
            b = parse()
            if pos >= len(s) or s[pos] != ")":
                raise ValueError(f"expected ')' at {pos} in {text!r}")
            pos += 1
            return ExtCat(a, b)
        m = re.compile(r"supp\{([^}]*)\}").match(s, pos)
        if m:
            pos = m.end()
            body = m.group(1)
            if body == "spec":
                return SuppCat(SpclSet.spec(ring))
            if body in ("max", "all"):
                return SuppCat(SpclSet.all_maximals(ring))
            primes = [int(x) for x in body.split(",") if x]
            return SuppCat(SpclSet.of(ring, primes))
        for named in (FG, ART, TOR):
            if s.startswith(named.name, pos):
                pos += len(named.name)
                return named
        raise ValueError(f"cannot parse descriptor at {pos} in {text!r}")

    out = parse()
    if pos != len(s):
        raise ValueError(f"trailing input in {text!r}")
    if depth(out) > 2:
        raise ValueError(f"{text!r} nests ext deeper than one level")
    return out


# -- base tables -------------------------------------------------------------

QMODZ = "Q/Z"


def atom_in_base(ring: RingSpec, atom, c: Descriptor) -> bool:
    """Membership of one atom (or ``QMODZ``) in a base category."""
    if atom == QMODZ:
        if isinstance(c, SuppCat):
            return c.w.has_all_maximals
        return c == TOR
    kind = atom.kind
    if isinstance(c, SuppCat):
        if kind in (FREE, RATIONALS):
            return c.w.generic
        return c.w.contains_prime(atom.p)
    if c == FG:
        return kind in (FREE, CYCLIC)
    if c in (ART, TOR):
        return kind in (CYCLIC, PRUFER)
    raise ValueError(f"{c} is not a base descriptor")


def base_included(a: Descriptor, b: Descriptor, ring: RingSpec) -> bool:
    """Whether base category ``a`` is contained in base category ``b`` (in R-Mod)."""
    if a == b:
        return True
    if isinstance(a, SuppCat) and a.w.is_empty:
        return True
    if isinstance(b, SuppCat) and b.w.generic:
        return True
    if isinstance(a, SuppCat) and isinstance(b, SuppCat):
        return spcl_subset(a.w, b.w)
    if isinstance(b, SuppCat):
        # a in {fg, artin, tor}: fg needs the generic point, the others every maximal
        return a != FG and b.w.has_all_maximals
    if isinstance(a, SuppCat):
        return b == TOR and not a.w.generic
    return a == ART and b == TOR


def _supp_like(c: Descriptor, ring: RingSpec) -> Optional[SpclSet]:
    if isinstance(c, SuppCat):
        return c.w
    if c == TOR:
        return SpclSet.all_maximals(ring)
    return None


def normalize(c: Descriptor, ring: RingSpec) -> Descriptor:
    """Apply absorption and support-union rewrites where the tables decide them."""
    if not isinstance(c, ExtCat):
        return c
    a, b = normalize(c.first, ring), normalize(c.second, ring)
    if is_base(a) and is_base(b):
        if base_included(b, a, ring):
            return a
        if base_included(a, b, ring):
            return b
        wa, wb = _supp_like(a, ring), _supp_like(b, ring)
        if wa is not None and wb is not None:
            return SuppCat(spcl_union(wa, wb))
    return ExtCat(a, b)


def hull_closed(c: Descriptor) -> bool:
    return isinstance(c, SuppCat) or c in (ART, TOR)


# -- membership -------------------------------------------------------------

MEMBER, NONMEMBER, UNDECIDED = "member", "nonmember", "undecided"


@dataclass(frozen=True)
class MembershipVerdict:
    decision: str
    witness: Optional[Union[SES, SymSES]] = None
    note: str = ""

    @property
    def is_member(self) -> bool:
        return self.decision == MEMBER

    def to_json(self) -> dict:
        out = {"decision": self.decision}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
            out["witness_text"] = str(self.witness)
        if self.note:
            out["note"] = self.note
        return out


def _piece_fits(ring, pc: Piece, c1, c2) -> bool:
    if not all(atom_in_base(ring, a, c1) for a in pc.left):
        return False
    if pc.right_qmodz and not atom_in_base(ring, QMODZ, c2):
        return False
    return all(atom_in_base(ring, a, c2) for a in pc.right)


def sym_ext_witness(m: SymModule, c1: Descriptor, c2: Descriptor) -> Optional[SymSES]:
    """A symbolic witness for ``m`` in ``ExtCat(c1, c2)``, or None if there is none."""
    pieces = []
    for atom, mult in m.atoms:
        fit = next((pc for pc in atomic_pieces(m.ring, atom) if _piece_fits(m.ring, pc, c1, c2)), None)
        if fit is None:
            return None
        pieces += [fit] * mult
    ses = SymSES(m.ring, tuple(pieces))
    ses.validate()
    return ses


def fp_ext_witness(m: FpModule, c1: Descriptor, c2: Descriptor) -> Optional[SES]:
    """A validated witness sequence for finitely presented ``m``."""
    candidates = []
    if isinstance(c1, SuppCat):
        candidates.append(gamma_w(m, c1.w)[1])
    candidates.append(torsion_submodule(m)[1])
    candidates.append(ModuleHom(FpModule(m.ring), m))
    candidates.append(identity_hom(m))
    for inc in candidates:
        ses = ses_from_inclusion(inc)
        if base_member(from_fp(ses.left), c1) and base_member(from_fp(ses.right), c2):
            return ses
    return None


def base_member(m: SymModule, c: Descriptor) -> bool:
    return all(atom_in_base(m.ring, a, c) for a, _ in m.atoms)


def member(m: Union[FpModule, SymModule], c: Descriptor) -> MembershipVerdict:
    sym = from_fp(m) if isinstance(m, FpModule) else m
    ring = sym.ring
    if sym.is_zero:
        return MembershipVerdict(MEMBER, note="the zero module lies in every subcategory")
    nc = normalize(c, ring)
    if is_base(nc):
        ok = base_member(sym, nc)
        if isinstance(c, ExtCat) and ok:
            c1, c2 = normalize(c.first, ring), normalize(c.second, ring)
            if is_base(c1) and is_base(c2):
                return _ext_verdict(m, sym, c1, c2)
        note = "" if nc == c else f"{c} = {nc}"
        return MembershipVerdict(MEMBER if ok else NONMEMBER, note=note)
    c1, c2 = nc.first, nc.second
    if not (is_base(c1) and is_base(c2)):
        return MembershipVerdict(UNDECIDED, note=f"{c} is outside the decision tables")
    return _ext_verdict(m, sym, c1, c2)


def _ext_verdict(m, sym: SymModule, c1, c2) -> MembershipVerdict:
    sw = sym_ext_witness(sym, c1, c2)
    if sw is None:
        bad = [a for a, _ in sym.atoms if sym_ext_witness(SymModule.of(sym.ring, a), c1, c2) is None]
        return MembershipVerdict(NONMEMBER, note=f"no admissible sequence for {', '.join(map(str, bad))}")
    if isinstance(m, FpModule):
        ses = fp_ext_witness(m, c1, c2)
        if ses is None:
            raise RuntimeError(f"table says {m} is in ext({c1},{c2}) but no witness was found")
        return MembershipVerdict(MEMBER, ses)
    note = "right term Q/Z is an infinite direct sum (recorded symbolically)" if sw.right_qmodz else ""
    return MembershipVerdict(MEMBER, sw, note)


def witness_ses(m: FpModule, c: ExtCat) -> SES:
    """The section-functor sequence ``0 -> G_W1(M) -> M -> M/G_W1(M) -> 0``."""
    if not (isinstance(c, ExtCat) and isinstance(c.first, SuppCat) and isinstance(c.second, SuppCat)):
        raise ValueError("witness_ses needs ext(supp W1, supp W2)")
    G, inc, Q, proj = gamma_w(m, c.first.w)
    ses = SES(G, m, Q, inc, proj)
    if not (base_member(from_fp(Q), c.second)):
        raise ValueError(f"{m} is not in {c}")
    return ses


# -- certificates -----------------------------------------------------------


def _cert_key(cert: dict):
    return (cert.get("size", 0), json.dumps(cert, sort_keys=True))


def _smallest(certs):
    return min(certs, key=_cert_key) if certs else None


# -- closure audit ----------------------------------------------------------


@dataclass
class AuditReport:
    descriptor: str
    ring: str
    samples: int = 0
    checks: int = 0
    violations: list = field(default_factory=list)

    @property
    def certificate(self) -> Optional[dict]:
        return _smallest(self.violations)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "descriptor": self.descriptor,
            "ring": self.ring,
            "samples": self.samples,
            "checks": self.checks,
            "violations": len(self.violations),
            "certificate": self.certificate,
        }


def qmodz_member(c: Descriptor, ring: RingSpec) -> Optional[bool]:
    """Whether ``Q/Z`` lies in ``c`` (None outside the tables).

    For base factors, a submodule of ``Q/Z`` in an Artinian, fg or finitely
    supported category meets only finitely many primes, so the quotient
    still carries almost every Prufer summand; one factor must hold all of it.
    """
    nc = normalize(c, ring)
    if is_base(nc):
        return atom_in_base(ring, QMODZ, nc)
    if is_base(nc.first) and is_base(nc.second):
        return atom_in_base(ring, QMODZ, nc.first) or atom_in_base(ring, QMODZ, nc.second)
    return None


def _qmodz_extension_check(ring: RingSpec, c) -> list:
    """``0 -> Z -> Q -> Q/Z -> 0`` over the integers, with its infinite right term."""
    if ring.is_local:
        return []
    free, q = SymModule.of(ring, Atom(FREE)), SymModule.of(ring, Atom(RATIONALS))
    if member(free, c).is_member and qmodz_member(c, ring) and not member(q, c).is_member:
        ses = SymSES(ring, (Piece((Atom(FREE),), (Atom(RATIONALS),), (), 1),))
        ses.validate()
        return [{"kind": "extension", "size": 1, "ses": str(ses), "left": free.to_json(),
                 "middle": q.to_json(), "right": {"ring": str(ring), "atoms": [], "unrepresentable": "Q/Z"}}]
    return []


def _sym_extension_checks(L: SymModule, N: SymModule, c) -> list:
    out = []
    ring = L.ring
    split = L + N
    if not member(split, c).is_member:
        out.append({"kind": "extension", "size": split.size, "ses": str(split_sym_ses(L, N)),
                    "middle": split.to_json()})
    lc, nc_ = L.counts(), N.counts()
    for a in lc:
        for b in nc_:
            for x in catalogue_extensions(ring, a, b):
                rest_l = lc.copy()
                rest_l[a] -= 1
                rest_n = nc_.copy()
                rest_n[b] -= 1
                pieces = [Piece((a,), (x,), (b,))]
                pieces += [Piece((y,), (y,), ()) for y in SymModule.from_counts(ring, rest_l).atom_list()]
                pieces += [Piece((), (y,), (y,)) for y in SymModule.from_counts(ring, rest_n).atom_list()]
                ses = SymSES(ring, tuple(pieces))
                ses.validate()
                mid = ses.middle
                if not member(mid, c).is_member:
                    out.append({"kind": "extension", "size": mid.size, "ses": str(ses),
                                "left": L.to_json(), "middle": mid.to_json(), "right": N.to_json()})
    return out


def _sym_subquotient_checks(M: SymModule, c) -> list:
    out = []
    ring = M.ring
    counts = M.counts()
    for a in counts:
        subs, quots = catalogue_subquotients(ring, a)
        rest = counts.copy()
        rest[a] -= 1
        base = SymModule.from_counts(ring, rest)
        for kind, repl in [("submodule", s) for s in subs] + [("quotient", q) for q in quots] + [("summand", None)]:
            cand = base if repl is None else base + SymModule.of(ring, repl)
            if not member(cand, c).is_member:
                out.append({"kind": kind, "size": cand.size, "of": M.to_json(), "module": cand.to_json()})
    return out


def _fp_checks(rng, L: FpModule, N: FpModule, c, max_classes: int) -> list:
    out = []
    for X in (L, N):
        other = N if X is L else L
        for f in (sampling.random_hom(rng, X, other), sampling.random_hom(rng, other, X)):
            for kind, mod in (("submodule", kernel(f)[0]), ("quotient", cokernel(f)[0])):
                if not member(mod, c).is_member:
                    out.append({"kind": kind, "size": mod.ngens, "module": mod.to_json()})
    if L.is_finite and N.is_finite and L.order * N.order <= max_classes:
        for mid in enumerate_middles(N, L):
            if not member(mid, c).is_member:
                ses = next(
                    s for s in (extension_from_class(N, L, cls) for cls in ext_classes(N, L)) if s.middle == mid
                )
                out.append({"kind": "extension", "size": mid.ngens, "ses": ses.to_json()})
    return out


def closure_audit(c: Descriptor, ring: RingSpec, budget: int = 1000, seed: int = 0,
                  dist: sampling.Distribution = sampling.DEFAULT, max_order: int = 256) -> AuditReport:
    """Search for failures of sub/quotient/extension closure of ``c``."""
    rng = sampling.rng_for(seed)
    report = AuditReport(str(c), str(ring))
    singles = [SymModule.of(ring, a) for a in sampling.atom_choices(ring, dist)]
    single_members = [m for m in singles if member(m, c).is_member]
    report.violations += _qmodz_extension_check(ring, c)
    for M in single_members:
        report.violations += _sym_subquotient_checks(M, c)
        report.checks += 1
    for L in single_members:
        for N in single_members:
            report.violations += _sym_extension_checks(L, N, c)
            report.checks += 1
    prev_sym = prev_fp = None
    report.samples = budget
    for i in range(budget):
        if i % 2 == 0:
            M = sampling.random_symmodule(rng, ring, dist)
            if not member(M, c).is_member:
                continue
            report.violations += _sym_subquotient_checks(M, c)
            if prev_sym is not None:
                report.violations += _sym_extension_checks(prev_sym, M, c)
            prev_sym = M
        else:
            M = sampling.random_fpmodule(rng, ring, dist)
            if not member(M, c).is_member:
                continue
            if prev_fp is not None:
                report.violations += _fp_checks(rng, prev_fp, M, c, max_order)
            prev_fp = M
        report.checks += 1
    return report


# -- Serre criterion ----------------------------------------------------------

CONFIRMED, REFUTED, EXHAUSTED = "confirmed-inclusion", "refuted", "exhausted"


@dataclass
class CriterionResult:
    outcome: str
    first: str
    second: str
    ring: str
    reason: str = ""
    samples: int = 0
    certificate: Optional[dict] = None

    def to_json(self) -> dict:
        out = {"outcome": self.outcome, "first": self.first, "second": self.second,
               "ring": self.ring, "reason": self.reason, "samples": self.samples}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


def _table_inclusion(c1, c2, ring) -> Optional[str]:
    combined = normalize(ExtCat(c1, c2), ring)
    if is_base(combined):
        return f"({c1},{c2}) collapses to {combined}"
    a, b = normalize(c1, ring), normalize(c2, ring)
    if not (is_base(a) and is_base(b)):
        return None
    if _supp_like(a, ring) is not None and _supp_like(b, ring) is not None:
        return "both factors are support-defined; both orders give the union of supports"
    if a == FG:
        return "first factor is fg: any (S, fg)-module is a quotient of K + L with K fg"
    if hull_closed(b):
        return f"{b} is closed under injective hulls"
    return None


def _refutation(sample, c1, c2) -> Optional[dict]:
    forward = member(sample, ExtCat(c2, c1))
    if not forward.is_member:
        return None
    if member(sample, ExtCat(c1, c2)).decision != NONMEMBER:
        return None
    cert = {
        "size": sample.size if isinstance(sample, SymModule) else sample.ngens,
        "module": sample.to_json(),
        "module_text": str(sample),
        "witness": forward.witness.to_json() if forward.witness is not None else None,
        "witness_text": str(forward.witness) if forward.witness is not None else "",
    }
    return cert


def _search_chunk(args):
    samples, c1, c2 = args
    return [cert for cert in (_refutation(s, c1, c2) for s in samples) if cert is not None]


def refutation_samples(c1, c2, ring: RingSpec, budget: int, seed: int,
                       dist: sampling.Distribution = sampling.DEFAULT) -> list:
    """Deterministic sample list: single atoms, then random symbolic and fp modules."""
    rng = sampling.rng_for(seed)
    out = [SymModule.of(ring, a) for a in sampling.atom_choices(ring, dist)][:budget]
    while len(out) < budget:
        if len(out) % 4 == 3:
            L = sampling.random_finite_module(rng, ring, dist)
            R = sampling.random_finite_module(rng, ring, dist)
            if L.order * R.order <= 256:
                out += enumerate_middles(R, L)[: budget - len(out)]
                continue
        out.append(sampling.random_symmodule(rng, ring, dist))
    return out


def serre_criterion(c1: Descriptor, c2: Descriptor, ring: RingSpec, budget: int = 1000, seed: int = 0,
                    workers: int = 1, dist: sampling.Distribution = sampling.DEFAULT) -> CriterionResult:
    """Decide whether ``ext(c2,c1)`` lies inside ``ext(c1,c2)``, i.e. ``ext(c1,c2)`` is Serre."""
    res = CriterionResult(EXHAUSTED, str(c1), str(c2), str(ring))
    reason = _table_inclusion(c1, c2, ring)
    if reason is not None:
        res.outcome, res.reason = CONFIRMED, reason
        return res
    samples = refutation_samples(c1, c2, ring, budget, seed, dist)
    res.samples = len(samples)
    if workers > 1:
        chunks = [(samples[i::workers], c1, c2) for i in range(workers)]
        with ProcessPoolExecutor(workers) as ex:
            certs = [c for part in ex.map(_search_chunk, chunks) for c in part]
    else:
        certs = _search_chunk((samples, c1, c2))
    if certs:
        res.outcome = REFUTED
        res.certificate = _smallest(certs)
        res.reason = f"{res.certificate['module_text']} lies in ext({c2},{c1}) but not in ext({c1},{c2})"
    else:
        res.reason = f"no counterexample among {len(samples)} samples; inclusion not proved"
    return res
