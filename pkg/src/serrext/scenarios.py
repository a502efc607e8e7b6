"""Bundled end-to-end scenarios, each a list of checks with expected outcomes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List

from .fpmod import from_cyclics
from .lococo import check_ci, local_cohomology, torsion_family
from .rings import INTEGERS, RingSpec, local
from .serrecat import (
    CONFIRMED,
    MEMBER,
    NONMEMBER,
    REFUTED,
    closure_audit,
    member,
    parse_descriptor,
    serre_criterion,
)
from .symmod import SymModule, canonical_ses_r_q_prufer, free_atom, prufer_atom, rationals_atom


@dataclass
class Step:
    name: str
    expected: str
    actual: str

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    def to_json(self) -> dict:
        return {"step": self.name, "expected": self.expected, "actual": self.actual, "ok": self.ok}


@dataclass
class Scenario:
    name: str
    ring: RingSpec
    steps: List[Step] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.steps)

    def to_json(self) -> dict:
        return {"scenario": self.name, "ring": str(self.ring), "ok": self.ok,
                "steps": [s.to_json() for s in self.steps]}


def _member(m, text, ring) -> str:
    return member(m, parse_descriptor(text, ring)).decision


def gorenstein(seed: int = 0, budget: int = 1000) -> Scenario:
    R = local(2)
    sc = Scenario("example-gorenstein", R)
    q = SymModule.of(R, rationals_atom())
    sc.steps.append(Step("R in ext(artin,fg)", MEMBER, _member(SymModule.of(R, free_atom()), "ext(artin,fg)", R)))
    sc.steps.append(Step("Prufer in ext(artin,fg)", MEMBER, _member(SymModule.of(R, prufer_atom(2)), "ext(artin,fg)", R)))
    ses = canonical_ses_r_q_prufer(R)
    ses.validate()
    sc.steps.append(Step("injective resolution of R", "0 -> Free -> Rationals -> Prufer(2) -> 0", str(ses)))
    sc.steps.append(Step("Q in ext(artin,fg)", NONMEMBER, _member(q, "ext(artin,fg)", R)))
    res = serre_criterion(parse_descriptor("artin", R), parse_descriptor("fg", R), R, budget=budget, seed=seed)
    sc.steps.append(Step("criterion(artin,fg)", REFUTED, res.outcome))
    cert = res.certificate["witness_text"] if res.certificate else ""
    sc.steps.append(Step("criterion certificate", str(ses), cert))
    audit = closure_audit(parse_descriptor("ext(artin,fg)", R), R, budget=budget // 5, seed=seed)
    sc.steps.append(Step("audit ext(artin,fg)", str(ses), audit.certificate["ses"] if audit.certificate else ""))
    return sc


def torsion_asymmetry(seed: int = 0, budget: int = 1000) -> Scenario:
    Z = INTEGERS
    sc = Scenario("example-torsion-asymmetry", Z)
    q = SymModule.of(Z, rationals_atom())
    sc.steps.append(Step("Q in ext(fg,tor)", MEMBER, _member(q, "ext(fg,tor)", Z)))
    sc.steps.append(Step("Q in ext(tor,fg)", NONMEMBER, _member(q, "ext(tor,fg)", Z)))
    fg, tor = parse_descriptor("fg", Z), parse_descriptor("tor", Z)
    sc.steps.append(Step("criterion(fg,tor)", CONFIRMED, serre_criterion(fg, tor, Z, budget, seed).outcome))
    sc.steps.append(Step("criterion(tor,fg)", REFUTED, serre_criterion(tor, fg, Z, budget, seed).outcome))
    return sc


def minimax_serre(seed: int = 0, budget: int = 1000) -> Scenario:
    sc = Scenario("minimax-serre", local(2))
    for ring in (local(2), INTEGERS):
        fg, art = parse_descriptor("fg", ring), parse_descriptor("artin", ring)
        sc.steps.append(Step(f"criterion(fg,artin) over {ring}", CONFIRMED,
                             serre_criterion(fg, art, ring, budget, seed).outcome))
        audit = closure_audit(parse_descriptor("ext(fg,artin)", ring), ring, budget=budget // 5, seed=seed)
        sc.steps.append(Step(f"audit ext(fg,artin) over {ring}", "0", str(len(audit.violations))))
    R = local(2)
    sc.steps.append(Step("Q minimax over Z_(2)", MEMBER, _member(SymModule.of(R, rationals_atom()), "ext(fg,artin)", R)))
    sc.steps.append(Step("Q minimax over Z", NONMEMBER,
                         _member(SymModule.of(INTEGERS, rationals_atom()), "ext(fg,artin)", INTEGERS)))
    return sc


def top_local_cohomology(seed: int = 0, budget: int = 1000) -> Scenario:
    R = local(2)
    sc = Scenario("top-local-cohomology", R)
    m = from_cyclics(R, [8, 0, 0])
    lc = local_cohomology(m)
    sc.steps.append(Step("H^1(R^2 + Z/8)", "Prufer(2)^2", str(lc.h1)))
    sc.steps.append(Step("H^0(R^2 + Z/8)", "Cyclic(2,3)", str(lc.h0)))
    for s in ("fg", "artin", "tor", "supp{2}", "supp{spec}"):
        sc.steps.append(Step(f"H^1 in ext({s},artin)", MEMBER, _member(lc.h1, f"ext({s},artin)", R)))
    rep = check_ci(parse_descriptor("ext(fg,artin)", R), torsion_family(R), R)
    sc.steps.append(Step("(C_I) for ext(fg,artin)", "consistent within budget", rep.to_json()["status"]))
    return sc


SCENARIOS: Dict[str, Callable[..., Scenario]] = {
    "example-gorenstein": gorenstein,
    "example-torsion-asymmetry": torsion_asymmetry,
    "minimax-serre": minimax_serre,
    "top-local-cohomology": top_local_cohomology,
}


def run_scenario(name: str, seed: int = 0, budget: int = 1000) -> Scenario:
    if name not in SCENARIOS:
        raise KeyError(f"unknown scenario {name!r}; choose from {sorted(SCENARIOS)}")
    return SCENARIOS[name](seed=seed, budget=budget)
