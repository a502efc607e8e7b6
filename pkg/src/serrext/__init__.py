"""Extension subcategories (S1, S2) of Serre subcategories over Z and Z_(p)."""

from .fpmod import FpModule, ModuleHom, from_cyclics
from .rings import INTEGERS, RingSpec, SpclSet, local
from .serrecat import ART, FG, TOR, ExtCat, SuppCat, closure_audit, member, parse_descriptor, serre_criterion
from .sesalg import SES, enumerate_middles
from .symmod import Atom, SymModule, SymSES

__all__ = [
    "ART", "FG", "TOR", "Atom", "ExtCat", "FpModule", "INTEGERS", "ModuleHom", "RingSpec", "SES",
    "SpclSet", "SuppCat", "SymModule", "SymSES", "closure_audit", "enumerate_middles", "from_cyclics",
    "local", "member", "parse_descriptor", "serre_criterion",
]
