"""Short exact sequences, pushouts, pullbacks and extension enumeration."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Tuple

from .fpmod import (
    FpModule,
    InvalidHomError,
    ModuleHom,
    _block_relations,
    _canonical_only,
    _canonicalize,
    _kernel,
    _same_ring,
    class_vector,
    cokernel_with_section,
    compose,
    ext_presentation,
    identity_hom,
    kernel,
    cokernel,
)
from .smith import matmul


class ExactnessError(ValueError):
    pass


class InfiniteExtError(ValueError):
    pass


@dataclass(frozen=True)
class SES:
    """``0 -> left -> middle -> right -> 0``, validated at construction."""

    left: FpModule
    middle: FpModule
    right: FpModule
    inject: ModuleHom
    project: ModuleHom

    def __post_init__(self):
        validate_exact(self.left, self.middle, self.right, self.inject, self.project)

    def to_json(self) -> dict:
        return {
            "ring": str(self.middle.ring),
            "left": self.left.to_json(),
            "middle": self.middle.to_json(),
            "right": self.right.to_json(),
            "inject": self.inject.to_json(),
            "project": self.project.to_json(),
        }

    @classmethod
    def from_json(cls, ring, data: dict) -> "SES":
        def mod(d):
            return FpModule(ring, d["rank"], tuple(d["factors"]))

        left, middle, right = mod(data["left"]), mod(data["middle"]), mod(data["right"])
        inject = ModuleHom(left, middle, tuple(map(tuple, data["inject"])))
        project = ModuleHom(middle, right, tuple(map(tuple, data["project"])))
        return cls(left, middle, right, inject, project)

    def __str__(self):
        return f"0 -> {self.left} -> {self.middle} -> {self.right} -> 0"


def validate_exact(left, middle, right, inject: ModuleHom, project: ModuleHom) -> None:
    if inject.source != left or inject.target != middle:
        raise ExactnessError("inject does not go left -> middle")
    if project.source != middle or project.target != right:
        raise ExactnessError("project does not go middle -> right")
    # cheap bookkeeping first
    if middle.rank != left.rank + right.rank:
        raise ExactnessError(f"ranks {left.rank} + {right.rank} != {middle.rank}")
    if middle.is_finite and middle.order != left.order * right.order:
        raise ExactnessError(f"orders {left.order} * {right.order} != {middle.order}")
    if not compose(project, inject).is_zero:
        raise ExactnessError("project o inject is not zero")
    if not kernel(inject)[0].is_zero:
        raise ExactnessError("inject is not injective")
    if not cokernel(project)[0].is_zero:
        raise ExactnessError("project is not surjective")
    C, _, S = cokernel_with_section(inject)
    if C.ngens:
        induced = ModuleHom(C, right, tuple(map(tuple, matmul(project.matrix, S))) if middle.ngens else ())
        if not kernel(induced)[0].is_zero:
            raise ExactnessError("image of inject is smaller than kernel of project")


def split_ses(left: FpModule, right: FpModule) -> SES:
    E, _ = ext_presentation(right, left)
    return extension_from_class(right, left, (0,) * E.ngens)


def pushout(f: ModuleHom, g: ModuleHom) -> Tuple[FpModule, ModuleHom, ModuleHom]:
    """Pushout of ``A <-f- S -g-> B``: ``(P, A -> P, B -> P)``."""
    if f.source != g.source:
        raise InvalidHomError("pushout needs maps with a common source")
    _same_ring(f.target, g.target)
    A, B = f.target, g.target
    rows, n = _block_relations([A, B])
    for cf, cg in zip(f.columns(), g.columns()):
        row = list(cf) + [-x for x in cg]
        if any(row):
            rows.append(row)
    P, Pm, _ = _canonicalize(A.ring, rows, n)
    na = A.ngens
    to_a = ModuleHom(A, P, tuple(tuple(r[:na]) for r in Pm))
    to_b = ModuleHom(B, P, tuple(tuple(r[na:]) for r in Pm))
    return P, to_a, to_b


def pullback(f: ModuleHom, g: ModuleHom) -> Tuple[FpModule, ModuleHom, ModuleHom]:
    """Pullback of ``A -f-> T <-g- B``: ``(P, P -> A, P -> B)``."""
    if f.target != g.target:
        raise InvalidHomError("pullback needs maps with a common target")
    _same_ring(f.source, g.source)
    A, B, T = f.source, g.source, f.target
    rows, n = _block_relations([A, B])
    images = [list(c) for c in f.columns()] + [[-x for x in c] for c in g.columns()]
    K, incl = _kernel(A.ring, rows, n, images, T.relations(), T.ngens)
    na = A.ngens
    to_a = ModuleHom(K, A, tuple(tuple(r) for r in incl[:na]) if K.ngens else ())
    to_b = ModuleHom(K, B, tuple(tuple(r) for r in incl[na:]) if K.ngens else ())
    return K, to_a, to_b


# -- extensions -------------------------------------------------------------


def _middle_rows(right: FpModule, left: FpModule, xi: List[int]):
    """Relations of the middle module for cocycle ``xi`` (stacked ``left`` coordinates).

    Generators: those of ``left`` then those of ``right``; torsion generator
    ``i`` of ``right`` (order ``r_i``) lifts to ``f_i`` with ``r_i f_i = xi_i``.
    """
    nl, nr = left.ngens, right.ngens
    n = nl + nr
    rows = [r + [0] * nr for r in left.relations()]
    for i, r in enumerate(right.factors):
        block = xi[i * nl:(i + 1) * nl]
        rows.append([-x for x in block] + [r if k == i else 0 for k in range(nr)])
    return rows, n


def extension_from_class(right: FpModule, left: FpModule, class_index) -> SES:
    """The extension of ``right`` by ``left`` with the given Ext^1 class."""
    E, S = ext_presentation(right, left)
    c = class_vector(E, class_index)
    xi = [sum(S[k][j] * c[j] for j in range(len(c))) for k in range(len(S))]
    rows, n = _middle_rows(right, left, xi)
    M, P, Sm = _canonicalize(left.ring, rows, n)
    nl = left.ngens
    inject = ModuleHom(left, M, tuple(tuple(r[:nl]) for r in P))
    proj_old = [[int(j == nl + i) for j in range(n)] for i in range(right.ngens)]
    project = ModuleHom(M, right, tuple(map(tuple, matmul(proj_old, Sm))) if M.ngens and right.ngens else ())
    return SES(left, M, right, inject, project)


def ext_classes(right: FpModule, left: FpModule):
    """Iterate over all Ext^1 classes as coordinate tuples."""
    E, _ = ext_presentation(right, left)
    if E.rank:
        raise InfiniteExtError(f"Ext^1({right}, {left}) is infinite")
    return itertools.product(*(range(d) for d in E.factors))


def enumerate_middles(right: FpModule, left: FpModule) -> List[FpModule]:
    """Isomorphism types of all middles of extensions of ``right`` by ``left``.

    Sorted by ``(rank, factors)``.
    """
    _same_ring(right, left)
    E, S = ext_presentation(right, left)
    if E.rank:
        raise InfiniteExtError(f"Ext^1({right}, {left}) is infinite")
    seen = set()
    nS = len(S)
    for c in itertools.product(*(range(d) for d in E.factors)):
        xi = [sum(S[k][j] * c[j] for j in range(len(c))) for k in range(nS)]
        rows, n = _middle_rows(right, left, xi)
        seen.add(_canonical_only(left.ring, rows, n))
    return sorted(seen, key=lambda m: (m.rank, len(m.factors), m.factors))


def ses_from_inclusion(inc: ModuleHom) -> SES:
    """``0 -> sub -> M -> M/sub -> 0`` for an injective ``inc``."""
    Q, proj = cokernel(inc)
    return SES(inc.source, inc.target, Q, inc, proj)


def trivial_ses_left(m: FpModule) -> SES:
    """``0 -> M -> M -> 0 -> 0``."""
    z = FpModule(m.ring)
    return SES(m, m, z, identity_hom(m), ModuleHom(m, z))


def trivial_ses_right(m: FpModule) -> SES:
    """``0 -> 0 -> M -> M -> 0``."""
    z = FpModule(m.ring)
    return SES(z, m, m, ModuleHom(z, m), identity_hom(m))
