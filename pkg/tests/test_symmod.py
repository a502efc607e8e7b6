import pytest
from hypothesis import given, settings

from serrext.fpmod import from_cyclics
from serrext.rings import INTEGERS, UnrepresentableError, local
from serrext.symmod import (
    SymModule,
    SymSES,
    annihilator_submodule,
    canonical_ses_r_q_prufer,
    cyclic_atom,
    free_atom,
    from_fp,
    gamma_i,
    injective_hull,
    localize_invert,
    predicate,
    prufer_atom,
    rational_dimension,
    rationals_atom,
    socle_wrt,
    split_sym_ses,
    to_fp,
    truncate,
)

from oracles import prufer_truncation
from strategies import fp_modules, sym_modules

Z = INTEGERS
R2 = local(2)


def S(ring, *atoms):
    return SymModule.of(ring, *atoms)


def test_canonical_form_merges_duplicates():
    a = SymModule(Z, ((prufer_atom(2), 1), (free_atom(), 2), (prufer_atom(2), 2)))
    assert a.atoms == ((free_atom(), 2), (prufer_atom(2), 3))
    with pytest.raises(ValueError):
        S(R2, cyclic_atom(3, 1))
    with pytest.raises(ValueError):
        cyclic_atom(2, 0)


def test_predicate_examples():
    m = S(Z, free_atom(), cyclic_atom(2, 3))
    assert predicate(m, "fg") and not predicate(m, "artinian")
    p = S(Z, prufer_atom(2))
    assert predicate(p, "artinian") and not predicate(p, "fg")
    assert not predicate(S(Z, rationals_atom()), "minimax")
    assert predicate(S(R2, rationals_atom()), "minimax")
    assert not predicate(S(R2, rationals_atom()), "maxmini")
    assert predicate(S(Z, free_atom(), prufer_atom(3)), "minimax")
    assert predicate(S(Z, free_atom(), prufer_atom(3)), "maxmini")


def test_prufer_truncations_form_a_chain():
    # every subgroup of a truncation is one of the (0 : p^j), so descending chains stop
    for k in range(1, 7):
        elems = prufer_truncation(2, k, depth=8)
        assert len(elems) == 2 ** k
        layers = [set(prufer_truncation(2, j, depth=8)) for j in range(k + 1)]
        assert all(layers[j] < layers[j + 1] for j in range(k))
        assert to_fp(annihilator_submodule(S(Z, prufer_atom(2)), 2 ** k)) == from_cyclics(Z, [2 ** k])


def test_socle_examples():
    assert socle_wrt(S(Z, prufer_atom(2)), 2) == S(Z, cyclic_atom(2, 1))
    assert socle_wrt(S(Z, free_atom()), 2).is_zero
    assert socle_wrt(S(Z, cyclic_atom(3, 2)), 3) == S(Z, cyclic_atom(3, 1))
    # elementwise in the truncation Z/16 of Prufer(2)
    killed = [a for a in prufer_truncation(2, 4, depth=4) if (2 * a) % 16 == 0]
    assert len(killed) == 2
    # 3y = 0 in Z/9
    assert sum(1 for y in range(9) if 3 * y % 9 == 0) == 3
    with pytest.raises(ValueError):
        socle_wrt(S(Z, free_atom()), 0)


def test_gamma_and_localization_examples():
    assert gamma_i(S(Z, free_atom(), prufer_atom(2)), 2) == S(Z, prufer_atom(2))
    assert localize_invert(S(R2, free_atom()), 2) == S(R2, rationals_atom())
    assert localize_invert(S(R2, cyclic_atom(2, 3)), 2).is_zero
    assert localize_invert(S(Z, cyclic_atom(3, 1)), 2) == S(Z, cyclic_atom(3, 1))
    with pytest.raises(UnrepresentableError):
        localize_invert(S(Z, free_atom()), 2)


def test_localization_on_truncated_denominators():
    # R[1/p] is the union of p^-k R; each step adds exactly p new cosets mod R
    for k in range(1, 9):
        assert len(prufer_truncation(2, k, depth=9)) == 2 ** k


def test_injective_hull_examples():
    assert injective_hull(S(Z, cyclic_atom(2, 2))) == S(Z, prufer_atom(2))
    assert injective_hull(S(R2, free_atom())) == S(R2, rationals_atom())
    assert injective_hull(S(Z, rationals_atom())) == S(Z, rationals_atom())


def test_hull_is_essential_on_truncations():
    # every nonzero cyclic subgroup of the truncation Z/2^6 of Prufer(2) meets the copy of Z/4
    N = 2 ** 6
    copy = {a % N for a in range(0, N, N // 4)}
    for g in range(1, N):
        sub = {(g * t) % N for t in range(N)}
        assert len(sub & copy) > 1


def test_canonical_sequence():
    ses = canonical_ses_r_q_prufer(R2)
    assert str(ses) == "0 -> Free -> Rationals -> Prufer(2) -> 0"
    assert predicate(ses.left, "fg") and predicate(ses.right, "artinian")
    for k in range(1, 17):
        assert truncate(ses.right, k) == from_cyclics(R2, [2 ** k])
    for k in range(1, 9):
        assert len(prufer_truncation(2, k, depth=10)) == 2 ** k
    with pytest.raises(UnrepresentableError):
        canonical_ses_r_q_prufer(Z)


@given(sym_modules())
def test_hull_idempotent(m):
    h = injective_hull(m)
    assert injective_hull(h) == h
    assert rational_dimension(h) == rational_dimension(m)


@given(sym_modules(ring=Z))
def test_gamma_is_torsion_and_contains_socle(m):
    for x in (2, 3, 12):
        g = gamma_i(m, x)
        assert predicate(g, "torsion")
        assert gamma_i(g, x) == g
        soc = socle_wrt(m, x)
        gc = g.counts()
        for a, mult in soc.atoms:
            assert sum(n for b, n in gc.items() if b.p == a.p) >= mult


@settings(max_examples=200)
@given(fp_modules())
def test_fp_round_trip(m):
    sym = from_fp(m)
    assert to_fp(sym) == m
    assert predicate(sym, "fg")
    assert SymModule.from_json(sym.to_json()) == sym


@given(sym_modules(), sym_modules())
def test_symbolic_sequence_json(a, b):
    if a.ring != b.ring:
        return
    ses = split_sym_ses(a, b)
    ses.validate()
    back = SymSES.from_json(ses.to_json())
    assert back == ses
    assert back.middle == a + b


def test_truncate_needs_local_ring():
    with pytest.raises(ValueError):
        truncate(S(Z, prufer_atom(2)), 3)
    assert truncate(S(R2, prufer_atom(2), cyclic_atom(2, 1)), 2) == from_cyclics(R2, [2, 4])
