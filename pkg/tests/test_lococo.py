import pytest
from hypothesis import given, settings, strategies as st

from serrext.fpmod import FpModule, ext_group, from_cyclics, support
from serrext.lococo import (
    LococoError,
    cech_truncation,
    check_ci,
    ci_transfer_check,
    local_cohomology,
    top_local_cohomology,
    torsion_family,
)
from serrext.rings import INTEGERS, SpclSet, local, spcl_subset
from serrext.serrecat import ART, FG, TOR, ExtCat, SuppCat, member
from serrext.symmod import SymModule, cyclic_atom, free_atom, from_fp, prufer_atom, rationals_atom, to_fp, truncate

from oracles import cech_h1_truncation_order, torsion_counts
from strategies import fp_modules, spcl_sets

R2, R3 = local(2), local(3)


def S(ring, *atoms):
    return SymModule.of(ring, *atoms)


def test_examples():
    r = local_cohomology(S(R2, free_atom()))
    assert r.h0.is_zero and r.h1 == S(R2, prufer_atom(2)) and r.dim_input == 1
    r = local_cohomology(S(R3, cyclic_atom(3, 2)))
    assert r.h0 == S(R3, cyclic_atom(3, 2)) and r.h1.is_zero and r.dim_input == 0
    r = local_cohomology(from_cyclics(R2, [0, 0, 8]))
    assert r.h1 == SymModule(R2, ((prufer_atom(2), 2),))


def test_zero_module_is_flagged():
    r = local_cohomology(FpModule(R2))
    assert r.dim_input == 0 and r.flag


def test_rejects_other_settings():
    with pytest.raises(LococoError):
        local_cohomology(FpModule(INTEGERS, 1))
    with pytest.raises(LococoError):
        local_cohomology(FpModule(R2, 1), ideal=3)
    assert local_cohomology(FpModule(R2, 1), ideal=6).h1 == S(R2, prufer_atom(2))


def test_top_cohomology():
    assert top_local_cohomology(from_cyclics(R2, [4, 0])) == S(R2, prufer_atom(2))
    assert top_local_cohomology(from_cyclics(R2, [4])) == S(R2, cyclic_atom(2, 2))
    assert top_local_cohomology(S(R2, rationals_atom())).is_zero


@settings(max_examples=100)
@given(st.sampled_from([R2, R3]).flatmap(lambda r: fp_modules(ring=r, max_rank=3)))
def test_truncations_match_oracle(m):
    p = m.ring.p
    r = local_cohomology(m)
    for k in range(1, 9):
        h0k, h1k = cech_truncation(m, k)
        assert truncate(r.h1, k) == h1k
        assert h1k.order == cech_h1_truncation_order(m.rank, p, k)
        assert truncate(r.h0, k) == h0k
        # (0 :_M p^k) counted elementwise on the torsion part
        tors = [d for d in m.factors]
        assert h0k.order == torsion_counts(tors, [p ** k])[0]


@settings(max_examples=200)
@given(st.sampled_from([R2, R3]).flatmap(lambda r: fp_modules(ring=r, max_rank=3)))
def test_top_cohomology_is_in_every_artin_extension(m):
    r = local_cohomology(m)
    if m.rank:
        assert r.h1 == SymModule(m.ring, ((prufer_atom(m.ring.p), m.rank),))
    supp_p = SuppCat(SpclSet.all_maximals(m.ring))
    for s in (FG, ART, TOR, supp_p, SuppCat(SpclSet.spec(m.ring))):
        assert member(r.h1, ExtCat(s, ART)).is_member


@settings(max_examples=200)
@given(st.data())
def test_ext_stays_in_support(data):
    ring = data.draw(st.sampled_from([INTEGERS, R2]))
    m = data.draw(fp_modules(ring=ring))
    w = data.draw(spcl_sets(ring))
    if not spcl_subset(support(m), w):
        return
    n = data.draw(st.integers(2, 40))
    e = ext_group(from_cyclics(ring, [n]), m)
    assert spcl_subset(support(e), w)


def test_check_ci_examples():
    rep = check_ci(ART, [S(R2, prufer_atom(2))], R2)
    assert rep.passed and rep.checked == 1
    rep = check_ci(ART, [S(R2, rationals_atom())], R2)
    assert rep.skipped == 1 and rep.checked == 0
    fam = torsion_family(R2)
    rep = check_ci(ExtCat(FG, ART), fam, R2)
    assert rep.passed and rep.checked == len(fam)
    assert rep.to_json()["status"] == "consistent within budget"


def test_check_ci_catches_failure():
    # fg fails (C_I): Prufer has a finite socle but is not finitely generated
    rep = check_ci(FG, [S(R2, prufer_atom(2))], R2)
    assert not rep.passed


def test_transfer_examples():
    rep = ci_transfer_check(FG, ART, R2)
    assert rep.consistent and rep.forward.passed and rep.reverse.passed
    sample = rep.samples[1]
    assert set(sample) >= {"L", "socle", "quotient", "quotient_socle", "ext1"}
    assert all(s["quotient_socle_in_reverse"] for s in rep.samples)
    p = SuppCat(SpclSet.all_maximals(R2))
    assert ci_transfer_check(p, p, R2).consistent
    with pytest.raises(LococoError):
        ci_transfer_check(ART, FG, R2)


def test_torsion_family_shape():
    fam = torsion_family(R2, max_atoms=2, max_exp=1)
    assert S(R2, prufer_atom(2), cyclic_atom(2, 1)) in fam
    assert all(from_fp(to_fp(m)) == m for m in fam if m.count("Prufer") == 0)
