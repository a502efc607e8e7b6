import pytest
from hypothesis import given, settings, strategies as st

from serrext.rings import (
    ALL,
    GENERIC,
    INTEGERS,
    InadmissiblePrimeError,
    RingSpec,
    SpclSet,
    local,
    maximal,
    spcl_contains,
    spcl_intersection,
    spcl_subset,
    spcl_union,
    valuation,
)

from strategies import spcl_sets


def test_parse_round_trip():
    assert RingSpec.parse("Z") == INTEGERS
    assert RingSpec.parse("Z_(3)") == local(3)
    assert str(local(5)) == "Z_(5)"
    with pytest.raises(ValueError):
        RingSpec.parse("Z_(4)")
    with pytest.raises(ValueError):
        RingSpec.parse("Q")


def test_local_ring_units():
    R = local(2)
    assert R.valuation_part(12) == 4
    assert R.primes_of(12) == [2]
    assert not R.admits(3)
    assert INTEGERS.primes_of(60) == [2, 3, 5]
    assert valuation(48, 2) == 4


def test_local_maximal_normalizes_to_all():
    R = local(3)
    assert SpclSet.of(R, [3]) == SpclSet.all_maximals(R)
    with pytest.raises(InadmissiblePrimeError):
        SpclSet.of(R, [2])


def test_generic_forces_all_maximals():
    w = SpclSet(INTEGERS, True, frozenset({2}))
    assert w.maximals == ALL and w == SpclSet.spec(INTEGERS)


def test_union_and_subset_examples():
    a, b = SpclSet.of(INTEGERS, [2]), SpclSet.of(INTEGERS, [3])
    assert spcl_union(a, b) == SpclSet.of(INTEGERS, [2, 3])
    assert spcl_subset(a, spcl_union(a, b))
    assert not spcl_subset(SpclSet.all_maximals(INTEGERS), SpclSet.of(INTEGERS, [2, 3]))
    assert spcl_intersection(a, b).is_empty
    assert spcl_contains(SpclSet.spec(INTEGERS), GENERIC)
    assert not spcl_contains(a, GENERIC) and spcl_contains(a, maximal(2))


@given(st.data())
def test_lattice_laws(data):
    ring = data.draw(st.sampled_from([INTEGERS, local(2)]))
    a, b, c = (data.draw(spcl_sets(ring)) for _ in range(3))
    assert spcl_union(a, b) == spcl_union(b, a)
    assert spcl_union(a, spcl_union(b, c)) == spcl_union(spcl_union(a, b), c)
    assert spcl_subset(a, spcl_union(a, b))
    assert spcl_subset(spcl_intersection(a, b), a)
    assert spcl_subset(a, b) == (spcl_union(a, b) == b)


@given(st.data())
def test_json_round_trip(data):
    ring = data.draw(st.sampled_from([INTEGERS, local(3)]))
    w = data.draw(spcl_sets(ring))
    assert SpclSet.from_json(ring, w.to_json()) == w


def test_union_examples():
    Z = INTEGERS
    assert spcl_union(SpclSet.of(Z, [2, 3]), SpclSet.of(Z, [3, 5])) == SpclSet.of(Z, [2, 3, 5])
    assert spcl_union(SpclSet.spec(Z), SpclSet.of(Z, [7])) == SpclSet.spec(Z)
    u = spcl_union(SpclSet.empty(Z), SpclSet.all_maximals(Z))
    assert u == SpclSet.all_maximals(Z) and not u.generic


def test_contains_and_subset_examples():
    Z = INTEGERS
    w = SpclSet.of(Z, [2, 3])
    assert spcl_contains(w, maximal(3))
    assert not spcl_contains(w, GENERIC)
    assert spcl_contains(SpclSet.spec(Z), GENERIC)
    assert spcl_subset(SpclSet.of(Z, [2]), w)
    assert not spcl_subset(SpclSet.all_maximals(Z), w)
    assert spcl_subset(SpclSet.empty(Z), w) and spcl_subset(SpclSet.empty(Z), SpclSet.empty(Z))


@given(st.sampled_from([2, 3, 999983, 1000003]))
def test_generic_contains_every_maximal(q):
    assert SpclSet.spec(INTEGERS).contains_prime(q)


@settings(max_examples=1000)
@given(st.data())
def test_union_idempotent(data):
    a = data.draw(spcl_sets(INTEGERS))
    assert spcl_union(a, a) == a
