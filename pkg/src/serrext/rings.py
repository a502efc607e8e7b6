"""Base rings, their prime spectra and specialization-closed subsets.

Two rings are supported: the integers ``Z`` and the localization ``Z_(p)``
of the integers at a prime ``p``. Both are principal ideal domains of
Krull dimension one, so every prime is either the zero ideal or a maximal
ideal generated by a rational prime.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional, Union

from sympy import factorint, isprime


class RingMismatchError(ValueError):
    pass


class InadmissiblePrimeError(ValueError):
    pass


class UnrepresentableError(ValueError):
    """Raised when a result falls outside the finitely describable values."""


@dataclass(frozen=True)
class RingSpec:
    """``Z`` when ``p`` is None, otherwise ``Z`` localized at ``p``."""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None and (self.p < 2 or not isprime(self.p)):
            raise ValueError(f"localization requires a prime, got {self.p}")

    @property
    def is_local(self) -> bool:
        return self.p is not None

    def admits(self, q: int) -> bool:
        """Whether ``(q)`` is a maximal ideal of this ring."""
        if q < 2 or not isprime(q):
            return False
        return self.p is None or q == self.p

    def primes_of(self, n: int) -> list[int]:
        """Primes of this ring dividing the nonzero integer ``n``."""
        if n == 0:
            raise ValueError("zero has no finite prime support")
        return sorted(q for q in factorint(abs(n)) if self.admits(q))

    def valuation_part(self, n: int) -> int:
        """The non-unit part of ``n`` in this ring (``|n|`` over ``Z``)."""
        if n == 0:
            return 0
        if self.p is None:
            return abs(n)
        return self.p ** valuation(n, self.p)

    def __str__(self):
        return "Z" if self.p is None else f"Z_({self.p})"

    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        text = text.strip()
        if text == "Z":
            return cls()
        m = re.fullmatch(r"Z_\(?(\d+)\)?", text)
        if not m:
            raise ValueError(f"unknown ring {text!r}; expected Z or Z_(p)")
        return cls(int(m.group(1)))


INTEGERS = RingSpec()


def local(p: int) -> RingSpec:
    return RingSpec(p)


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PrimeIdeal:
    """The zero ideal when ``p`` is None, else the maximal ideal ``(p)``."""

    p: Optional[int] = None

    @property
    def is_generic(self) -> bool:
        return self.p is None

    def __str__(self):
        return "(0)" if self.p is None else f"({self.p})"


GENERIC = PrimeIdeal()


def maximal(p: int) -> PrimeIdeal:
    return PrimeIdeal(p)


ALL = "all"


@dataclass(frozen=True)
class SpclSet:
    """A specialization-closed subset of Spec of a one-dimensional PID.

    ``maximals`` is either a frozenset of primes or the string ``"all"``.
    Containing the generic point forces all maximals. Over ``Z_(p)`` the
    set ``{p}`` is stored as ``"all"`` so equality stays structural.
    """

    ring: RingSpec
    generic: bool = False
    maximals: Union[FrozenSet[int], str] = frozenset()

    def __post_init__(self):
        mx = self.maximals
        if mx != ALL:
            mx = frozenset(mx)
            for q in mx:
                if not self.ring.admits(q):
                    raise InadmissiblePrimeError(f"({q}) is not a maximal ideal of {self.ring}")
            if self.ring.is_local and mx:
                mx = ALL
        if self.generic and mx != ALL:
            mx = ALL
        object.__setattr__(self, "maximals", mx)

    @classmethod
    def of(cls, ring: RingSpec, primes: Iterable[int] = ()) -> "SpclSet":
        return cls(ring, False, frozenset(primes))

    @classmethod
    def spec(cls, ring: RingSpec) -> "SpclSet":
        return cls(ring, True, ALL)

    @classmethod
    def all_maximals(cls, ring: RingSpec) -> "SpclSet":
        return cls(ring, False, ALL)

    @classmethod
    def empty(cls, ring: RingSpec) -> "SpclSet":
        return cls(ring, False, frozenset())

    @property
    def is_empty(self) -> bool:
        return not self.generic and self.maximals == frozenset()

    @property
    def has_all_maximals(self) -> bool:
        return self.maximals == ALL

    def contains_prime(self, q: int) -> bool:
        return self.maximals == ALL or q in self.maximals

    def to_json(self) -> dict:
        mx = ALL if self.maximals == ALL else sorted(self.maximals)
        return {"generic": self.generic, "maximals": mx}

    @classmethod
    def from_json(cls, ring: RingSpec, data: dict) -> "SpclSet":
        mx = data.get("maximals", [])
        return cls(ring, bool(data.get("generic", False)), ALL if mx == ALL else frozenset(mx))

    def __str__(self):
        if self.generic:
            return "Spec"
        if self.maximals == ALL:
            return "Max"
        return "{" + ",".join(str(q) for q in sorted(self.maximals)) + "}"


def _same_ring(a: SpclSet, b: SpclSet):
    if a.ring != b.ring:
        raise RingMismatchError(f"{a.ring} vs {b.ring}")


def spcl_union(a: SpclSet, b: SpclSet) -> SpclSet:
    _same_ring(a, b)
    if a.maximals == ALL or b.maximals == ALL:
        mx = ALL
    else:
        mx = a.maximals | b.maximals
    return SpclSet(a.ring, a.generic or b.generic, mx)


def spcl_intersection(a: SpclSet, b: SpclSet) -> SpclSet:
    _same_ring(a, b)
    if a.maximals == ALL:
        mx = b.maximals
    elif b.maximals == ALL:
        mx = a.maximals
    else:
        mx = a.maximals & b.maximals
    return SpclSet(a.ring, a.generic and b.generic, mx)


def spcl_contains(w: SpclSet, prime: PrimeIdeal) -> bool:
    if prime.is_generic:
        return w.generic
    if not w.ring.admits(prime.p):
        raise InadmissiblePrimeError(f"{prime} is not a prime of {w.ring}")
    return w.contains_prime(prime.p)


def spcl_subset(a: SpclSet, b: SpclSet) -> bool:
    _same_ring(a, b)
    if a.generic and not b.generic:
        return False
    if b.maximals == ALL:
        return True
    if a.maximals == ALL:
        # infinitely many maximal ideals over Z; Z_(p) never reaches here
        return False
    return a.maximals <= b.maximals
