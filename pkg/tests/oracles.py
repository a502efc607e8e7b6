"""Independent reference implementations used by the tests.

Nothing here imports the Smith normal form code; each oracle recomputes
its answer from definitions.
"""

from __future__ import annotations

from itertools import combinations, product
from math import gcd, prod


def det(m):
    """Integer determinant by cofactor expansion (small matrices only)."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0
    for j, a in enumerate(m[0]):
        if a:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * a * det(minor)
    return total


def determinantal_divisors(a, nrows, ncols):
    """``d_k`` = gcd of all ``k x k`` minors, for ``k = 1 .. min(m, n)``."""
    out = []
    for k in range(1, min(nrows, ncols) + 1):
        g = 0
        for rs in combinations(range(nrows), k):
            for cs in combinations(range(ncols), k):
                g = gcd(g, det([[a[r][c] for c in cs] for r in rs]))
                if g == 1:
                    break
            if g == 1:
                break
        if g == 0:
            break
        out.append(g)
    return out


def invariant_factors_oracle(a, nrows, ncols):
    """``(free rank, factors > 1)`` of ``Z^ncols / rowspace(a)``."""
    d = determinantal_divisors(a, nrows, ncols)
    factors = [d[0]] + [d[k] // d[k - 1] for k in range(1, len(d))] if d else []
    return ncols - len(d), [f for f in factors if f > 1]


def localize_factors(factors, p):
    out = []
    for f in factors:
        q = 1
        while f % (q * p) == 0:
            q *= p
        if q > 1:
            out.append(q)
    return out


def torsion_counts(factors, ks):
    """``#{x : k x = 0}`` for each ``k``; these counts pin down a finite abelian group."""
    return [prod(gcd(k, d) for d in factors) for k in ks]


def brute_torsion_counts(rows, n, ks):
    """The same counts computed by enumerating ``(Z/D)^n`` for a nonsingular square ``rows``.

    ``D = |det|`` kills the cokernel, so it is ``(Z/D)^n / H`` with ``H`` the
    image of the rows; ``k x = 0`` in the quotient iff ``k x`` lies in ``H``.
    """
    D = abs(det(rows))
    assert D, "needs a nonsingular square matrix"
    H = {tuple([0] * n)}
    frontier = list(H)
    while frontier:
        new = []
        for h in frontier:
            for r in rows:
                s = tuple((x + y) % D for x, y in zip(h, r))
                if s not in H:
                    H.add(s)
                    new.append(s)
        frontier = new
    counts = []
    for k in ks:
        hits = sum(1 for x in product(range(D), repeat=n) if tuple(k * v % D for v in x) in H)
        counts.append(hits // len(H))
    return len(H) and D ** n // len(H), counts


def prufer_truncation(p, k, depth=12):
    """Elements of ``Z[1/p]/Z`` (as numerators over ``p^depth``) killed by ``p^k``."""
    N = p ** depth
    return [a for a in range(N) if (a * p ** k) % N == 0]


def cech_h1_truncation_order(rank, p, k):
    """``|(0 :_{H^1} p^k)|`` for ``H^1 = (Z[1/p]/Z)^rank``, counted elementwise."""
    return len(prufer_truncation(p, k, depth=k + 2)) ** rank


def partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def abelian_groups(order):
    """Every abelian group of the given order, as a sorted list of prime-power cyclic orders."""
    from sympy import factorint

    per_prime = [[tuple(p ** k for k in part) for part in partitions(e)] for p, e in factorint(order).items()]
    for combo in product(*per_prime):
        yield sorted(x for part in combo for x in part)


def _closure(gens, orders):
    zero = tuple(0 for _ in orders)
    H = {zero}
    frontier = [zero]
    while frontier:
        new = []
        for h in frontier:
            for g in gens:
                s = tuple((a + b) % d for a, b, d in zip(h, g, orders))
                if s not in H:
                    H.add(s)
                    new.append(s)
        frontier = new
    return frozenset(H)


def brute_middles(left_factors, right_factors, ks=range(1, 17)):
    """Torsion-count signatures of every abelian ``G`` having a subgroup like ``left`` with quotient like ``right``.

    Subgroups are searched among those generated by at most two elements, so
    ``left`` must have at most two cyclic factors.
    """
    n_left, n_right = prod(left_factors), prod(right_factors)
    want_sub = torsion_counts(left_factors, ks)
    want_quot = torsion_counts(right_factors, ks)
    found = set()
    for G in abelian_groups(n_left * n_right):
        elems = list(product(*(range(d) for d in G)))
        seen = set()
        hit = False
        for pair in combinations(elems, min(2, len(left_factors))) if left_factors else [()]:
            H = _closure(pair, G)
            if len(H) != n_left or H in seen:
                continue
            seen.add(H)
            sub = [sum(1 for h in H if all(k * v % d == 0 for v, d in zip(h, G))) for k in ks]
            if sub != want_sub:
                continue
            quot = [sum(1 for x in elems if tuple(k * v % d for v, d in zip(x, G)) in H) // n_left for k in ks]
            if quot == want_quot:
                hit = True
                break
        if hit:
            found.add(tuple(torsion_counts(G, ks)))
    return found
