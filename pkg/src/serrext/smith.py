"""Smith normal form of integer matrices.

Matrices are lists of rows of Python ints. ``smith_form`` returns
``(D, U, V, Vinv)`` with ``U @ A @ V == D``, ``U`` and ``V`` unimodular and
``Vinv`` the inverse of ``V``. The diagonal of ``D`` is a nonnegative
divisibility chain followed by zeros.

Pivot rule: the nonzero entry of least absolute value in the active
submatrix, ties to the lowest (row, column).
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], inner: Optional[int] = None) -> Matrix:
    if inner is None:
        inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def transpose(a: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


def _find_pivot(A: Matrix, t: int, m: int, n: int):
    best = None
    best_val = 0
    for i in range(t, m):
        row = A[i]
        for j in range(t, n):
            v = row[j]
            if v:
                av = v if v > 0 else -v
                if best is None or av < best_val:
                    best, best_val = (i, j), av
                    if av == 1:
                        return best
    return best


def smith_form(a: Sequence[Sequence[int]], ncols: Optional[int] = None, transforms: bool = True):
    """Diagonalize ``a`` (``len(a)`` x ``ncols``) by unimodular row/column ops.

    With ``transforms=False`` only ``D`` is computed and ``U``, ``V``,
    ``Vinv`` are returned as None.
    """
    A = [list(map(int, r)) for r in a]
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    for r in A:
        if len(r) != n:
            raise ValueError("ragged matrix")
    U = identity(m) if transforms else None
    V = identity(n) if transforms else None
    Vi = identity(n) if transforms else None

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        if transforms:
            U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for r in A:
            r[j], r[k] = r[k], r[j]
        if transforms:
            for r in V:
                r[j], r[k] = r[k], r[j]
            Vi[j], Vi[k] = Vi[k], Vi[j]

    def add_row(dst, src, q):
        # row dst -= q * row src
        rd, rs = A[dst], A[src]
        for j in range(n):
            if rs[j]:
                rd[j] -= q * rs[j]
        if transforms:
            ud, us = U[dst], U[src]
            for j in range(m):
                if us[j]:
                    ud[j] -= q * us[j]

    def add_col(dst, src, q):
        # col dst -= q * col src
        for r in A:
            if r[src]:
                r[dst] -= q * r[src]
        if transforms:
            for r in V:
                if r[src]:
                    r[dst] -= q * r[src]
            vs, vd = Vi[src], Vi[dst]
            for j in range(n):
                if vd[j]:
                    vs[j] += q * vd[j]

    t = 0
    while t < min(m, n):
        piv = _find_pivot(A, t, m, n)
        if piv is None:
            break
        i, j = piv
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        p = A[t][t]
        clean = True
        for i in range(t + 1, m):
            if A[i][t]:
                add_row(i, t, A[i][t] // p)
                if A[i][t]:
                    clean = False
        for j in range(t + 1, n):
            if A[t][j]:
                add_col(j, t, A[t][j] // p)
                if A[t][j]:
                    clean = False
        if not clean:
            continue
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i][j] % p:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row(t, bad, -1)
            continue
        if p < 0:
            A[t] = [-x for x in A[t]]
            if transforms:
                U[t] = [-x for x in U[t]]
        t += 1
    return A, U, V, Vi


def diagonal(D: Matrix, ncols: int) -> List[int]:
    """Diagonal of length ``ncols``; missing rows count as zero entries."""
    return [D[k][k] if k < len(D) else 0 for k in range(ncols)]


def invariant_factors(a: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Tuple[int, List[int]]:
    """(free rank of the cokernel, invariant factors >= 2) over ``Z``."""
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    D, *_ = smith_form(a, n, transforms=False)
    diag = diagonal(D, n)
    return sum(1 for d in diag if d == 0), [d for d in diag if d > 1]


def left_kernel(a: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """A basis (as rows) of ``{x : x @ a == 0}`` over ``Z``."""
    m = len(a)
    if m == 0:
        return []
    D, U, _, _ = smith_form(a, ncols)
    rank = sum(1 for k in range(min(m, ncols)) if D[k][k])
    return [U[k] for k in range(rank, m)]
