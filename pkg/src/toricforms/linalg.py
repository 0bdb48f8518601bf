"""Exact linear algebra over Q and Z.

Everything here works on plain Python lists of ``int``/``Fraction`` (dense)
or ``dict`` rows mapping column -> value (sparse).  No floating point.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Number = int | Fraction


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else abs(a or b)


def content(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def integer_row(row: Sequence[Number]) -> list[int]:
    """Clear denominators of a rational row (no sign or content change beyond that)."""
    den = 1
    for v in row:
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    return [int(v * den) for v in row]


def primitive(row: Sequence[Number]) -> tuple[int, ...]:
    """Smallest positive integer multiple of ``row`` with coprime entries."""
    ints = integer_row(row)
    g = content(ints)
    if g == 0:
        return tuple(ints)
    return tuple(v // g for v in ints)


def dot(u: Sequence[Number], v: Sequence[Number]) -> Number:
    return sum(a * b for a, b in zip(u, v))


def rref(rows: Sequence[Sequence[Number]], ncols: int | None = None):
    """Reduced row echelon form over Q.

    Returns ``(R, pivots)`` with the zero rows dropped.
    """
    A = [[Fraction(v) for v in r] for r in rows]
    if ncols is None:
        ncols = len(A[0]) if A else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pv = A[r][c]
        A[r] = [v / pv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def kernel(rows: Sequence[Sequence[Number]], ncols: int) -> list[list[Fraction]]:
    """Canonical Q-basis of ``{x : A x = 0}``, returned in reduced echelon form."""
    R, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    if not basis:
        return []
    K, _ = rref(basis, ncols)
    return K


def solve(A: Sequence[Sequence[Number]], b: Sequence[Number]) -> list[Fraction] | None:
    """Some solution x of ``A x = b``, or None if inconsistent."""
    ncols = len(A[0]) if A else 0
    aug = [list(r) + [bv] for r, bv in zip(A, b)]
    R, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return x


def inverse(A: Sequence[Sequence[Number]]) -> list[list[Fraction]]:
    n = len(A)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(A)]
    R, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def det(A: Sequence[Sequence[Number]]) -> Number:
    n = len(A)
    if n == 0:
        return 1
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    M = [[Fraction(v) for v in r] for r in A]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            sign = -sign
        result *= M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return sign * result


def _as_int_sparse(row) -> dict[int, int]:
    if isinstance(row, dict):
        items = [(c, v) for c, v in row.items() if v != 0]
    else:
        items = [(c, v) for c, v in enumerate(row) if v != 0]
    den = 1
    for _, v in items:
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    out = {c: int(v * den) for c, v in items}
    g = content(out.values())
    if g > 1:
        out = {c: v // g for c, v in out.items()}
    return out


def rank(rows: Iterable) -> int:
    """Rank over Q by fraction-free sparse elimination.

    ``rows`` may be dense sequences or ``{col: value}`` dicts.  Rows are
    scaled to primitive integer vectors; the pivot is the smallest entry of
    the sparsest remaining row.
    """
    active: dict[int, dict[int, int]] = {}
    by_col: dict[int, set[int]] = defaultdict(set)
    for i, r in enumerate(rows):
        r = _as_int_sparse(r)
        if r:
            active[i] = r
            for c in r:
                by_col[c].add(i)

    rk = 0
    while active:
        i = min(active, key=lambda j: (len(active[j]), j))
        prow = active.pop(i)
        for c in prow:
            by_col[c].discard(i)
        c = min(prow, key=lambda cc: (abs(prow[cc]), cc))
        p = prow[c]
        rk += 1
        for j in list(by_col[c]):
            r = active[j]
            f = r[c]
            g = gcd(p, f)
            mp, mf = p // g, f // g
            new = {cc: v * mp for cc, v in r.items()}
            for cc, v in prow.items():
                nv = new.get(cc, 0) - v * mf
                if nv:
                    new[cc] = nv
                else:
                    new.pop(cc, None)
            for cc in r:
                if cc not in new:
                    by_col[cc].discard(j)
            for cc in new:
                by_col[cc].add(j)
            if new:
                g = content(new.values())
                if g > 1:
                    new = {cc: v // g for cc, v in new.items()}
                active[j] = new
            else:
                del active[j]
    return rk


# -- integer lattices ---------------------------------------------------------


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row Hermite normal form of an integer matrix, zero rows dropped."""
    A = [list(map(int, r)) for r in rows]
    if not A:
        return []
    ncols = len(A[0])
    r = 0
    for c in range(ncols):
        if r == len(A):
            break
        for i in range(r + 1, len(A)):
            if A[i][c] == 0:
                continue
            a, b = A[r][c], A[i][c]
            g, x, y = _xgcd(a, b)
            ra, rb = A[r], A[i]
            A[r] = [x * u + y * v for u, v in zip(ra, rb)]
            A[i] = [(a // g) * v - (b // g) * u for u, v in zip(ra, rb)]
        if A[r][c] == 0:
            continue
        if A[r][c] < 0:
            A[r] = [-v for v in A[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                A[i] = [u - q * v for u, v in zip(A[i], A[r])]
        r += 1
    return A[:r]


def integer_kernel(rows: Sequence[Sequence[Number]], ncols: int) -> list[list[int]]:
    """Z-basis (in Hermite form) of ``{x in Z^n : A x = 0}``.

    The returned lattice is saturated, so it extends to a basis of Z^n.
    """
    A = [integer_row(r) for r in rows]
    # Rows of [A^T | I]; unimodular row operations keep the right block a
    # change of basis of Z^n.
    M = [[A[i][j] for i in range(len(A))] + [int(j == k) for k in range(ncols)] for j in range(ncols)]
    nleft = len(A)
    r = 0
    for c in range(nleft):
        for i in range(r + 1, ncols):
            if M[i][c] == 0:
                continue
            a, b = M[r][c], M[i][c]
            g, x, y = _xgcd(a, b)
            ra, rb = M[r], M[i]
            M[r] = [x * u + y * v for u, v in zip(ra, rb)]
            M[i] = [(a // g) * v - (b // g) * u for u, v in zip(ra, rb)]
        if r < ncols and M[r][c] != 0:
            r += 1
    basis = [row[nleft:] for row in M[r:]]
    return hnf(basis)


def saturate(rows: Sequence[Sequence[Number]], ncols: int) -> list[list[int]]:
    """Z-basis (Hermite form) of ``span_Q(rows) ∩ Z^n``."""
    if not rows:
        return []
    return integer_kernel(integer_kernel(rows, ncols), ncols)
