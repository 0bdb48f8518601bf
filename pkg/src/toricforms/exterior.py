"""Sparse exterior algebra over Q^d.

An element of the p-th exterior power is a dict mapping a strictly increasing
index tuple ``(t_1, ..., t_p)`` to a Fraction coefficient of
``eps_{t_1} ^ ... ^ eps_{t_p}``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .linalg import det

Wedge = dict[tuple[int, ...], Fraction]


def wedge_of(vectors: Sequence[Sequence], d: int) -> Wedge:
    """Expand ``v_1 ^ ... ^ v_p`` in the standard basis of the exterior power."""
    p = len(vectors)
    if p == 0:
        return {(): Fraction(1)}
    out: Wedge = {}
    for T in combinations(range(d), p):
        c = det([[v[t] for t in T] for v in vectors])
        if c:
            out[T] = Fraction(c)
    return out


def _merge_sign(S: tuple[int, ...], T: tuple[int, ...]):
    """Sign and sorted union for eps_S ^ eps_T, or (0, None) on overlap."""
    if set(S) & set(T):
        return 0, None
    inversions = sum(1 for s in S for t in T if s > t)
    return (-1) ** inversions, tuple(sorted(S + T))


def wedge_product(a: Wedge, b: Wedge) -> Wedge:
    out: Wedge = {}
    for S, x in a.items():
        for T, y in b.items():
            sign, U = _merge_sign(S, T)
            if sign:
                out[U] = out.get(U, 0) + sign * x * y
    return {k: v for k, v in out.items() if v}


def contract(e: Sequence[int], w: Wedge) -> Wedge:
    """Interior product ``e ⌟ w`` of a vector of N with a form on M."""
    out: Wedge = {}
    for T, x in w.items():
        for s, t in enumerate(T):
            if e[t]:
                U = T[:s] + T[s + 1:]
                out[U] = out.get(U, 0) + (-1) ** s * e[t] * x
    return {k: v for k, v in out.items() if v}


def add(a: Wedge, b: Wedge, scale=1) -> Wedge:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + scale * v
    return {k: v for k, v in out.items() if v}


class SubspaceWedges:
    """Wedge monomials over an echelon basis of a subspace of M_Q.

    Because the basis rows are in reduced echelon form, the coefficient of
    the basis monomial ``b_S`` in any element of the p-th power of the
    subspace is simply its standard coefficient at the pivot tuple of ``S``.
    """

    def __init__(self, basis: Sequence[Sequence[Fraction]], pivots: Sequence[int], d: int):
        self.basis = [list(b) for b in basis]
        self.pivots = list(pivots)
        self.d = d
        self._cache: dict[int, list[tuple[tuple[int, ...], Wedge]]] = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def monomials(self, p: int) -> list[tuple[tuple[int, ...], Wedge]]:
        """``[(S, expansion of b_S)]`` for all p-subsets S, lexicographic."""
        if p not in self._cache:
            if p < 0 or p > self.dim:
                self._cache[p] = []
            else:
                self._cache[p] = [
                    (S, wedge_of([self.basis[s] for s in S], self.d))
                    for S in combinations(range(self.dim), p)
                ]
        return self._cache[p]

    def coordinates(self, w: Wedge, p: int) -> dict[tuple[int, ...], Fraction]:
        """Coordinates of ``w`` (assumed to lie in the p-th power) in the b_S basis."""
        out = {}
        for S in combinations(range(self.dim), p):
            key = tuple(self.pivots[s] for s in S)
            c = w.get(key)
            if c:
                out[S] = c
        return out
