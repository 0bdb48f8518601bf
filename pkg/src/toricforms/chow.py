"""Graded pieces of the Chow ring of a simplicial fan or cone subdivision,
presented degree by degree through the square-free classes D_gamma."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .ishida import subdivision_fan_of_cone
from .lattice import Cone, Fan, FanSubset, as_subset, perp_lattice_basis


@dataclass
class ChowPresentation:
    fan_subset: FanSubset
    k: int
    generators: list[Cone]
    relation_matrix: list[list[int]]


def presentation(phi: Fan | FanSubset, k: int) -> ChowPresentation:
    """Generators D_gamma (gamma of dimension k) and the linear relations among them.

    One relation per (gamma' of dimension k-1, basis vector m of M ∩ gamma'^perp):
    sum over cofacets gamma of <m, e> D_gamma, with e the ray of gamma not in gamma'.
    """
    phi = as_subset(phi)
    fan = phi.parent
    gens = phi.cones_of_dim(k)
    col = {g: n for n, g in enumerate(gens)}
    rows = []
    if k > 0:
        for face in phi.cones_of_dim(k - 1):
            cofacets = [g for g in fan.cofacets(face) if g in col]
            if not cofacets:
                continue
            for m in perp_lattice_basis(fan, face):
                row = [0] * len(gens)
                for g in cofacets:
                    extra = next(r for r in g if r not in face)
                    row[col[g]] = linalg.dot(m, fan.rays[extra])
                if any(row):
                    rows.append(row)
    return ChowPresentation(phi, k, gens, rows)


@lru_cache(maxsize=4096)
def _chow_dim(phi: FanSubset, k: int) -> int:
    P = presentation(phi, k)
    return len(P.generators) - linalg.rank(P.relation_matrix)


def chow_dim(phi: Fan | FanSubset, k: int) -> int:
    return _chow_dim(as_subset(phi), k)


def chow_basis(phi: Fan | FanSubset, k: int) -> list[Cone]:
    """Generators whose classes form a basis of the degree-k piece.

    Elimination runs over the columns from last to first, so the surviving
    (non-pivot) generators are the lexicographically earliest ones.
    """
    P = presentation(phi, k)
    n = len(P.generators)
    if not P.relation_matrix:
        return list(P.generators)
    reversed_rows = [row[::-1] for row in P.relation_matrix]
    _, pivots = linalg.rref(reversed_rows, n)
    dependent = {n - 1 - p for p in pivots}
    return [g for c, g in enumerate(P.generators) if c not in dependent]


def chow_sigma_dim(fan: Fan, contraction, sigma: Cone, k: int) -> int:
    return chow_dim(subdivision_fan_of_cone(fan, contraction, sigma), k)
