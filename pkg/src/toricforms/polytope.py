"""Polytopes given by inequalities <m, n_i> >= b_i: vertices, faces,
lattice points by minimal face, and normal fans."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import ceil, floor
from typing import Sequence

from . import linalg
from .errors import DimMismatch, Unbounded
from .lattice import Cone, Fan

Point = tuple[Fraction, ...]


@dataclass
class Polytope:
    ambient_rank: int
    normals: tuple[tuple[int, ...], ...]
    offsets: tuple[Fraction, ...]
    vertices: list[Point]
    affine_dim: int

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def contains(self, m: Sequence) -> bool:
        return all(linalg.dot(n, m) >= b for n, b in zip(self.normals, self.offsets))

    def tight(self, m: Sequence) -> frozenset:
        return frozenset(i for i, (n, b) in enumerate(zip(self.normals, self.offsets))
                         if linalg.dot(n, m) == b)


@dataclass
class PolytopeFace:
    dim: int
    tight_set: frozenset
    vertex_subset: frozenset
    interior_points: tuple = ()
    normal_cone: Cone | None = None

    @property
    def interior_count(self) -> int:
        return len(self.interior_points)


def _recession_nonzero(normals, d: int) -> bool:
    nz = [n for n in normals if any(n)]
    if linalg.rank(nz) < d:
        return True
    for S in combinations(nz, d - 1):
        K = linalg.kernel(S, d)
        if len(K) != 1:
            continue
        vals = [linalg.dot(n, K[0]) for n in nz]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            return True
    return False


def _affine_dim(points: Sequence[Point]) -> int:
    if not points:
        return -1
    base = points[0]
    return linalg.rank([[a - b for a, b in zip(p, base)] for p in points[1:]])


def polytope_from_inequalities(normals, offsets, d: int) -> Polytope:
    normals = tuple(tuple(int(x) for x in n) for n in normals)
    offsets = tuple(Fraction(b) for b in offsets)
    if d > 0 and _recession_nonzero(normals, d):
        raise Unbounded("the inequalities do not cut out a bounded region")
    P = Polytope(d, normals, offsets, [], -1)
    if d == 0:
        P.vertices = [()] if all(b <= 0 for b in offsets) else []
    else:
        found = set()
        for S in combinations(range(len(normals)), d):
            A = [normals[i] for i in S]
            if linalg.rank(A) < d:
                continue
            x = tuple(linalg.solve(A, [offsets[i] for i in S]))
            if x not in found and P.contains(x):
                found.add(x)
        P.vertices = sorted(found)
    P.affine_dim = _affine_dim(P.vertices)
    return P


def divisor_polytope(fan: Fan, a: Sequence[int]) -> Polytope:
    """The polytope {m : <m, e_i> >= -a_i} of the divisor sum a_i D_i."""
    if len(a) != fan.n_rays:
        raise ValueError(f"divisor has {len(a)} coefficients, fan has {fan.n_rays} rays")
    return polytope_from_inequalities(fan.rays, [-x for x in a], fan.rank)


def lattice_points(P: Polytope) -> list[tuple[int, ...]]:
    """All integer points of P, by a scan of the bounding box."""
    if P.is_empty:
        return []
    d = P.ambient_rank
    lo = [floor(min(v[j] for v in P.vertices)) for j in range(d)]
    hi = [ceil(max(v[j] for v in P.vertices)) for j in range(d)]
    return [m for m in product(*(range(l, h + 1) for l, h in zip(lo, hi))) if P.contains(m)]


def face_lattice(P: Polytope) -> list[PolytopeFace]:
    """Every nonempty face of P, with the lattice points of its relative interior.

    Ordered by dimension, then by vertex set.  A lattice point belongs to the
    face whose tight set equals the set of inequalities tight at the point.
    """
    if P.is_empty:
        return []
    vt = [P.tight(v) for v in P.vertices]
    tight_sets = set(vt)
    frontier = list(tight_sets)
    while frontier:
        new = []
        for T in frontier:
            for U in list(tight_sets):
                I = T & U
                if I not in tight_sets:
                    tight_sets.add(I)
                    new.append(I)
        frontier = new
    faces: dict[frozenset, PolytopeFace] = {}
    for T in tight_sets:
        verts = frozenset(i for i, t in enumerate(vt) if T <= t)
        if verts in faces:
            continue
        closed = frozenset.intersection(*(vt[i] for i in verts))
        faces[verts] = PolytopeFace(_affine_dim([P.vertices[i] for i in sorted(verts)]), closed, verts)
    by_tight = {f.tight_set: f for f in faces.values()}
    interior: dict[frozenset, list] = {t: [] for t in by_tight}
    for m in lattice_points(P):
        interior[P.tight(m)].append(m)
    for t, f in by_tight.items():
        f.interior_points = tuple(interior[t])
    return sorted(faces.values(), key=lambda f: (f.dim, sorted(f.vertex_subset)))


def normal_fan(P: Polytope, rank: int, faces: list[PolytopeFace] | None = None):
    """Inner normal fan of a full-dimensional polytope.

    Returns ``(fan, faces)``; each face's ``normal_cone`` is set, and the
    correspondence reverses inclusion with dim(face) + dim(cone) = rank.
    """
    if P.is_empty:
        raise ValueError("empty polytope has no normal fan")
    if rank != P.affine_dim or rank != P.ambient_rank:
        raise DimMismatch(f"lattice rank {rank} but polytope has dimension {P.affine_dim} "
                          f"in ambient rank {P.ambient_rank}")
    if faces is None:
        faces = face_lattice(P)
    facets = [f for f in faces if f.dim == rank - 1]
    facet_rays = []
    for f in facets:
        normals = {linalg.primitive(P.normals[i]) for i in f.tight_set if any(P.normals[i])}
        assert len(normals) == 1, normals
        facet_rays.append(normals.pop())
    rays = sorted(set(facet_rays))
    for f in faces:
        f.normal_cone = tuple(sorted(rays.index(r) for g, r in zip(facets, facet_rays)
                                     if f.vertex_subset <= g.vertex_subset))
    max_cones = [f.normal_cone for f in faces if f.dim == 0]
    fan = Fan(rank, rays, max_cones, cones=[f.normal_cone for f in faces])
    return fan, faces
