"""Lattice geometry of rational fans: cones, face closures, annihilators,
quotient (star) fans, dual covectors, validation and the fan file format.

Cones are sorted tuples of indices into ``Fan.rays``; the zero cone is ``()``.
"""

from __future__ import annotations

import enum
from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import DimError, NotInSupport, ParseError
from .exterior import SubspaceWedges

Cone = tuple[int, ...]


class Fan:
    """A finite rational fan in N_R = R^rank.

    For simplicial input only ``max_cones`` is needed and every subset of a
    maximal cone is a face.  Non-simplicial fans (normal fans of polytopes)
    pass their full cone list through ``cones``.
    """

    def __init__(self, rank: int, rays: Sequence[Sequence[int]], max_cones: Iterable[Iterable[int]],
                 cones: Iterable[Iterable[int]] | None = None):
        self.rank = int(rank)
        self.rays: tuple[tuple[int, ...], ...] = tuple(tuple(int(x) for x in r) for r in rays)
        for r in self.rays:
            if len(r) != self.rank:
                raise ValueError(f"ray {r} does not have length {self.rank}")
        self.max_cones: tuple[Cone, ...] = tuple(tuple(sorted(set(c))) for c in max_cones)
        for c in self.max_cones:
            if any(i < 0 or i >= len(self.rays) for i in c):
                raise ValueError(f"cone {c} references a missing ray")
        if cones is None:
            closure = set()
            for c in self.max_cones:
                for k in range(len(c) + 1):
                    closure.update(combinations(c, k))
        else:
            closure = {tuple(sorted(set(c))) for c in cones} | set(self.max_cones)
        self._dims = {c: self._rank_of(c) for c in closure}
        by_dim: dict[int, list[Cone]] = defaultdict(list)
        for c in sorted(closure, key=lambda c: (self._dims[c], c)):
            by_dim[self._dims[c]].append(c)
        self.cones_by_dim: dict[int, list[Cone]] = dict(by_dim)
        self._cache: dict = {}

    def _rank_of(self, cone: Cone) -> int:
        if not cone:
            return 0
        return linalg.rank([self.rays[i] for i in cone])

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    @property
    def cones(self) -> list[Cone]:
        return [c for k in sorted(self.cones_by_dim) for c in self.cones_by_dim[k]]

    def __contains__(self, cone) -> bool:
        return tuple(sorted(cone)) in self._dims

    def __repr__(self):
        return f"Fan(rank={self.rank}, rays={len(self.rays)}, max_cones={len(self.max_cones)})"

    def dim(self, cone: Cone) -> int:
        return self._dims[cone]

    def cones_of_dim(self, k: int) -> list[Cone]:
        return self.cones_by_dim.get(k, [])

    def is_simplicial(self) -> bool:
        return all(len(c) == d for c, d in self._dims.items())

    def cofacets(self, cone: Cone) -> list[Cone]:
        """Cones of dimension ``dim(cone) + 1`` having ``cone`` as a face."""
        table = self._cache.get("cofacets")
        if table is None:
            table = defaultdict(list)
            for k, cs in self.cones_by_dim.items():
                for c in cs:
                    for f in self.cones_of_dim(k - 1):
                        if set(f) <= set(c):
                            table[f].append(c)
            self._cache["cofacets"] = table
        return table.get(cone, [])

    def generators(self, cone: Cone) -> list[tuple[int, ...]]:
        return [self.rays[i] for i in cone]


class SubsetKind(enum.Enum):
    STAR_CLOSED = "star_closed"
    STAR_OPEN = "star_open"
    WHOLE = "whole"


@dataclass(frozen=True)
class FanSubset:
    parent: Fan
    cones: frozenset
    kind: SubsetKind

    @classmethod
    def whole(cls, fan: Fan) -> "FanSubset":
        return cls(fan, frozenset(fan.cones), SubsetKind.WHOLE)

    def cones_of_dim(self, k: int) -> list[Cone]:
        return [c for c in self.parent.cones_of_dim(k) if c in self.cones]

    @property
    def rank(self) -> int:
        return self.parent.rank

    def is_star_closed(self) -> bool:
        return all(t in self.cones for c in self.cones for t in self.parent.cones
                   if set(c) <= set(t))

    def is_star_open(self) -> bool:
        return all(f in self.cones for c in self.cones for f in self.parent.cones
                   if set(f) <= set(c))


def as_subset(phi) -> FanSubset:
    return phi if isinstance(phi, FanSubset) else FanSubset.whole(phi)


# -- annihilators and dual covectors ------------------------------------------


def cone_perp_basis(fan: Fan, cone: Cone) -> list[list[Fraction]]:
    """Reduced echelon Q-basis of the annihilator of ``cone`` in M_Q."""
    return perp_wedges(fan, cone).basis


def perp_wedges(fan: Fan, cone: Cone) -> SubspaceWedges:
    cache = fan._cache.setdefault("perp", {})
    if cone not in cache:
        basis = linalg.kernel(fan.generators(cone), fan.rank)
        pivots = [next(j for j, v in enumerate(b) if v != 0) for b in basis]
        cache[cone] = SubspaceWedges(basis, pivots, fan.rank)
    return cache[cone]


def perp_lattice_basis(fan: Fan, cone: Cone) -> list[list[int]]:
    """Z-basis (Hermite form) of M ∩ cone^perp."""
    return linalg.integer_kernel(fan.generators(cone), fan.rank)


def dual_covector(fan: Fan, tau: Cone, i: int) -> tuple[Fraction, ...]:
    """The covector m with <m, e_i> = 1 and <m, e_j> = 0 for the other rays of tau.

    Zero when ray ``i`` is not in ``tau``.
    """
    if tau not in fan or fan.dim(tau) != fan.rank or len(tau) != fan.rank:
        raise DimError(f"cone {tau} is not a maximal simplicial cone of the fan")
    if i not in tau:
        return tuple(Fraction(0) for _ in range(fan.rank))
    cache = fan._cache.setdefault("dual", {})
    if tau not in cache:
        G = fan.generators(tau)
        Gt = [[G[r][c] for r in range(len(G))] for c in range(fan.rank)]
        cache[tau] = linalg.inverse(Gt)
    return tuple(cache[tau][tau.index(i)])


# -- quotient fans ------------------------------------------------------------


def quotient_map(fan: Fan, gamma: Cone) -> list[list[int]]:
    """Integer matrix of a surjection N -> N / N_gamma (rows: a Z-basis of gamma^perp ∩ M)."""
    return perp_lattice_basis(fan, gamma)


def quotient_star(fan: Fan, gamma: Cone) -> tuple[Fan, dict[Cone, Cone]]:
    """The star fan of ``gamma`` in the quotient lattice, with the cone correspondence."""
    Q = quotient_map(fan, gamma)
    star = [t for t in fan.cones if set(gamma) <= set(t)]
    used = sorted({r for t in star for r in t if r not in gamma})
    new_index = {r: j for j, r in enumerate(used)}
    rays = [linalg.primitive([linalg.dot(u, fan.rays[r]) for u in Q]) for r in used]
    corr = {t: tuple(sorted(new_index[r] for r in t if r not in gamma)) for t in star}
    max_cones = [corr[t] for t in fan.max_cones if set(gamma) <= set(t)]
    return Fan(len(Q), rays, max_cones), corr


# -- cone membership ----------------------------------------------------------


def _in_simplicial(gens: Sequence[Sequence[int]], v: Sequence) -> bool:
    if not gens:
        return all(x == 0 for x in v)
    cols = [[g[r] for g in gens] for r in range(len(v))]
    x = linalg.solve(cols, list(v))
    return x is not None and all(c >= 0 for c in x)


def cone_contains(fan: Fan, cone: Cone, v: Sequence) -> bool:
    gens = fan.generators(cone)
    k = fan.dim(cone)
    if len(gens) == k:
        return _in_simplicial(gens, v)
    # Carathéodory: v lies in some simplicial cone on independent generators.
    for sub in combinations(gens, k):
        if linalg.rank(sub) == k and _in_simplicial(sub, v):
            return True
    return False


def minimal_containing_cone(fan: Fan, vectors) -> Cone:
    """Smallest cone of ``fan`` containing every given vector."""
    if vectors and not isinstance(vectors[0], (list, tuple)):
        vectors = [vectors]
    vectors = [tuple(v) for v in vectors if any(x != 0 for x in v)]
    for k in sorted(fan.cones_by_dim):
        for c in fan.cones_of_dim(k):
            if all(cone_contains(fan, c, v) for v in vectors):
                return c
    raise NotInSupport(f"no cone contains {vectors}")


# -- validation ---------------------------------------------------------------


@dataclass
class ValidationEntry:
    code: str
    message: str


@dataclass
class ValidationReport:
    errors: list[ValidationEntry] = field(default_factory=list)
    complete: bool | None = None

    @property
    def ok(self) -> bool:
        return not self.errors

    def add(self, code: str, message: str) -> None:
        self.errors.append(ValidationEntry(code, message))

    def codes(self) -> set[str]:
        return {e.code for e in self.errors}


def _positive_circuit(vectors: list[list[int]]) -> bool:
    """True if some nontrivial nonnegative combination of ``vectors`` vanishes."""
    if not vectors:
        return False
    dim = len(vectors[0])
    for size in range(1, min(len(vectors), dim + 1) + 1):
        for S in combinations(range(len(vectors)), size):
            cols = [[vectors[s][r] for s in S] for r in range(dim)]
            K = linalg.kernel(cols, size)
            if len(K) == 1:
                signs = {(x > 0) - (x < 0) for x in K[0]}
                if signs in ({1}, {-1}):
                    return True
    return False


def _meet_properly(fan: Fan, s: Cone, t: Cone) -> bool:
    shared = tuple(sorted(set(s) & set(t)))
    Q = quotient_map(fan, shared)
    image = lambda r: [linalg.dot(u, fan.rays[r]) for u in Q]  # noqa: E731
    vecs = [image(r) for r in s if r not in shared]
    vecs += [[-x for x in image(r)] for r in t if r not in shared]
    return not _positive_circuit(vecs)


def fan_validate(fan: Fan, require_complete: bool = False) -> ValidationReport:
    report = ValidationReport()
    for i, r in enumerate(fan.rays):
        g = 0
        for x in r:
            g = gcd(g, x)
        if g != 1:
            report.add("NONPRIMITIVE_RAY", f"ray {i} = {r} is not primitive")
    nonsimplicial = [c for c in fan.max_cones if fan.dim(c) != len(c)]
    for c in nonsimplicial:
        report.add("NONSIMPLICIAL", f"cone {c} has {len(c)} generators but dimension {fan.dim(c)}")
    if not nonsimplicial:
        for s, t in combinations(fan.max_cones, 2):
            if not _meet_properly(fan, s, t):
                report.add("BAD_INTERSECTION", f"cones {s} and {t} do not meet in a common face")

    d = fan.rank
    complete = True
    if any(fan.dim(c) != d for c in fan.max_cones):
        complete = False
    maximal = [c for c in fan.max_cones if fan.dim(c) == d]
    incidence: dict[Cone, list[Cone]] = defaultdict(list)
    for c in maximal if d > 0 else ():
        for f in combinations(c, len(c) - 1):
            incidence[f].append(c)
    if any(len(v) != 2 for v in incidence.values()):
        complete = False
    if maximal:
        adj = defaultdict(set)
        for v in incidence.values():
            for a, b in combinations(v, 2):
                adj[a].add(b)
                adj[b].add(a)
        seen, todo = {maximal[0]}, deque([maximal[0]])
        while todo:
            for n in adj[todo.popleft()]:
                if n not in seen:
                    seen.add(n)
                    todo.append(n)
        complete = complete and len(seen) == len(maximal)
    else:
        complete = False
    report.complete = complete
    if require_complete and not complete:
        report.add("NOT_COMPLETE", "fan is not complete (facet pairing, dimension or connectivity fails)")
    return report


# -- file format --------------------------------------------------------------


def fan_from_mapping(doc: Mapping) -> Fan:
    """Build a fan from ``{"rank": d, "rays": [...], "max_cones": [...]}``."""
    if not isinstance(doc, Mapping):
        raise ParseError("fan document must be a mapping with rank, rays, max_cones")
    missing = [k for k in ("rank", "rays", "max_cones") if k not in doc]
    if missing:
        raise ParseError(f"missing field(s): {', '.join(missing)}")
    rank = doc["rank"]
    if not isinstance(rank, int) or rank < 0:
        raise ParseError(f"field 'rank': expected a non-negative integer, got {rank!r}")
    rays = doc["rays"] or []
    seen = {}
    for i, r in enumerate(rays):
        if not isinstance(r, (list, tuple)) or not all(isinstance(x, int) for x in r):
            raise ParseError(f"field 'rays', entry {i}: expected a list of integers, got {r!r}")
        if len(r) != rank:
            raise ParseError(f"field 'rays', entry {i}: length {len(r)} != rank {rank}")
        if tuple(r) in seen:
            raise ParseError(f"field 'rays', entry {i}: duplicate ray {tuple(r)} (also entry {seen[tuple(r)]})")
        seen[tuple(r)] = i
    cones = doc["max_cones"] or []
    for j, c in enumerate(cones):
        if not isinstance(c, (list, tuple)) or not all(isinstance(x, int) for x in c):
            raise ParseError(f"field 'max_cones', entry {j}: expected a list of ray indices, got {c!r}")
        bad = [x for x in c if x < 0 or x >= len(rays)]
        if bad:
            raise ParseError(f"field 'max_cones', entry {j}: ray index {bad[0]} out of range")
    return Fan(rank, rays, cones)


def fan_to_mapping(fan: Fan) -> dict:
    return {"rank": fan.rank, "rays": [list(r) for r in fan.rays],
            "max_cones": [list(c) for c in fan.max_cones]}
