"""dim H^k(P_Sigma, Omega^l(X)) for a semiample torus-invariant divisor X.

Three routes:

* ``chow``   -- sum over cones sigma of the contracted fan of
                l*(face) * dim A^sigma_k * C(i - dim sigma, l - k);
* ``count``  -- the closed-form sum over faces of the polytope with
                face-wise cone counts;
* ``direct`` -- rank computation on the whole complex of global sections of
                the twisted Ishida resolution.  It only uses the fan, the
                divisor and lattice points, never the contraction, Chow or
                counting code.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from itertools import product
from math import ceil, comb, floor
from typing import Sequence

from . import linalg
from .chow import chow_dim
from .divisor import ContractionData, cached_contraction, classify, support_function
from .errors import NotSemiample, OutOfRange, RouteMismatch
from .exterior import contract
from .ishida import subdivision_fan_of_cone
from .lattice import Cone, Fan, perp_wedges


class Route(str, enum.Enum):
    CHOW = "chow"
    COUNT = "count"
    DIRECT = "direct"
    ALL = "all"


def binom(n: int, m: int) -> int:
    return comb(n, m) if 0 <= m <= n else 0


def _check_range(fan: Fan, k: int, l: int) -> None:
    if not (0 <= k <= fan.rank and 0 <= l <= fan.rank):
        raise OutOfRange(f"(k, l) = ({k}, {l}) outside [0, {fan.rank}]^2")


def sigma_perp_rank(data: ContractionData, sigma: Cone) -> int:
    """rank of M_X ∩ sigma^perp, by an integer kernel computation."""
    return len(linalg.integer_kernel(data.sigma_fan.generators(sigma), data.iitaka_dim))


# -- route CHOW ---------------------------------------------------------------


def h_dims_chow(fan: Fan, a: Sequence[int], k: int, l: int) -> int:
    _check_range(fan, k, l)
    data = cached_contraction(fan, a)
    i = data.iitaka_dim
    total = 0
    for sigma in data.sigma_fan.cones:
        lstar = data.face_of(sigma).interior_count
        wedge = binom(i - data.sigma_fan.dim(sigma), l - k)
        if lstar and wedge:
            total += lstar * wedge * chow_dim(subdivision_fan_of_cone(fan, data, sigma), k)
    return total


# -- route COUNT --------------------------------------------------------------


def h_dims_counting(fan: Fan, a: Sequence[int], k: int, l: int) -> int:
    _check_range(fan, k, l)
    data = cached_contraction(fan, a)
    d = fan.rank
    total = 0
    for face in data.faces:
        lstar = face.interior_count
        wedge = binom(face.dim, l - k)
        if not (lstar and wedge):
            continue
        sub = data.subfan(face.normal_cone)
        counts = [sum(1 for g in sub if len(g) == j) for j in range(k + 1)]
        inner = sum(binom(d - face.dim - j, k - j) * (-1) ** (k - j) * counts[j] for j in range(k + 1))
        total += lstar * wedge * inner
    return total


# -- route DIRECT -------------------------------------------------------------


def _section_points(fan: Fan, a: Sequence[int]) -> list[tuple[int, ...]]:
    """Lattice points of {m : <m, e_i> >= -a_i}; its vertices are the m_sigma."""
    local = support_function(fan, a).local.values()
    d = fan.rank
    lo = [floor(min(m[j] for m in local)) for j in range(d)]
    hi = [ceil(max(m[j] for m in local)) for j in range(d)]
    return [m for m in product(*(range(x, y + 1) for x, y in zip(lo, hi)))
            if all(linalg.dot(m, e) >= -ai for e, ai in zip(fan.rays, a))]


def global_sections_complex(fan: Fan, a: Sequence[int], l: int):
    """Terms and differentials of the complex of global sections.

    Degree j has basis (gamma, m, S): gamma a j-cone, m a lattice point on
    every facet {<m, e_i> = -a_i} with e_i in gamma, S a wedge monomial over
    the echelon basis of gamma^perp of size l - j.  The differential contracts
    with the new ray and keeps m when it survives on the larger cone.
    """
    if not classify(fan, a).semiample:
        raise NotSemiample(f"divisor {tuple(a)} is not semiample")
    points = _section_points(fan, a)
    tight = [frozenset(i for i, (e, ai) in enumerate(zip(fan.rays, a)) if linalg.dot(m, e) == -ai)
             for m in points]
    terms, index = [], []
    for j in range(l + 1):
        labels = [(g, p, S) for g in fan.cones_of_dim(j)
                  for p in range(len(points)) if set(g) <= tight[p]
                  for S, _ in perp_wedges(fan, g).monomials(l - j)]
        terms.append(labels)
        index.append({lab: n for n, lab in enumerate(labels)})
    differentials = []
    for j in range(l):
        rows = []
        for g, p, S in terms[j]:
            w = dict(perp_wedges(fan, g).monomials(l - j))[S]
            row = {}
            for t in fan.cofacets(g):
                if not set(t) <= tight[p]:
                    continue
                extra = next(r for r in t if r not in g)
                image = contract(fan.rays[extra], w)
                for T, c in perp_wedges(fan, t).coordinates(image, l - j - 1).items():
                    row[index[j + 1][(t, p, T)]] = c
            rows.append(row)
        differentials.append(rows)
    return terms, differentials


def direct_dims(fan: Fan, a: Sequence[int], l: int) -> list[int]:
    """[h^0, ..., h^d] of Omega^l(X) from the global-sections complex."""
    terms, differentials = global_sections_complex(fan, a, l)
    ranks = [linalg.rank(rows) for rows in differentials] + [0]
    out = [len(terms[j]) - ranks[j] - (ranks[j - 1] if j else 0) for j in range(l + 1)]
    return out + [0] * (fan.rank - l)


def h_dims_direct(fan: Fan, a: Sequence[int], k: int, l: int) -> int:
    _check_range(fan, k, l)
    return direct_dims(fan, a, l)[k]


# -- tables -------------------------------------------------------------------


@dataclass
class HodgeTable:
    d: int
    i: int
    entries: list[list[int]]   # entries[k][l]
    route: str

    def __getitem__(self, kl: tuple[int, int]) -> int:
        return self.entries[kl[0]][kl[1]]

    def to_dict(self) -> dict:
        return {"d": self.d, "i": self.i, "route": self.route, "entries": self.entries}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_text(self) -> str:
        width = max(3, *(len(str(v)) for row in self.entries for v in row))
        head = "k\\l " + " ".join(str(l).rjust(width) for l in range(self.d + 1))
        lines = [f"d = {self.d}, i = {self.i}, route = {self.route}", head]
        for k, row in enumerate(self.entries):
            lines.append(f"{k:>3} " + " ".join(str(v).rjust(width) for v in row))
        return "\n".join(lines)


def _table_for(fan: Fan, a: Sequence[int], route: Route) -> list[list[int]]:
    d = fan.rank
    if route is Route.DIRECT:
        cols = [direct_dims(fan, a, l) for l in range(d + 1)]
        return [[cols[l][k] for l in range(d + 1)] for k in range(d + 1)]
    f = h_dims_chow if route is Route.CHOW else h_dims_counting
    return [[f(fan, a, k, l) for l in range(d + 1)] for k in range(d + 1)]


def full_table(fan: Fan, a: Sequence[int], route: Route | str = Route.ALL) -> HodgeTable:
    route = Route(route)
    a = tuple(a)
    info = classify(fan, a)
    if not info.semiample:
        raise NotSemiample(f"divisor {a} is not semiample")
    if route is not Route.ALL:
        return HodgeTable(fan.rank, info.iitaka_dim, _table_for(fan, a, route), route.value)
    tables = {r: _table_for(fan, a, r) for r in (Route.CHOW, Route.COUNT, Route.DIRECT)}
    for k in range(fan.rank + 1):
        for l in range(fan.rank + 1):
            vals = {r.value: t[k][l] for r, t in tables.items()}
            if len(set(vals.values())) != 1:
                raise RouteMismatch(k, l, vals)
    return HodgeTable(fan.rank, info.iitaka_dim, tables[Route.CHOW], Route.ALL.value)


# -- vanishing audit ----------------------------------------------------------


@dataclass
class AuditReport:
    d: int
    i: int
    table: HodgeTable
    vanishing_cells: list[tuple[int, int, int]] = field(default_factory=list)
    top_form_cells: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def vanishing_ok(self) -> bool:
        return all(v == 0 for _, _, v in self.vanishing_cells)

    @property
    def top_form_ok(self) -> bool:
        return all(v == 0 for _, _, v in self.top_form_cells)

    @property
    def passed(self) -> bool:
        return self.vanishing_ok and self.top_form_ok

    def to_dict(self) -> dict:
        return {"d": self.d, "i": self.i, "passed": self.passed,
                "vanishing": {"ok": self.vanishing_ok, "cells": [list(c) for c in self.vanishing_cells]},
                "top_forms": {"ok": self.top_form_ok, "cells": [list(c) for c in self.top_form_cells]},
                "table": self.table.to_dict()}

    def to_text(self) -> str:
        bad = [c for c in self.vanishing_cells + self.top_form_cells if c[2]]
        lines = [
            f"{'PASS' if self.passed else 'FAIL'}: d = {self.d}, i = {self.i}",
            f"  k > l or l > k + i: {len(self.vanishing_cells)} cells, "
            f"{'all zero' if self.vanishing_ok else 'NONZERO'}",
            f"  l = d, k != d - i: {len(self.top_form_cells)} cells, "
            f"{'all zero' if self.top_form_ok else 'NONZERO'}",
        ]
        lines += [f"  violation at (k, l) = ({k}, {l}): {v}" for k, l, v in bad]
        return "\n".join(lines)


def vanishing_audit(fan: Fan, a: Sequence[int]) -> AuditReport:
    table = full_table(fan, a, Route.CHOW)
    d, i = table.d, table.i
    report = AuditReport(d, i, table)
    for k in range(d + 1):
        for l in range(d + 1):
            if k > l or l > k + i:
                report.vanishing_cells.append((k, l, table.entries[k][l]))
        if k != d - i:
            report.top_form_cells.append((k, d, table.entries[k][d]))
    return report
