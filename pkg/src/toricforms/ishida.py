"""Ishida's l-th cochain complex of a simplicial fan (or a star closed / star
open subset of one) and its rational cohomology."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import linalg
from .errors import OutOfRange
from .exterior import contract
from .lattice import Cone, Fan, FanSubset, SubsetKind, as_subset, perp_wedges

Label = tuple[Cone, tuple[int, ...]]


@dataclass
class IshidaComplex:
    """Terms C^0..C^l with labelled bases and sparse differentials.

    ``differentials[j]`` maps ``(target, source)`` index pairs to the matrix
    entry of C^j -> C^{j+1}.
    """
    l: int
    rank: int
    terms: list[list[Label]]
    differentials: list[dict[tuple[int, int], object]]

    def dims(self) -> list[int]:
        return [len(t) for t in self.terms]

    def euler_characteristic(self) -> int:
        return sum((-1) ** j * n for j, n in enumerate(self.dims()))

    def is_complex(self) -> bool:
        """True iff every composite C^j -> C^{j+2} is exactly zero."""
        for j in range(len(self.differentials) - 1):
            first, second = self.differentials[j], self.differentials[j + 1]
            by_row: dict[int, list] = {}
            for (t, s), v in first.items():
                by_row.setdefault(t, []).append((s, v))
            product: dict[tuple[int, int], object] = {}
            for (u, t), v in second.items():
                for s, w in by_row.get(t, ()):
                    product[u, s] = product.get((u, s), 0) + v * w
            if any(product.values()):
                return False
        return True

    def matrix(self, j: int) -> list[list]:
        """Dense form of the j-th differential (rows = targets)."""
        rows, cols = len(self.terms[j + 1]), len(self.terms[j])
        M = [[0] * cols for _ in range(rows)]
        for (t, s), v in self.differentials[j].items():
            M[t][s] = v
        return M


def build_ishida(phi: Fan | FanSubset, l: int, scale=None) -> IshidaComplex:
    """Ishida's l-th complex of ``phi``.

    ``scale(gamma, tau)`` optionally multiplies e_{gamma,tau} by a positive
    rational.  It has to keep delta o delta = 0, e.g. a factor per ray times
    c(tau) / c(gamma); the cohomology is then unchanged.
    """
    phi = as_subset(phi)
    fan = phi.parent
    d = fan.rank
    if not 0 <= l <= d:
        raise OutOfRange(f"form degree l = {l} outside [0, {d}]")

    terms: list[list[Label]] = []
    index: list[dict[Label, int]] = []
    for j in range(l + 1):
        labels = [(g, S) for g in phi.cones_of_dim(j) for S, _ in perp_wedges(fan, g).monomials(l - j)]
        terms.append(labels)
        index.append({lab: n for n, lab in enumerate(labels)})

    differentials = []
    for j in range(l):
        D = {}
        src = 0
        for g in phi.cones_of_dim(j):
            targets = [t for t in fan.cofacets(g) if t in phi.cones]
            for S, w in perp_wedges(fan, g).monomials(l - j):
                for t in targets:
                    extra = next(r for r in t if r not in g)
                    e = fan.rays[extra]
                    if scale is not None:
                        e = [scale(g, t) * x for x in e]
                    image = contract(e, w)
                    for T, c in perp_wedges(fan, t).coordinates(image, l - j - 1).items():
                        D[index[j + 1][(t, T)], src] = c
                src += 1
        differentials.append(D)
    return IshidaComplex(l, d, terms, differentials)


def _rank_of(D: dict) -> int:
    cols: dict[int, dict] = {}
    for (t, s), v in D.items():
        cols.setdefault(s, {})[t] = v
    return linalg.rank(cols.values())


def cohomology_dims(K: IshidaComplex) -> list[int]:
    """h^j = dim C^j - rank(delta^j) - rank(delta^(j-1)), j = 0..l."""
    ranks = [_rank_of(D) for D in K.differentials] + [0]
    dims = K.dims()
    return [dims[j] - ranks[j] - (ranks[j - 1] if j else 0) for j in range(len(dims))]


def expected_term_dim(phi: Fan | FanSubset, l: int, j: int) -> int:
    phi = as_subset(phi)
    return sum(comb(phi.rank - j, l - j) for _ in phi.cones_of_dim(j)) if l >= j else 0


def star_split(phi: Fan | FanSubset, gamma: Cone) -> tuple[FanSubset, FanSubset]:
    """Split into the star of ``gamma`` (star closed) and its complement (star open)."""
    phi = as_subset(phi)
    star = frozenset(c for c in phi.cones if set(gamma) <= set(c))
    return (FanSubset(phi.parent, star, SubsetKind.STAR_CLOSED),
            FanSubset(phi.parent, phi.cones - star, SubsetKind.STAR_OPEN))


def subdivision_fan_of_cone(fan: Fan, contraction, sigma: Cone) -> FanSubset:
    """The cones of ``fan`` mapping into ``sigma``: a subdivision of the preimage cone."""
    return FanSubset(fan, frozenset(contraction.subfan(sigma)), SubsetKind.STAR_OPEN)
