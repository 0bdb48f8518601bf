"""Explicit Čech cocycles for H^k(P_Sigma, Omega^l(X)) on the cover by the
affine charts of the maximal cones.

A covector m of M_Q stands for the invariant form sum_i <m, e_i> dlog x_i.
Forms are kept in the standard basis of the exterior algebra of M_Q and
only translated into dlog x_i symbols for display.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import linalg
from .chow import chow_basis
from .divisor import ContractionData, cached_contraction
from .errors import DegreeMismatch, OutOfRange
from .exterior import Wedge, add, wedge_of, wedge_product
from .ishida import subdivision_fan_of_cone
from .lattice import Cone, Fan, dual_covector


@dataclass(frozen=True)
class CocycleGenerator:
    sigma: Cone                      # cone of the contracted fan
    point: tuple[int, ...]           # lattice point of M in the relative interior of the face of sigma
    A: tuple[int, ...]               # exponents of the monomial A
    gamma: Cone                      # Chow basis cone, rays i_1 < ... < i_k
    omega_index: tuple[int, ...]     # wedge monomial over the basis of M_X ∩ sigma^perp
    omega: tuple[tuple[int, ...], ...]   # the covectors wedged together, in M coordinates
    k: int
    l: int


def sigma_perp_lattice(data: ContractionData, sigma: Cone) -> list[tuple[int, ...]]:
    """Z-basis of M_X ∩ sigma^perp, written in M coordinates."""
    rows = linalg.integer_kernel(data.sigma_fan.generators(sigma), data.iitaka_dim)
    d = len(data.base_point)
    return [tuple(sum(c * u[t] for c, u in zip(row, data.projection)) for t in range(d)) for row in rows]


def generators(fan: Fan, a: Sequence[int], k: int, l: int) -> list[CocycleGenerator]:
    if not (0 <= k <= fan.rank and 0 <= l <= fan.rank):
        raise OutOfRange(f"(k, l) = ({k}, {l}) outside [0, {fan.rank}]^2")
    data = cached_contraction(fan, a)
    if k > l:
        return []
    out = []
    for sigma in data.sigma_fan.cones:
        face = data.face_of(sigma)
        if not face.interior_points:
            continue
        basis = sigma_perp_lattice(data, sigma)
        omegas = list(combinations(range(len(basis)), l - k))
        if not omegas:
            continue
        cones = chow_basis(subdivision_fan_of_cone(fan, data, sigma), k)
        outside = [0 if set(data.cone_image[(j,)]) <= set(sigma) else 1 for j in range(fan.n_rays)]
        for c in face.interior_points:
            m = data.to_m(c)
            full = [linalg.dot(m, e) + aj for e, aj in zip(fan.rays, a)]
            A = tuple(x - o for x, o in zip(full, outside))
            for gamma in cones:
                for S in omegas:
                    out.append(CocycleGenerator(sigma, tuple(int(x) for x in m), A, gamma, S,
                                                tuple(basis[s] for s in S), k, l))
    return out


@dataclass
class CechCocycle:
    """Alternating Čech k-cochain on increasing tuples of maximal cones.

    Every component is ``coefficient * form``; the coefficient is the same
    Laurent monomial (exponent vector over x_1..x_n) for all tuples.
    """
    fan: Fan
    k: int
    l: int
    coefficient: tuple[int, ...]
    components: dict[tuple[int, ...], Wedge] = field(default_factory=dict)

    def coboundary(self) -> dict[tuple[int, ...], Wedge]:
        """Nonzero components of the Čech coboundary on increasing (k+2)-tuples."""
        out = {}
        for T in combinations(range(len(self.fan.max_cones)), self.k + 2):
            total: Wedge = {}
            for t in range(self.k + 2):
                face = T[:t] + T[t + 1:]
                if face in self.components:
                    total = add(total, self.components[face], (-1) ** t)
            if total:
                out[T] = total
        return out

    def is_cocycle(self) -> bool:
        return not self.coboundary()

    def dlog(self, w: Wedge) -> dict[tuple[int, ...], Fraction]:
        """Rewrite a form over M_Q as a combination of dlog x_I = dlog x_{i_1} ^ ... ."""
        out: dict[tuple[int, ...], Fraction] = {}
        rays = self.fan.rays
        for T, c in w.items():
            for I in combinations(range(len(rays)), len(T)):
                v = linalg.det([[rays[i][t] for i in I] for t in T])
                if v:
                    out[I] = out.get(I, 0) + c * v
        return {I: v for I, v in sorted(out.items()) if v}

    def _coefficient_text(self) -> str:
        num = [f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(self.coefficient) if e > 0]
        den = [f"x{i + 1}" + (f"^{-e}" if e < -1 else "") for i, e in enumerate(self.coefficient) if e < 0]
        text = "*".join(num) or "1"
        return f"{text}/({'*'.join(den)})" if den else text

    @staticmethod
    def _form_text(form: dict) -> str:
        if not form:
            return "0"
        parts = []
        for I, c in form.items():
            sym = " ^ ".join(f"dlog x{i + 1}" for i in I) or "1"
            parts.append(f"{'-' if c < 0 else '+'} {abs(c)} {sym}" if abs(c) != 1 else f"{'-' if c < 0 else '+'} {sym}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else text

    def to_text(self) -> str:
        cones = self.fan.max_cones
        lines = [f"Cech {self.k}-cocycle of Omega^{self.l}(X), coefficient {self._coefficient_text()}"]
        for T, w in sorted(self.components.items()):
            label = ",".join("<" + ",".join(str(r + 1) for r in cones[t]) + ">" for t in T)
            lines.append(f"({label}) -> {self._coefficient_text()} * [{self._form_text(self.dlog(w))}]")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        cones = self.fan.max_cones
        return {
            "k": self.k, "l": self.l, "coefficient": list(self.coefficient),
            "components": [
                {"tuple": [list(cones[t]) for t in T],
                 "form": [{"dlog": list(I), "coeff": str(c)} for I, c in self.dlog(w).items()]}
                for T, w in sorted(self.components.items())
            ],
        }


def _check_degree(fan: Fan, a: Sequence[int], f: Sequence[int]) -> None:
    if len(f) != fan.n_rays or any(x < 0 for x in f):
        raise DegreeMismatch(f"f = {tuple(f)} is not a monomial in {fan.n_rays} variables")
    m = linalg.solve([list(e) for e in fan.rays], [x - y for x, y in zip(f, a)])
    if m is None or any(x.denominator != 1 for x in m):
        raise DegreeMismatch(f"x^{tuple(f)} is not in the degree of the divisor {tuple(a)}")


def default_section(fan: Fan, a: Sequence[int]) -> tuple[int, ...]:
    """x^a when a >= 0, else the monomial of a vertex of the divisor polytope."""
    if all(x >= 0 for x in a):
        return tuple(a)
    data = cached_contraction(fan, a)
    return tuple(int(linalg.dot(data.base_point, e) + aj) for e, aj in zip(fan.rays, a))


def emit_cech_cocycle(fan: Fan, a: Sequence[int], g: CocycleGenerator, f: Sequence[int] | None = None) -> CechCocycle:
    f = default_section(fan, a) if f is None else tuple(f)
    _check_degree(fan, a, f)
    full = [linalg.dot(g.point, e) + aj for e, aj in zip(fan.rays, a)]
    coefficient = tuple(x - y for x, y in zip(full, f))
    omega = wedge_of(list(g.omega), fan.rank)
    cocycle = CechCocycle(fan, g.k, g.l, coefficient)
    maxes = fan.max_cones
    for T in combinations(range(len(maxes)), g.k + 1):
        diffs = []
        for s, i in enumerate(g.gamma, start=1):
            hi = dual_covector(fan, maxes[T[s]], i)
            lo = dual_covector(fan, maxes[T[s - 1]], i)
            diffs.append([x - y for x, y in zip(hi, lo)])
        form = wedge_product(wedge_of(diffs, fan.rank), omega)
        if form:
            cocycle.components[T] = form
    return cocycle
