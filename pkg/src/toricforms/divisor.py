"""Torus-invariant divisors: support functions, Cartier / semiample tests,
Kodaira-Iitaka dimension and the canonical contraction N -> N / N'."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import NotSemiample
from .lattice import Cone, Fan, dual_covector, minimal_containing_cone
from .polytope import Polytope, PolytopeFace, divisor_polytope, normal_fan, polytope_from_inequalities


@dataclass(frozen=True)
class SupportFunction:
    """Local linear data m_sigma, one per maximal cone, with <m_sigma, e_i> = -a_i on sigma."""
    fan: Fan
    coeffs: tuple[int, ...]
    local: dict

    def __call__(self, v: Sequence) -> Fraction:
        cone = minimal_containing_cone(self.fan, tuple(v))
        sigma = next(s for s in self.fan.max_cones if set(cone) <= set(s))
        return linalg.dot(self.local[sigma], v)


@dataclass(frozen=True)
class Classification:
    cartier: bool
    semiample: bool
    iitaka_dim: int | None


def support_function(fan: Fan, a: Sequence[int]) -> SupportFunction:
    if len(a) != fan.n_rays:
        raise ValueError(f"divisor has {len(a)} coefficients, fan has {fan.n_rays} rays")
    local = {}
    for sigma in fan.max_cones:
        m = [Fraction(0)] * fan.rank
        for i in sigma:
            m = [x - a[i] * y for x, y in zip(m, dual_covector(fan, sigma, i))]
        local[sigma] = tuple(m)
    return SupportFunction(fan, tuple(a), local)


def classify(fan: Fan, a: Sequence[int]) -> Classification:
    psi = support_function(fan, a)
    cartier = all(x.denominator == 1 for m in psi.local.values() for x in m)
    convex = all(linalg.dot(m, e) >= -aj for m in psi.local.values() for e, aj in zip(fan.rays, a))
    semiample = cartier and convex
    iitaka = divisor_polytope(fan, a).affine_dim if semiample else None
    return Classification(cartier, semiample, iitaka)


def shift_by_character(fan: Fan, a: Sequence[int], m: Sequence[int]) -> tuple[int, ...]:
    """Coefficients of D + div(chi^m)."""
    return tuple(ai + linalg.dot(m, e) for ai, e in zip(a, fan.rays))


def class_key(fan: Fan, a: Sequence[int]) -> tuple:
    """A representative independent of the torus-invariant choice within the class."""
    tau = fan.max_cones[0]
    m = [Fraction(0)] * fan.rank
    for i in tau:
        m = [x + a[i] * y for x, y in zip(m, dual_covector(fan, tau, i))]
    return tuple(ai - linalg.dot(m, e) for ai, e in zip(a, fan.rays))


@dataclass
class ContractionData:
    coeffs: tuple[int, ...]
    lineality: list[list[int]]        # Z-basis of N'
    projection: list[list[int]]       # rows: Z-basis of M_X; v -> (<u, v>)_u is N -> N_D
    base_point: tuple[int, ...]       # a vertex m_sigma0 of the divisor polytope
    polytope: Polytope                # divisor polytope in M
    polytope_x: Polytope              # the same polytope in M_X coordinates
    faces: list[PolytopeFace]         # faces of polytope_x, normal cones filled in
    sigma_fan: Fan                    # normal fan of polytope_x in N_D
    iitaka_dim: int
    cone_image: dict                  # cone of Sigma -> minimal cone of sigma_fan containing its image

    @property
    def m_x_basis(self) -> list[list[int]]:
        return self.projection

    def project(self, v: Sequence) -> tuple:
        return tuple(linalg.dot(u, v) for u in self.projection)

    def to_m(self, c: Sequence) -> tuple:
        """M coordinates of a point of polytope_x."""
        m = list(self.base_point)
        for ci, u in zip(c, self.projection):
            m = [x + ci * y for x, y in zip(m, u)]
        return tuple(m)

    def face_of(self, sigma: Cone) -> PolytopeFace:
        return next(f for f in self.faces if f.normal_cone == sigma)

    def subfan(self, sigma: Cone) -> set:
        """Cones of Sigma whose image lies in sigma."""
        return {g for g, s in self.cone_image.items() if set(s) <= set(sigma)}


def contraction(fan: Fan, a: Sequence[int]) -> ContractionData:
    info = classify(fan, a)
    if not info.semiample:
        raise NotSemiample(f"divisor {tuple(a)} is not semiample "
                           f"({'Cartier, not convex' if info.cartier else 'not Cartier'})")
    psi = support_function(fan, a)
    d = fan.rank
    sigma0 = fan.max_cones[0]
    m0 = tuple(int(x) for x in psi.local[sigma0])
    diffs = [[x - y for x, y in zip(psi.local[s], m0)] for s in fan.max_cones if s != sigma0]
    diffs = [r for r in diffs if any(r)]
    lineality = linalg.integer_kernel(diffs, d)
    projection = linalg.integer_kernel(lineality, d)
    i = len(projection)

    proj = lambda v: tuple(linalg.dot(u, v) for u in projection)  # noqa: E731
    normals = [proj(e) for e in fan.rays]
    offsets = [-aj - linalg.dot(m0, e) for aj, e in zip(a, fan.rays)]
    PX = polytope_from_inequalities(normals, offsets, i)
    sigma_fan, faces = normal_fan(PX, i)
    cone_image = {g: minimal_containing_cone(sigma_fan, [proj(fan.rays[r]) for r in g])
                  for g in fan.cones}
    return ContractionData(
        coeffs=tuple(a), lineality=lineality, projection=projection, base_point=m0,
        polytope=divisor_polytope(fan, a), polytope_x=PX, faces=faces,
        sigma_fan=sigma_fan, iitaka_dim=i, cone_image=cone_image,
    )


@lru_cache(maxsize=256)
def _contraction_cached(fan: Fan, a: tuple) -> ContractionData:
    return contraction(fan, a)


def cached_contraction(fan: Fan, a: Sequence[int]) -> ContractionData:
    """``contraction`` memoized per (fan, coefficients); callers must not mutate the result."""
    return _contraction_cached(fan, tuple(a))
