"""Built-in fans: projective spaces, products, Hirzebruch surfaces and a
star subdivision of the fan of P^3."""

from __future__ import annotations

from itertools import combinations

from . import linalg
from .lattice import Cone, Fan


def projective_space(n: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [tuple([-1] * n)]
    return Fan(n, rays, combinations(range(n + 1), n))


def product_fan(A: Fan, B: Fan) -> Fan:
    rays = [r + (0,) * B.rank for r in A.rays] + [(0,) * A.rank + r for r in B.rays]
    off = A.n_rays
    cones = [s + tuple(off + j for j in t) for s in A.max_cones for t in B.max_cones]
    return Fan(A.rank + B.rank, rays, cones)


def hirzebruch(a: int) -> Fan:
    return Fan(2, [(1, 0), (0, 1), (-1, a), (0, -1)], [(0, 1), (1, 2), (2, 3), (0, 3)])


def stellar_subdivision(fan: Fan, cone: Cone, ray=None) -> Fan:
    """Insert a ray through the relative interior of ``cone`` (default: the primitive
    sum of its generators) and replace every maximal cone containing it."""
    if ray is None:
        ray = linalg.primitive([sum(c) for c in zip(*fan.generators(cone))])
    new = fan.n_rays
    max_cones = []
    for t in fan.max_cones:
        if set(cone) <= set(t):
            max_cones += [tuple(sorted(set(t) - {r} | {new})) for r in cone]
        else:
            max_cones.append(t)
    return Fan(fan.rank, list(fan.rays) + [tuple(ray)], max_cones)


def subdivided_p3() -> Fan:
    """P^3 with each maximal cone star-subdivided at its barycentre (8 rays, 12 cones)."""
    fan = projective_space(3)
    for cone in list(fan.max_cones):
        fan = stellar_subdivision(fan, cone)
    return fan


def _build():
    P1 = projective_space(1)
    fans = {f"P{n}": projective_space(n) for n in range(1, 5)}
    fans["P1xP1"] = product_fan(P1, P1)
    fans["P1xP2"] = product_fan(P1, projective_space(2))
    for a in range(4):
        fans[f"F{a}"] = hirzebruch(a)
    fans["P3sub"] = subdivided_p3()
    return fans


BUILTINS = _build()

DESCRIPTIONS = {
    **{f"P{n}": f"projective space P^{n}" for n in range(1, 5)},
    "P1xP1": "product P^1 x P^1",
    "P1xP2": "product P^1 x P^2",
    **{f"F{a}": f"Hirzebruch surface F_{a}" for a in range(4)},
    "P3sub": "P^3 with all four maximal cones star-subdivided (8 rays)",
}


def builtin(name: str) -> Fan:
    try:
        return BUILTINS[name]
    except KeyError:
        raise KeyError(f"unknown builtin fan {name!r}; choose from {', '.join(BUILTINS)}") from None
