"""Shared corpus and independent oracles for the test suite."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import product

from toricforms import linalg
from toricforms.divisor import class_key, classify
from toricforms.engine import binom
from toricforms.examples import BUILTINS, stellar_subdivision
from toricforms.ishida import build_ishida, cohomology_dims
from toricforms.lattice import Fan, FanSubset, SubsetKind
from toricforms.polytope import divisor_polytope, lattice_points

SMALL = [n for n, f in BUILTINS.items() if f.rank <= 2]
LARGE = [n for n, f in BUILTINS.items() if f.rank >= 3]


@lru_cache(maxsize=None)
def corpus(name: str) -> tuple[tuple[int, ...], ...]:
    """Semiample divisors tested on a builtin fan.

    Surfaces and curves: every semiample vector in {0..3}^n.  Higher
    dimensions: candidates in {0,1,2}^n with coefficient sum <= 3, sorted by
    (number of sections, vector), at most 3 per linear-equivalence class,
    first 10 kept.
    """
    fan = BUILTINS[name]
    n = fan.n_rays
    if fan.rank <= 2:
        return tuple(a for a in product(range(4), repeat=n) if classify(fan, a).semiample)
    cands = [a for a in product(range(3), repeat=n) if sum(a) <= 3 and classify(fan, a).semiample]
    cands.sort(key=lambda a: (len(lattice_points(divisor_polytope(fan, a))), a))
    seen: dict = {}
    out = []
    for a in cands:
        key = class_key(fan, a)
        if seen.get(key, 0) >= 3:
            continue
        seen[key] = seen.get(key, 0) + 1
        out.append(a)
        if len(out) == 10:
            break
    return tuple(out)


def full_corpus():
    return [(name, a) for name in BUILTINS for a in corpus(name)]


def trivial_formula(fan: Fan, k: int) -> int:
    """sum_j C(d-j, k-j) (-1)^(k-j) #Sigma(j)."""
    d = fan.rank
    return sum(binom(d - j, k - j) * (-1) ** (k - j) * len(fan.cones_of_dim(j)) for j in range(k + 1))


def bott(n: int, a: int, p: int) -> int:
    """Classical h^0(P^n, Omega^p(a))."""
    return binom(a + n - p, a) * binom(a - 1, p)


def subdivision_closed_form(fan: Fan, cone_dim: int, k: int, l: int) -> int:
    """Closed form for a simplicial subdivision of a cone of dimension cone_dim."""
    d = fan.rank
    inner = sum(binom(cone_dim - j, k - j) * (-1) ** (k - j) * len(fan.cones_of_dim(j)) for j in range(k + 1))
    return binom(d - cone_dim, l - k) * inner


def per_point_oracle(fan: Fan, a, l: int) -> list[int]:
    """h^k(Omega^l(X)) as a sum over sections m of Ishida cohomology on the
    cones contained in the tight set of m."""
    total = [0] * (fan.rank + 1)
    for m in lattice_points(divisor_polytope(fan, a)):
        tight = {i for i, (e, ai) in enumerate(zip(fan.rays, a)) if linalg.dot(m, e) == -ai}
        cones = frozenset(c for c in fan.cones if set(c) <= tight)
        h = cohomology_dims(build_ishida(FanSubset(fan, cones, SubsetKind.STAR_OPEN), l))
        for k, v in enumerate(h):
            total[k] += v
    return total


def random_primitive(rng: random.Random, d: int, lo=-5, hi=5) -> tuple[int, ...]:
    while True:
        v = [rng.randint(lo, hi) for _ in range(d)]
        if any(v):
            return linalg.primitive(v)


def random_simplicial_cone(rng: random.Random, max_rank: int = 4) -> Fan:
    """Face fan of a random simplicial cone; rank and cone dimension random."""
    d = rng.randint(1, max_rank)
    k = rng.randint(1, d)
    while True:
        gens = [random_primitive(rng, d) for _ in range(k)]
        if linalg.rank(gens) == k:
            return Fan(d, gens, [tuple(range(k))])


def random_subdivision(rng: random.Random, cone_dim: int, rank: int, steps: int) -> Fan:
    """Iterated stellar subdivisions of the face fan of a random simplicial cone."""
    while True:
        gens = [random_primitive(rng, rank, -3, 3) for _ in range(cone_dim)]
        if linalg.rank(gens) == cone_dim:
            break
    fan = Fan(rank, gens, [tuple(range(cone_dim))])
    for _ in range(steps):
        dim = rng.randint(2, cone_dim)
        cone = rng.choice(fan.cones_of_dim(dim))
        weights = [rng.randint(1, 3) for _ in cone]
        ray = linalg.primitive([sum(w * g[t] for w, g in zip(weights, fan.generators(cone))) for t in range(rank)])
        if ray in fan.rays:
            continue
        fan = stellar_subdivision(fan, cone, ray)
    return fan


def random_unimodular(rng: random.Random, d: int, steps: int = 6) -> list[list[int]]:
    U = [[int(i == j) for j in range(d)] for i in range(d)]
    for _ in range(steps):
        if d == 1:
            break
        i, j = rng.sample(range(d), 2)
        c = rng.choice([-2, -1, 1, 2])
        U[i] = [x + c * y for x, y in zip(U[i], U[j])]
    for i in range(d):
        if rng.random() < 0.3:
            U[i] = [-x for x in U[i]]
    return U


def transform_fan(fan: Fan, U) -> Fan:
    rays = [tuple(sum(U[i][j] * r[j] for j in range(fan.rank)) for i in range(fan.rank)) for r in fan.rays]
    return Fan(fan.rank, rays, fan.max_cones, fan.cones)

