import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import subdivision_closed_form, random_subdivision, random_unimodular, transform_fan, trivial_formula
from toricforms import linalg
from toricforms.chow import chow_basis, chow_dim, chow_sigma_dim, presentation
from toricforms.divisor import contraction
from toricforms.engine import binom
from toricforms.examples import BUILTINS, hirzebruch, projective_space
from toricforms.ishida import build_ishida, cohomology_dims, subdivision_fan_of_cone

P2 = projective_space(2)
F1 = hirzebruch(1)


def _half_plane():
    data = contraction(F1, (1, 0, 0, 0))
    return data, subdivision_fan_of_cone(F1, data, data.cone_image[(0,)])


def test_p2_dims():
    assert [chow_dim(P2, k) for k in range(4)] == [1, 1, 1, 0]
    P = presentation(P2, 1)
    assert len(P.generators) == 3 and linalg.rank(P.relation_matrix) == 2


def test_half_plane():
    _, sub = _half_plane()
    assert chow_dim(sub, 1) == 1
    assert chow_basis(sub, 1) == [(1,)]   # the ray (0, 1)


def test_bases():
    assert chow_basis(P2, 1) == [(0,)]
    for name, fan in BUILTINS.items():
        assert chow_basis(fan, 0) == [()]
        for k in range(fan.rank + 1):
            basis = chow_basis(fan, k)
            assert len(basis) == chow_dim(fan, k)
            assert basis == sorted(basis)


def test_bases_are_independent_modulo_relations():
    for name in ["F2", "P1xP1", "P3", "P3sub"]:
        fan = BUILTINS[name]
        for k in range(1, fan.rank + 1):
            P = presentation(fan, k)
            keep = set(chow_basis(fan, k))
            cols = [j for j, g in enumerate(P.generators) if g not in keep]
            # eliminating the non-basis generators leaves the relation rank unchanged
            sub = [[row[j] for j in cols] for row in P.relation_matrix]
            assert linalg.rank(sub) == linalg.rank(P.relation_matrix) == len(cols)


def test_sigma_dims():
    data = contraction(P2, (0, 0, 0))
    assert [chow_sigma_dim(P2, data, (), k) for k in range(3)] == [1, 1, 1]
    data, _ = _half_plane()
    assert chow_sigma_dim(F1, data, data.cone_image[(0,)], 1) == 1
    for s in data.sigma_fan.cones:
        assert chow_sigma_dim(F1, data, s, 0) == 1


@pytest.mark.parametrize("name", list(BUILTINS))
def test_complete_fan_formula(name):
    fan = BUILTINS[name]
    for k in range(fan.rank + 2):
        expected = trivial_formula(fan, k) if k <= fan.rank else 0
        assert chow_dim(fan, k) == expected
    assert sum(chow_dim(fan, k) for k in range(fan.rank + 1)) == len(fan.max_cones)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["P2", "F1", "F3", "P1xP1", "P3", "P1xP2", "P3sub"]), st.integers(0, 10**6))
def test_unimodular_invariance(name, seed):
    fan = BUILTINS[name]
    U = random_unimodular(random.Random(seed), fan.rank)
    other = transform_fan(fan, U)
    for k in range(fan.rank + 1):
        assert chow_dim(other, k) == chow_dim(fan, k)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_subdivision_matches_ishida_and_closed_form(seed):
    rng = random.Random(seed)
    dim = rng.choice([2, 3])
    fan = random_subdivision(rng, dim, dim + rng.randint(0, 1), rng.randint(1, 5))
    for l in range(fan.rank + 1):
        h = cohomology_dims(build_ishida(fan, l))
        for k in range(l + 1):
            via_chow = chow_dim(fan, k) * binom(fan.rank - dim, l - k)
            assert h[k] == via_chow == subdivision_closed_form(fan, dim, k, l)
