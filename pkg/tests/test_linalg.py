from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from toricforms import linalg
from toricforms.exterior import SubspaceWedges, add, contract, wedge_of, wedge_product

small = st.integers(-6, 6)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_cols).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=0, max_size=max_rows).map(
            lambda rows: (rows, n)))


def test_rref_and_kernel_small():
    R, piv = linalg.rref([[1, 2]], 2)
    assert R == [[1, 2]] and piv == [0]
    assert linalg.kernel([[1, 2]], 2) == [[1, Fraction(-1, 2)]]
    assert linalg.kernel([], 2) == [[1, 0], [0, 1]]
    assert linalg.kernel([[1, 0], [0, 1]], 2) == []


def test_solve_inverse_det():
    assert linalg.solve([[2, 0], [0, 4]], [2, 2]) == [1, Fraction(1, 2)]
    assert linalg.solve([[1, 1], [1, 1]], [1, 2]) is None
    assert linalg.inverse([[1, 1], [0, 2]]) == [[1, Fraction(-1, 2)], [0, Fraction(1, 2)]]
    assert linalg.det([[1, 2], [3, 4]]) == -2


def test_primitive_and_content():
    assert linalg.primitive([2, 4]) == (1, 2)
    assert linalg.primitive([Fraction(1, 2), Fraction(-1, 3)]) == (3, -2)
    assert linalg.content([6, -9, 12]) == 3


@given(matrices())
def test_rank_agrees_with_rref(m):
    rows, n = m
    _, piv = linalg.rref(rows, n)
    assert linalg.rank(rows) == len(piv)


@given(matrices())
def test_sparse_rank_accepts_dict_rows(m):
    rows, n = m
    sparse = [{j: v for j, v in enumerate(r) if v} for r in rows]
    assert linalg.rank(sparse) == linalg.rank(rows)


@given(matrices())
def test_kernel_is_canonical_and_annihilates(m):
    rows, n = m
    K = linalg.kernel(rows, n)
    assert len(K) == n - linalg.rank(rows)
    for v in K:
        assert all(linalg.dot(r, v) == 0 for r in rows)
    R, _ = linalg.rref(K, n)
    assert R == K


@given(matrices())
def test_integer_kernel_is_a_saturated_basis(m):
    rows, n = m
    K = linalg.integer_kernel(rows, n)
    assert len(K) == n - linalg.rank(rows)
    for v in K:
        assert all(isinstance(x, int) for x in v)
        assert all(linalg.dot(r, v) == 0 for r in rows)
    # every integral kernel vector is an integer combination of K
    for v in linalg.kernel(rows, n):
        w = linalg.integer_row(v)
        cols = [[K[j][t] for j in range(len(K))] for t in range(n)]
        coeffs = linalg.solve(cols, w)
        assert coeffs is not None and all(c.denominator == 1 for c in coeffs)


def test_hnf_and_saturate():
    assert linalg.hnf([[2, 4], [0, 3]]) in ([[2, 1], [0, 3]], [[2, 4], [0, 3]])
    S = linalg.saturate([[2, 4]], 2)
    assert S == [[1, 2]]


def test_exterior_basics():
    w = wedge_of([[1, 0, 0], [0, 1, 0]], 3)
    assert w == {(0, 1): 1}
    assert wedge_product(wedge_of([[0, 1, 0]], 3), wedge_of([[1, 0, 0]], 3)) == {(0, 1): -1}
    assert contract([1, 0, 0], w) == {(1,): 1}
    assert contract([0, 1, 0], w) == {(0,): -1}
    assert add(w, w, -1) == {}


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=3))
def test_wedge_of_dependent_vectors_vanishes(vs):
    w = wedge_of(vs + [vs[0]], 3)
    assert w == {}


@settings(max_examples=50)
@given(st.lists(small, min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3))
def test_contraction_is_antiderivation_squared_zero(e, f):
    w = wedge_of([[1, 2, 3], [0, 1, -1]], 3)
    assert contract(e, contract(e, w)) == {}
    lhs = contract(e, contract(f, w))
    rhs = contract(f, contract(e, w))
    assert add(lhs, rhs) == {}


def test_subspace_wedges_coordinates_roundtrip():
    basis = linalg.kernel([[1, 2, 0]], 3)
    pivots = [next(j for j, v in enumerate(b) if v) for b in basis]
    W = SubspaceWedges(basis, pivots, 3)
    assert W.dim == 2
    for p in range(3):
        for S, w in W.monomials(p):
            coords = W.coordinates(w, p)
            assert coords == {S: 1}
