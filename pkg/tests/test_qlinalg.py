from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from massey_tensors.qlinalg import (
    DimensionMismatch,
    QMatrix,
    SubspaceBasis,
    image_basis,
    intersect,
    kernel_basis,
    mat_vec,
    quotient_coords,
    rank,
    rref,
    solve_particular,
    subspace_sum,
)

small = st.integers(-4, 4).map(Fraction)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    rows = [[draw(small) for _ in range(c)] for _ in range(r)]
    return QMatrix(rows, cols=c)


def test_rref_small():
    m = QMatrix([[2, 4], [1, 3]])
    red, piv = rref(m)
    assert piv == [0, 1]
    assert red.tolist() == [[1, 0], [0, 1]]


def test_rank_of_singular_matrix():
    assert rank(QMatrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])) == 2


def test_fractions_stay_exact():
    m = QMatrix([[3, 1], [1, Fraction(1, 3)]])
    assert rank(m) == 1
    assert kernel_basis(m).basis == ((Fraction(1), Fraction(-3)),)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        QMatrix([[1, 2], [3]])
    with pytest.raises(DimensionMismatch):
        QMatrix([[1, 2]]) @ QMatrix([[1, 2]])


def test_solve_particular_inconsistent():
    m = QMatrix([[1, 1], [1, 1]])
    assert solve_particular(m, (1, 2)) is None
    x = solve_particular(m, (3, 3))
    assert mat_vec(m, x) == (3, 3)


def test_subspace_coordinates_roundtrip():
    S = SubspaceBasis(3, [(1, 1, 0), (0, 1, 1)])
    v = S.combine((Fraction(2), Fraction(-1)))
    assert S.coordinates(v) == (2, -1)
    assert S.coordinates((1, 0, 0)) is None
    assert not S.contains((1, 0, 0))


def test_quotient_coords_kill_the_subspace():
    W = SubspaceBasis(3, [(1, 0, 0)])
    q = quotient_coords([(5, 1, 2), (7, 0, 0)], W)
    assert q[0] == (1, 2) and q[1] == (0, 0)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    assert rank(m) + kernel_basis(m).dim == m.cols
    assert image_basis(m).dim == rank(m)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_vectors_are_killed(m):
    for v in kernel_basis(m).basis:
        assert not any(mat_vec(m, v))


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_of_transpose(m):
    assert rank(m) == rank(m.transpose())


@settings(max_examples=40, deadline=None)
@given(matrices(4, 4), matrices(4, 4))
def test_sum_and_intersection_dimensions(a, b):
    n = 4
    A = SubspaceBasis(n, [a.row(i) + (Fraction(0),) * (n - a.cols) for i in range(a.rows)])
    B = SubspaceBasis(n, [b.row(i) + (Fraction(0),) * (n - b.cols) for i in range(b.rows)])
    assert subspace_sum(A, B).dim + intersect(A, B).dim == A.dim + B.dim
    for v in intersect(A, B).basis:
        assert A.contains(v) and B.contains(v)


@settings(max_examples=40, deadline=None)
@given(matrices(4, 4), st.lists(small, min_size=4, max_size=4))
def test_solve_particular_solves(m, x):
    x = tuple(x[: m.cols])
    b = mat_vec(m, x)
    y = solve_particular(m, b)
    assert y is not None and mat_vec(m, y) == b
