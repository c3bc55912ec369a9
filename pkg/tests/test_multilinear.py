import itertools
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from massey_tensors.multilinear import (
    EXTERIOR,
    GRADED_ANTISYMMETRIC,
    GRADED_SYMMETRIC,
    SYMMETRIC,
    TENSOR,
    GradedVectorSpace,
    K_kernel,
    compute_R,
    graded_m_map,
    koszul_sort,
    m_map_degree2,
    normalize,
    power_basis,
    power_dimension,
    star,
    weyl_dim,
)
from massey_tensors.qlinalg import kernel_basis, mat_vec, rank


def _inversion_sign(idx, degrees, anti):
    # oracle: one factor per inverted pair
    s = 1
    for i, j in itertools.combinations(range(len(idx)), 2):
        if idx[i] > idx[j]:
            s *= (-1) ** (degrees[idx[i]] * degrees[idx[j]] + (1 if anti else 0))
    return s


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=5, max_size=5),
       st.lists(st.integers(0, 4), min_size=0, max_size=5),
       st.booleans())
def test_koszul_sign_matches_inversion_count(degrees, idx, anti):
    sign, key = koszul_sort(idx, degrees, antisymmetric=anti)
    assert key == tuple(sorted(idx))
    assert sign == _inversion_sign(idx, degrees, anti)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=4, max_size=4), st.lists(st.integers(0, 3), min_size=2, max_size=4))
def test_graded_symmetric_vanishing(degrees, idx):
    sign, key = normalize(GRADED_SYMMETRIC, idx, degrees)
    repeated_odd = any(idx.count(i) > 1 and degrees[i] % 2 for i in set(idx))
    assert (sign == 0) == repeated_odd


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=4, max_size=4), st.lists(st.integers(0, 3), min_size=2, max_size=4))
def test_graded_antisymmetric_vanishing(degrees, idx):
    sign, key = normalize(GRADED_ANTISYMMETRIC, idx, degrees)
    repeated_even = any(idx.count(i) > 1 and degrees[i] % 2 == 0 for i in set(idx))
    assert (sign == 0) == repeated_even


@pytest.mark.parametrize("kind", [SYMMETRIC, EXTERIOR, TENSOR])
@pytest.mark.parametrize("r,k", [(1, 2), (3, 2), (3, 3), (4, 2), (2, 5)])
def test_ungraded_power_dimensions(kind, r, k):
    assert power_basis(GradedVectorSpace.ungraded(r), kind, k).dim == power_dimension(kind, r, k)


def test_graded_powers_reduce_to_ungraded_ones():
    even = GradedVectorSpace((2, 2, 2))
    odd = GradedVectorSpace((3, 3, 3))
    assert power_basis(even, GRADED_SYMMETRIC, 3).dim == comb(5, 3)
    assert power_basis(odd, GRADED_SYMMETRIC, 3).dim == 1
    assert power_basis(odd, GRADED_ANTISYMMETRIC, 2).dim == comb(4, 2)


@pytest.mark.parametrize("lam,r,expected", [((1,), 4, 4), ((2,), 3, 6), ((1, 1), 4, 6), ((2, 1), 3, 8),
                                            ((3, 1, 1), 3, 6), ((3, 1, 1), 2, 0)])
def test_weyl_dimensions(lam, r, expected):
    assert weyl_dim(lam, r) == expected


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_pieri_for_the_kernel(r):
    # exactness of V (x) L2P2 -> P3 (x) P2 -> P5 -> 0
    p = lambda k: comb(r + k - 1, k)
    assert compute_R(r).dim == r * comb(p(2), 2) - p(3) * p(2) + p(5)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=5, max_size=5))
def test_star_lies_in_the_kernel(xs):
    v = star([tuple(Fraction(a) for a in x) for x in xs])
    m = m_map_degree2(3)
    assert not any(mat_vec(m.matrix, v))
    assert compute_R(3).contains(v)


def test_star_rejects_wrong_arity():
    with pytest.raises(ValueError):
        star([(1, 0)] * 4)


def test_graded_m_map_matches_degree_two():
    H = GradedVectorSpace.ungraded(3, degree=2)
    assert kernel_basis(graded_m_map(H).matrix).dim == compute_R(3).dim
    assert rank(graded_m_map(H).matrix) == rank(m_map_degree2(3).matrix)


def test_k_kernel_of_full_square():
    H = GradedVectorSpace.ungraded(3, degree=2)
    assert K_kernel(H).dim == 3 * 6 - 10
