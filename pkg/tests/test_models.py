from fractions import Fraction
from math import comb

import pytest

from massey_tensors import invariants as inv
from massey_tensors.dga import Cohomology
from massey_tensors.models import (
    NotOrdinary,
    annihilator_quotient,
    cohomology_algebra,
    connected_sum_s2s6,
    nonformal_poincare_model,
    ordinary_element,
    p3_model,
    p3_model_with_h3,
    p4_model,
    quadratic_form_algebra,
    torus_algebra,
)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_p3_low_degrees(r):
    coh = Cohomology(p3_model(r))
    assert coh.betti(2) == r
    assert coh.betti(3) == coh.betti(4) == 0


def test_p3_generator_names_stay_unambiguous():
    names = [g for g, _ in p3_model(10, cap=4).generators]
    assert len(names) == len(set(names)) == 10 + comb(11, 2)
    assert "y1_10" in names


def test_p3_with_h3_adds_a_class():
    coh = Cohomology(p3_model_with_h3(3, 1))
    assert coh.betti(3) == 1 and coh.betti(5) == 11


def test_p4_kills_degree_five():
    coh = Cohomology(p4_model(3, cap=9))
    assert coh.betti(5) == 0 and coh.betti(2) == 3


def test_quadratic_form_algebra():
    coh = Cohomology(quadratic_form_algebra())
    assert coh.betti_numbers() == {0: 1, 1: 0, 2: 3, 3: 0, 4: 1}
    assert coh.space().E(4).dim == 5


def test_connected_sum_is_poincare():
    cs = connected_sum_s2s6(3)
    coh = Cohomology(cs)
    assert [coh.betti(k) for k in range(9)] == [1, 0, 3, 0, 0, 0, 3, 0, 1]
    assert inv.poincare_check(coh, 8) is None


def test_torus():
    assert Cohomology(torus_algebra()).betti(1) == 2


def test_cohomology_algebra_matches_betti_numbers():
    m = p3_model(2)
    H = cohomology_algebra(m)
    a, b = Cohomology(m), Cohomology(H)
    assert all(a.betti(k) == b.betti(k) for k in range(1, a.top + 1))


def test_nonformal_model_is_poincare():
    nf = nonformal_poincare_model()
    coh = Cohomology(nf)
    assert [coh.betti(k) for k in range(9)] == [1, 0, 3, 0, 2, 0, 3, 0, 1]
    assert inv.poincare_check(coh, 8) is None
    assert nf.orientation[0] == 8


def test_annihilator_quotient_needs_a_nonzero_functional():
    m = p3_model(2)
    with pytest.raises(ValueError, match="nonzero"):
        annihilator_quotient(m, 8, (Fraction(0),) * m.dim(8))


def test_ordinary_element_on_p3():
    coh = Cohomology(p3_model(3))
    e = lambda i: (2, tuple(Fraction(int(t == i)) for t in range(3)))
    n, w, in_d = ordinary_element(coh, [e(0), e(1), e(2), e(0), e(1)])
    assert n == 10 and in_d


def test_ordinary_element_rejects_nonvanishing_products():
    coh = Cohomology(quadratic_form_algebra())
    e = lambda i: (2, tuple(Fraction(int(t == i)) for t in range(3)))
    with pytest.raises(NotOrdinary) as info:
        ordinary_element(coh, [e(0), e(0), e(1), e(2), e(1)])
    assert (1, 2) in info.value.violated
