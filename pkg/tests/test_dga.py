from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from massey_tensors.dga import (
    CochainChoice,
    Cohomology,
    DegreeCapExceeded,
    DegreeMismatch,
    DGAMorphism,
    ExplicitBasisModel,
    NotAMorphism,
    NotASquareZeroDifferential,
    NotClosed,
    StructureCheckFailed,
    SullivanModel,
    induced_cohomology_map,
    parse_terms,
)
from massey_tensors.models import p3_model, p3_model_with_h3, torus_algebra

P3 = p3_model(2, cap=9)
P3H = p3_model_with_h3(2, 1, cap=9)


def sphere2():
    return SullivanModel([("x", 2), ("y", 3)], {"y": "x*x"}, cap=8, name="S2")


def test_sphere_cohomology():
    coh = Cohomology(sphere2())
    assert coh.betti_numbers() == {0: 1, 1: 0, 2: 1, 3: 0, 4: 0, 5: 0, 6: 0, 7: 0}


def test_odd_generators_square_to_zero_and_anticommute():
    m = SullivanModel([("a", 3), ("b", 3), ("x", 2)], {}, cap=8)
    a, b = m.gen("a"), m.gen("b")
    assert (a * a).is_zero()
    assert (a * b + b * a).is_zero()
    x = m.gen("x")
    assert x * a == a * x


def test_parse_terms():
    assert parse_terms("2*x*y - 1/3*z + 4") == [(2, ["x", "y"]), (Fraction(-1, 3), ["z"]), (4, [])]


def test_degree_mismatch_rejected():
    with pytest.raises(DegreeMismatch):
        SullivanModel([("x", 2), ("y", 3)], {"y": "x"})


def test_non_square_zero_differential_rejected():
    with pytest.raises(NotASquareZeroDifferential):
        SullivanModel([("x", 2), ("y", 3), ("z", 4)], {"y": "x*x", "z": "x*y"})


def test_degree_cap():
    with pytest.raises(DegreeCapExceeded):
        sphere2().d_matrix(20)


def _element(model, k, coeffs):
    n = model.dim(k)
    return model.element(k, {i: Fraction(c) for i, c in enumerate(coeffs[:n]) if c})


degrees = st.integers(2, 6)
coeff_lists = st.lists(st.integers(-3, 3), min_size=20, max_size=20)


@settings(max_examples=40, deadline=None)
@given(degrees, degrees, coeff_lists, coeff_lists)
def test_leibniz_rule(ka, kb, ca, cb):
    m = P3H
    if ka + kb + 1 > m.cap:
        return
    a, b = _element(m, ka, ca), _element(m, kb, cb)
    lhs = (a * b).d()
    rhs = a.d() * b + (a * b.d() if ka % 2 == 0 else (a * b.d()) * -1)
    assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(degrees, coeff_lists)
def test_square_zero(k, c):
    a = _element(P3H, k, c)
    if k + 2 <= P3H.cap:
        assert a.d().d().is_zero()


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 3), st.integers(2, 3), st.integers(2, 3), coeff_lists, coeff_lists, coeff_lists)
def test_associative_and_graded_commutative(ka, kb, kc, ca, cb, cc):
    m = P3H
    a, b, c = _element(m, ka, ca), _element(m, kb, cb), _element(m, kc, cc)
    assert (a * b) * c == a * (b * c)
    sign = -1 if ka * kb % 2 else 1
    assert a * b == (b * a) * sign


def test_p3_betti_numbers():
    coh = Cohomology(p3_model(3))
    assert [coh.betti(k) for k in range(10)] == [1, 0, 3, 0, 0, 8, 0, 6, 6, 0]


def test_classify_representatives():
    coh = Cohomology(P3)
    for k in range(coh.top + 1):
        for i in range(coh.betti(k)):
            e = tuple(Fraction(int(t == i)) for t in range(coh.betti(k)))
            assert coh.classify(k, coh.representative(k, i)) == e


def test_classify_rejects_open_elements():
    with pytest.raises(NotClosed):
        Cohomology(P3).classify(3, {0: 1})


def test_explicit_torus():
    T = torus_algebra()
    assert Cohomology(T).betti_numbers() == {0: 1, 1: 2, 2: 1}


def test_explicit_commutativity_checked():
    with pytest.raises(StructureCheckFailed):
        ExplicitBasisModel({1: ["a", "b"], 2: ["t"]}, {("a", "b"): {"t": 1}, ("b", "a"): {"t": 1}})


def test_canonical_choice_is_a_prederivative():
    coh = Cohomology(p3_model(3))
    c = CochainChoice.canonical(coh)
    for k in coh.space().e_degrees(coh.limit):
        assert c.verify(k)


def test_identity_morphism_induces_identity():
    imgs = {g: P3.gen(g) for g, _ in P3.generators}
    F = induced_cohomology_map(DGAMorphism(P3, P3, imgs))
    for k, mat in F.items():
        assert mat.tolist() == [[int(i == j) for j in range(mat.cols)] for i in range(mat.rows)]


def test_non_morphism_rejected():
    imgs = {g: P3.gen(g) for g, _ in P3.generators}
    imgs["x1"] = P3.gen("x2")
    with pytest.raises(NotAMorphism):
        DGAMorphism(P3, P3, imgs)
