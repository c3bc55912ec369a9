import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from massey_tensors import invariants as inv
from massey_tensors.dga import Cohomology
from massey_tensors.models import (
    connected_sum_s2s6,
    formal_shadow,
    identity_iso,
    nonformal_poincare_model,
    p3_model,
    p3_model_with_h3,
    p4_model,
)
from massey_tensors.qlinalg import QMatrix

P3 = Cohomology(p3_model(3))
P3H = Cohomology(p3_model_with_h3(3, 1))
P4 = Cohomology(p4_model(3))


def _rand_classes(rng, coh, k, n):
    b = coh.betti(k)
    return [(k, tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(b))) for _ in range(n)]


def test_p3_uniform_triple_is_onto_h5():
    t = inv.uniform_triple(P3)
    comp = t.components[6]
    assert comp.target_degree == 5
    assert comp.domain.dim == comp.rank == P3.betti(5) == 8


def test_p3_bianchi_massey_nonzero():
    f = inv.bianchi_massey(P3)
    assert not f.is_zero()
    assert f.components[8].rank == 6
    assert inv.find_vanishing_triple_choice(P3) is None


def test_formal_shadow_has_zero_tensors():
    coh = Cohomology(formal_shadow(p3_model(3)))
    c = inv.find_vanishing_triple_choice(coh)
    assert c is not None
    assert inv.bianchi_massey(coh).is_zero()
    assert inv.pentagonal(coh, c).is_zero()


@settings(max_examples=6, deadline=None)
@given(st.integers(0, 10**6))
def test_bianchi_massey_is_choice_independent(seed):
    rng = random.Random(seed)
    c0 = inv.canonical_choice(P3H)
    c = inv.random_closed_perturbation(P3H, inv.random_alpha_shift(P3H, c0, rng), rng)
    a, b = inv.bianchi_massey(P3H, c0), inv.bianchi_massey(P3H, c)
    for n in a.degrees():
        assert a.matrix(n).tolist() == b.matrix(n).tolist()


@settings(max_examples=6, deadline=None)
@given(st.integers(0, 10**6))
def test_p3_pentagonal_is_choice_independent(seed):
    # H^3 = 0 on P3, so delta vanishes on E^4, the only E-degree D^10 uses
    rng = random.Random(seed)
    c0 = inv.canonical_choice(P3)
    c = inv.random_closed_perturbation(P3, inv.random_alpha_shift(P3, c0, rng), rng)
    delta = inv.choice_delta(P3, c0, c)
    eng = inv.engine(P3)
    assert not any(any(delta.on(u)) for u, k in enumerate(eng.edeg) if k == 4)
    assert inv.pentagonal(P3, c).matrix(10).tolist() == inv.pentagonal(P3, c0).matrix(10).tolist()


@settings(max_examples=4, deadline=None)
@given(st.integers(0, 10**6))
def test_transformation_law_with_h3(seed):
    rng = random.Random(seed)
    c0 = inv.canonical_choice(P3H)
    c = inv.random_closed_perturbation(P3H, c0, rng)
    rep = inv.verify_transformation(P3H, c0, c)
    assert rep.holds


def test_p3_massey_not_defined():
    rng = random.Random(1)
    with pytest.raises(inv.NotDefined):
        inv.fourfold_massey(P3, _rand_classes(rng, P3, 2, 4))


@settings(max_examples=5, deadline=None)
@given(st.integers(0, 10**6))
def test_massey_times_fifth_on_p4(seed):
    rng = random.Random(seed)
    rep = inv.compare_massey_pentagonal(P4, _rand_classes(rng, P4, 2, 5))
    assert rep.equal


def test_p4_massey_product_is_nontrivial():
    rng = random.Random(3)
    values = [inv.compare_massey_pentagonal(P4, _rand_classes(rng, P4, 2, 5)).massey_side for _ in range(4)]
    assert any(any(v) for v in values)


def test_canonical_element_and_orientation():
    nf = nonformal_poincare_model()
    assert any(inv.canonical_element(nf))
    with pytest.raises(inv.MissingOrientation):
        inv.canonical_element(P3)


def test_poincare_check():
    assert inv.poincare_check(Cohomology(connected_sum_s2s6(3)), 8) is None
    assert "not 1" in inv.poincare_check(P3, 8)


def test_delta_and_identity_discrepancy():
    assert all(d.dim == 0 for d in inv.delta_subspace(P3).values())
    res = inv.pentagonal_discrepancy(P3, P3, identity_iso(P3))
    assert all(d.is_zero() for d in res.values())


def test_discrepancy_rejects_non_isomorphism():
    F = identity_iso(P3)
    F[2] = QMatrix.zeros(3, 3)
    with pytest.raises(inv.NotAnIsomorphism):
        inv.pentagonal_discrepancy(P3, P3, F)


def test_discrepancy_needs_intertwining_choices():
    coh = Cohomology(connected_sum_s2s6(3))
    res = inv.pentagonal_discrepancy(coh, coh, identity_iso(coh))
    assert all(d.is_zero() for d in res.values())
