"""Fourfold Massey products times a fifth class against the pentagonal tensor.

On P3(3) the triple products are nonzero, so the fourfold product is not
defined; the fourth Postnikov stage P4(3) kills them.
"""
import random
from fractions import Fraction

from massey_tensors import invariants as inv
from massey_tensors.dga import Cohomology
from massey_tensors.models import p3_model, p4_model

rng = random.Random(5)


def quintuple(coh):
    return [(2, tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(coh.betti(2))))
            for _ in range(5)]


p3 = Cohomology(p3_model(3))
try:
    inv.compare_massey_pentagonal(p3, quintuple(p3))
except inv.NotDefined as exc:
    print(f"P3(3): {exc}")

p4 = Cohomology(p4_model(3))
for _ in range(5):
    rep = inv.compare_massey_pentagonal(p4, quintuple(p4))
    side = " ".join(str(x) for x in rep.massey_side)
    print(f"P4(3): <x1,x2,x3,x4>x5 = [{side}]  equal to P(star): {rep.equal}")
