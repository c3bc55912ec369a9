"""Formality verdicts for three Poincare models."""
from massey_tensors import invariants as inv
from massey_tensors.models import connected_sum_s2s6, formal_model, nonformal_poincare_model, torus_algebra

cases = [
    ("#3(S2 x S6), zero differential", formal_model(connected_sum_s2s6(3)), 2),
    ("quotient of P3(3) by an annihilator ideal", nonformal_poincare_model(), 2),
    ("2-torus", torus_algebra(), 2),
]
for label, model, n in cases:
    v = inv.formality_verdict(model, n)
    detail = getattr(v, "reason", None) or getattr(v, "tensor", None) or v.choice
    print(f"{label}: {v.verdict} ({detail})")
