"""Kernel of m against its closed form, then the pentagonal tensor of P3(r)."""
import time
from math import comb

from massey_tensors import invariants as inv
from massey_tensors.dga import Cohomology
from massey_tensors.models import p3_model
from massey_tensors.multilinear import compute_R, weyl_dim

print("r  dim R  6*C(r+2,5)  dim S(3,1,1)")
for r in range(1, 6):
    print(f"{r}  {compute_R(r).dim:5d}  {6 * comb(r + 2, 5):10d}  {weyl_dim((3, 1, 1), r):12d}")

for r in (3, 4):
    t0 = time.perf_counter()
    coh = Cohomology(p3_model(r))
    p = inv.pentagonal(coh)
    comp = p.components[10]
    print(f"P3({r}): D^10 has dim {comp.domain.dim}, b_8 = {coh.betti(8)}, "
          f"rank of P = {comp.rank} ({time.perf_counter() - t0:.1f} s)")
