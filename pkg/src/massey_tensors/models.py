"""Concrete DGAs: the third Postnikov stage of a wedge of 2-spheres and relatives.

All constructors return fresh immutable models; generator and basis names
are fixed so reports are reproducible.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .dga import (
    Cohomology,
    DGA,
    ExplicitBasisModel,
    SullivanModel,
    StructureCheckFailed,
    dense,
    format_terms,
    vadd,
)
from .qlinalg import QMatrix, SubspaceBasis, kernel_basis


class NotOrdinary(ValueError):
    def __init__(self, message, violated=()):
        super().__init__(message)
        self.violated = tuple(violated)


@dataclass(frozen=True)
class ModelRecipe:
    """A named construction with the invariants it is expected to have."""

    name: str
    parameters: dict
    expected: dict = field(default_factory=dict)  # invariant -> (value, provenance)


def _xname(i):
    return f"x{i}"


def _yname(i, j):
    return f"y{i}_{j}" if max(i, j) > 9 else f"y{i}{j}"


def p3_generators(r: int) -> tuple:
    xs = [(_xname(i), 2) for i in range(1, r + 1)]
    ys = [(_yname(i, j), 3) for i in range(1, r + 1) for j in range(i, r + 1)]
    diffs = {_yname(i, j): f"{_xname(i)}*{_xname(j)}" for i in range(1, r + 1) for j in range(i, r + 1)}
    return xs + ys, diffs


def p3_model(r: int, cap: int = 10) -> SullivanModel:
    """Generators x_i in degree 2 and y_ij (i <= j) in degree 3 with d y_ij = x_i x_j."""
    if r < 1:
        raise ValueError("rank must be at least 1")
    gens, diffs = p3_generators(r)
    return SullivanModel(gens, diffs, cap=cap, name=f"P3(r={r})")


def p3_model_with_h3(r: int, s: int, cap: int = 10) -> SullivanModel:
    """The P3 model plus s closed degree-3 generators w_1..w_s."""
    if r < 1 or s < 0:
        raise ValueError("need r >= 1 and s >= 0")
    gens, diffs = p3_generators(r)
    gens = gens + [(f"w{k}", 3) for k in range(1, s + 1)]
    return SullivanModel(gens, diffs, cap=cap, name=f"P3(r={r})+H3(s={s})" if s else f"P3(r={r})")


def p4_model(r: int, cap: int = 10) -> SullivanModel:
    """The P3 model with degree-4 generators z_k killing the degree-5 cohomology.

    d z_k runs over the reduced echelon basis of the degree-5 cocycles, all
    of the form sum x_i y_jk.
    """
    base = p3_model(r, cap=6)
    Z = kernel_basis(base.d_matrix(5))
    words = base.monomial_basis(5)
    gens, diffs = p3_generators(r)
    for k, v in enumerate(Z.basis, start=1):
        terms = [(c, [base.generators[g][0] for g in words[i]]) for i, c in enumerate(v) if c]
        gens.append((f"z{k}", 4))
        diffs[f"z{k}"] = terms
    return SullivanModel(gens, diffs, cap=cap, name=f"P4(r={r})")


def quadratic_form_algebra() -> ExplicitBasisModel:
    """H² = <x, y, z>, H⁴ = <t>, x² = y² = z² = t, mixed products zero."""
    products = {("x", "x"): {"t": 1}, ("y", "y"): {"t": 1}, ("z", "z"): {"t": 1}}
    return ExplicitBasisModel({2: ["x", "y", "z"], 4: ["t"]}, products, name="quadratic-form algebra")


def quadratic_form_generator(dga: ExplicitBasisModel | None = None):
    """The cyclic element sum x (x) (yz ^ (y² - z²) - xy ^ xz) as {(q, pair1, pair2): c}.

    Pairs are label pairs of the graded-symmetric square; the result is a
    combination of q (x) (p1 ^ p2) with the wedge kept unnormalised.
    """
    cyc = [("x", "y", "z"), ("y", "z", "x"), ("z", "x", "y")]
    out: dict = {}

    def sq(a, b):
        return tuple(sorted((a, b)))

    for a, b, c in cyc:
        terms = [
            (1, sq(b, c), sq(b, b)),
            (-1, sq(b, c), sq(c, c)),
            (-1, sq(a, b), sq(a, c)),
        ]
        for coef, p1, p2 in terms:
            vadd(out, {(a, p1, p2): Fraction(coef)})
    return out


def labelled_element_in_d(dga: ExplicitBasisModel, element: Mapping) -> tuple:
    """Map {(q, (a, b), (c, d)): coeff}, read as q (x) (ab ^ cd), into the domain of the pentagonal tensor.

    Labels are basis labels of closed elements.  The ordered tensor
    sum coeff * ab (x) cd must lie in E (x) E.  Returns (degree, w, in_d).
    """
    from .invariants import _as_coh, engine
    from .multilinear import GRADED_SYMMETRIC, normalize

    coh = _as_coh(dga)
    eng = engine(coh)
    sp = coh.space()

    def cls(lab):
        k, i = dga._locate(lab)
        coords = coh.classify(k, {i: Fraction(1)})
        return k, {sp.index[(k, t)]: c for t, c in enumerate(coords) if c}

    def square(a, b):
        (ka, av), (kb, bv) = cls(a), cls(b)
        out: dict = {}
        for g, x in av.items():
            for h, y in bv.items():
                sgn, key = normalize(GRADED_SYMMETRIC, (g, h), sp.degrees)
                if sgn:
                    vadd(out, {key: x * y}, sgn)
        return ka + kb, out

    # blocks[(g, k1, k2)][(pair1, pair2)] = coefficient
    blocks: dict = {}
    degree = None
    for (q, p1, p2), coeff in element.items():
        kq, qv = cls(q)
        (k1, s1), (k2, s2) = square(*p1), square(*p2)
        if degree is None:
            degree = kq + k1 + k2
        elif kq + k1 + k2 != degree:
            raise ValueError("element is not homogeneous")
        for g, x in qv.items():
            blk = blocks.setdefault((g, k1, k2), {})
            for u, y in s1.items():
                for v, z in s2.items():
                    vadd(blk, {(u, v): coeff * x * y * z})
    w: dict = {}
    for (g, k1, k2), blk in blocks.items():
        rows: dict = {}
        for (u, v), c in blk.items():
            rows.setdefault(v, {})[u] = c
        # first factor into E coordinates, column by column
        partial: dict = {}
        for v, col in rows.items():
            for e, c in eng.e_coords(k1, col).items():
                partial.setdefault(e, {})[v] = c
        for e1, second in partial.items():
            for e2, c in eng.e_coords(k2, second).items():
                vadd(w, eng.w_vector(g, {e1: c}, {e2: Fraction(1)}))
    return degree, w, eng.in_D(degree, w) if w else True


def formal_model(H: ExplicitBasisModel, name: str = "") -> ExplicitBasisModel:
    """The same algebra with zero differential (after verifying its structure)."""
    prods = {(a, b): v for a, b, v in H.product_table()}
    basis = {k: H.labels(k) for k in range(1, H.cap + 1)}
    return ExplicitBasisModel(basis, prods, {}, name=name or H.name, orientation=H.orientation)


def cohomology_algebra(dga: DGA, through: int | None = None, name: str = "") -> ExplicitBasisModel:
    """The cohomology algebra through a degree, as a model with zero differential.

    Basis labels are the class names h<k>_<i>; products landing above the
    chosen degree are dropped.
    """
    coh = Cohomology(dga)
    top = coh.top if through is None else through
    basis = {k: coh.labels(k) for k in range(1, top + 1) if coh.betti(k)}
    prods = {}
    for ka in range(1, top + 1):
        for kb in range(ka, top + 1 - ka):
            for i in range(coh.betti(ka)):
                for j in range(coh.betti(kb)):
                    if ka == kb and j < i:
                        continue
                    ui = tuple(Fraction(int(t == i)) for t in range(coh.betti(ka)))
                    uj = tuple(Fraction(int(t == j)) for t in range(coh.betti(kb)))
                    v = coh.cup(ka, ui, kb, uj)
                    val = {f"h{ka + kb}_{t}": c for t, c in enumerate(v) if c}
                    if val:
                        prods[(f"h{ka}_{i}", f"h{kb}_{j}")] = val
    return ExplicitBasisModel(basis, prods, {}, name=name or f"H({dga.name})",
                              orientation=getattr(dga, "orientation", None))


def formal_shadow(dga: DGA) -> ExplicitBasisModel:
    return cohomology_algebra(dga, name=f"formal shadow of {dga.name}")


def identity_iso(coh: Cohomology) -> dict:
    """Identity matrices between two copies of the same class labels."""
    return {k: QMatrix.identity(coh.betti(k)) for k in range(1, coh.top + 1) if coh.betti(k)}


def connected_sum_s2s6(copies: int = 3) -> ExplicitBasisModel:
    """Cohomology of a connected sum of copies of S² x S⁶: x_i w_j = delta_ij vol."""
    xs = [f"x{i}" for i in range(1, copies + 1)]
    ws = [f"w{i}" for i in range(1, copies + 1)]
    prods = {(x, w): {"vol": 1} for x, w in zip(xs, ws)}
    return ExplicitBasisModel({2: xs, 6: ws, 8: ["vol"]}, prods, name=f"#{copies}(S2xS6)",
                              orientation=(8, (Fraction(1),)))


def torus_algebra() -> ExplicitBasisModel:
    """Cohomology of the 2-torus: two degree-1 classes with a b = vol."""
    return ExplicitBasisModel({1: ["a", "b"], 2: ["vol"]}, {("a", "b"): {"vol": 1}}, name="T2",
                              orientation=(2, (Fraction(1),)))


def _ident(label: str) -> str:
    # monomial labels such as x1^2*y12 become identifiers x1_p2_y12
    return label.replace("^", "_p").replace("*", "_")


def annihilator_quotient(dga: DGA, top: int, functional: Sequence, name: str = "") -> ExplicitBasisModel:
    """A/I where I = {a : functional(a b) = 0 for all b}, a finite Poincaré DGA.

    ``functional`` is a linear form on the degree-``top`` part that must
    vanish on coboundaries.  The basis in each degree is the set of
    monomials at the non-pivot positions of I, which span a complement.
    """
    functional = tuple(Fraction(x) for x in functional)
    if len(functional) != dga.dim(top):
        raise ValueError("functional has the wrong length")
    dm = dga.d_matrix(top - 1)
    for j in range(dm.cols):
        if sum(functional[i] * dm[i, j] for i in range(dm.rows)):
            raise StructureCheckFailed("functional does not vanish on coboundaries")
    if not any(functional):
        raise ValueError("functional must be nonzero")
    ideal = {}
    keep = {}
    for k in range(top + 1):
        nk, nc = dga.dim(k), dga.dim(top - k)
        rows = []
        for i in range(nk):
            row = []
            for j in range(nc):
                prod = dga.mul(k, {i: 1}, top - k, {j: 1})
                row.append(sum((functional[t] * c for t, c in prod.items()), Fraction(0)))
            rows.append(row)
        # I^k = vectors a with a . M = 0, i.e. the kernel of M transposed
        m = QMatrix(rows, cols=nc).transpose() if nk else QMatrix.zeros(nc, 0)
        I = kernel_basis(m) if nk else SubspaceBasis(0)
        ideal[k] = I
        piv = set(I.pivots)
        keep[k] = [i for i in range(nk) if i not in piv]
    labels = {k: [_ident(dga.labels(k)[i]) for i in keep[k]] for k in range(1, top + 1)}

    def reduce(k, v):
        r = ideal[k].reduce(dense(v, dga.dim(k))) if v else {}
        labs = dga.labels(k)
        return {_ident(labs[i]): r[i] for i in keep[k] if r.get(i)}

    prods = {}
    for ka in range(1, top + 1):
        for kb in range(ka, top + 1 - ka):
            for x, i in enumerate(keep[ka]):
                for j in keep[kb][(x if ka == kb else 0):]:
                    val = reduce(ka + kb, dga.mul(ka, {i: 1}, kb, {j: 1}))
                    if val:
                        prods[(_ident(dga.labels(ka)[i]), _ident(dga.labels(kb)[j]))] = val
    diff = {}
    for k in range(1, top):
        for i in keep[k]:
            val = reduce(k + 1, dga.d(k, {i: 1}))
            if val:
                diff[_ident(dga.labels(k)[i])] = val
    # orientation: the functional evaluated on the surviving top monomial
    top_label = labels[top][0]
    top_val = functional[[_ident(x) for x in dga.labels(top)].index(top_label)]
    model = ExplicitBasisModel(labels, prods, diff, name=name or f"{dga.name}/ann", check=True)
    coh = Cohomology(model)
    rep = coh.representative(top, 0)
    value = sum((c * top_val for c in rep.values()), Fraction(0))
    model.orientation = (top, (value,))
    return model


def random_cocycle_functional(dga: DGA, top: int, rng: random.Random, scale: int = 5) -> tuple:
    """A random linear form on degree ``top`` vanishing on coboundaries."""
    coh = Cohomology(dga)
    dm = dga.d_matrix(top - 1)
    # forms vanishing on the image: kernel of the transpose
    K = kernel_basis(dm.transpose())
    vec = [Fraction(0)] * dga.dim(top)
    for b in K.basis:
        c = rng.randint(-scale, scale)
        for i, x in enumerate(b):
            vec[i] += c * x
    return tuple(vec)


def nonformal_poincare_model(r: int = 3, seed: int = 1) -> ExplicitBasisModel:
    """An 8-dimensional Poincaré DGA built from the P4 model by an annihilator quotient."""
    base = p4_model(r, cap=9)
    rng = random.Random(seed)
    phi = random_cocycle_functional(base, 8, rng)
    return annihilator_quotient(base, 8, phi, name=f"P4(r={r}) Poincare quotient")


def ordinary_element(obj, classes: Sequence) -> tuple:
    """star(x1, ..., x5) for degree-2 classes with cyclically vanishing products.

    Returns (degree, vector, in_d) where in_d certifies membership in the
    kernel of m.
    """
    from .invariants import _as_coh, engine, star_vector

    coh = _as_coh(obj)
    eng = engine(coh)
    xs = [(k, tuple(Fraction(c) for c in v)) for k, v in classes]
    if len(xs) != 5:
        raise ValueError("five classes required")
    if any(k != 2 for k, _ in xs):
        raise ValueError("ordinary elements are built from degree-2 classes")
    bad = []
    for i in range(5):
        (ka, a), (kb, b) = xs[i], xs[(i + 1) % 5]
        if any(eng.cup_coords(ka, a, kb, b)):
            bad.append((i + 1, (i + 1) % 5 + 1))
    if bad:
        raise NotOrdinary("nonzero products: " + ", ".join(f"x{a} x{b}" for a, b in bad), bad)
    n, w = star_vector(coh, xs)
    return n, w, (eng.in_D(n, w) if w else True)


RECIPES = {
    "p3": ModelRecipe("p3", {"r": 3}, {"b2": (3, "computed"), "b8": (6, "computed"), "pentagonal rank": (6, "computed")}),
    "p3_h3": ModelRecipe("p3_h3", {"r": 3, "s": 1}, {"b3": (1, "computed")}),
    "example": ModelRecipe("example", {}, {"dim E4": (5, "computed"), "dim D10": (1, "computed")}),
}


__all__ = [
    "ModelRecipe", "NotOrdinary", "p3_model", "p3_model_with_h3", "p4_model", "quadratic_form_algebra",
    "quadratic_form_generator", "labelled_element_in_d", "formal_model", "cohomology_algebra", "formal_shadow", "identity_iso",
    "connected_sum_s2s6", "torus_algebra", "annihilator_quotient", "random_cocycle_functional",
    "nonformal_poincare_model", "ordinary_element", "RECIPES",
]
