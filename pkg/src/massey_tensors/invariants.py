"""Obstruction tensors of a DGA built from a cochain choice.

Everything is computed one total degree at a time.  Domains are kernels
inside tensor spaces whose basis keys refer to global class indices g
(reduced cohomology, see ``ClassSpace``) and global E indices u (the E
basis vectors of all degrees, in degree order):

* H (x) E          keys (g, u)          uniform triple product, degree -1
* H (x) 𝒜²E         keys (g, u, v)       pentagonal tensor, degree -2
* 𝒢²E              keys (u, v)          Bianchi-Massey tensor, degree -1

Sign conventions follow the Koszul rule for maps: a map of degree s
passing an argument of degree k picks up (-1)^{sk}.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .dga import (
    CANONICAL,
    USER_PERTURBED,
    VANISHING_TRIPLE,
    CochainChoice,
    Cohomology,
    DegreeCapExceeded,
    InconsistentModel,
    NotClosed,
    beta_phi,
    dense,
    sparse,
    vadd,
    vscale,
)
from .multilinear import GRADED_ANTISYMMETRIC, GRADED_SYMMETRIC, normalize
from .qlinalg import QMatrix, SubspaceBasis, kernel_basis, quotient_coords, rank, solve_particular


class NotDefined(ValueError):
    """A Massey product whose defining system does not exist."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NoIntertwiningChoices(ValueError):
    pass


class MissingOrientation(ValueError):
    pass


class NotAnIsomorphism(ValueError):
    pass


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


# -- tensors --------------------------------------------------------------

@dataclass
class Component:
    """One total degree of a tensor: domain basis (as rows of ``domain``) -> H^target."""

    degree: int
    target_degree: int
    keys: tuple
    domain: SubspaceBasis
    matrix: QMatrix  # betti(target) x dim(domain)

    @property
    def rank(self) -> int:
        return rank(self.matrix)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def first_nonzero(self):
        for j in range(self.matrix.cols):
            for i in range(self.matrix.rows):
                if self.matrix[i, j]:
                    return j, i, self.matrix[i, j]
        return None


@dataclass
class TensorMap:
    """A graded linear map given by its components in each domain degree."""

    name: str
    shift: int
    components: dict = field(default_factory=dict)
    provenance: str = ""

    def degrees(self) -> list:
        return sorted(self.components)

    def nonzero_degrees(self) -> list:
        return [n for n in self.degrees() if self.components[n].domain.dim]

    @property
    def rank(self) -> int:
        return sum(c.rank for c in self.components.values())

    @property
    def domain_dim(self) -> int:
        return sum(c.domain.dim for c in self.components.values())

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components.values())

    def witness(self):
        """(degree, domain basis index, target class index, value) of the first nonzero entry."""
        for n in self.degrees():
            hit = self.components[n].first_nonzero()
            if hit:
                j, i, v = hit
                return n, j, i, v
        return None

    def matrix(self, degree: int) -> QMatrix:
        return self.components[degree].matrix


# -- spaces ---------------------------------------------------------------

class Engine:
    """Per-algebra cache of the tensor spaces, independent of cochain choices."""

    def __init__(self, coh: Cohomology):
        self.coh = coh
        self.sp = coh.space()
        self.hdeg = self.sp.degrees
        sp = self.sp
        if sp.dim:
            hmin, hmax = min(self.hdeg), max(self.hdeg)
            etop = min(coh.limit, 2 * hmax)
            self.edegs_list = [k for k in range(2 * hmin, etop + 1) if sp.g2(k)[0] and sp.E(k).dim]
        else:
            hmin = hmax = 0
            self.edegs_list = []
        self.hmin, self.hmax = hmin, hmax
        self.eglobal = []  # u -> (k, t)
        for k in self.edegs_list:
            for t in range(sp.E(k).dim):
                self.eglobal.append((k, t))
        self.eindex = {kt: u for u, kt in enumerate(self.eglobal)}
        self.edeg = tuple(k for k, _ in self.eglobal)
        self.evec = [sp.e_vectors(k)[t] for k, t in self.eglobal]
        self._K: dict = {}
        self._D: dict = {}
        self._B: dict = {}
        self._cup: dict = {}

    # degree ranges
    def k_range(self) -> list:
        if not self.eglobal:
            return []
        lo = self.hmin + min(self.edeg)
        hi = min(self.coh.limit + 1, self.hmax + max(self.edeg))
        return list(range(lo, hi + 1))

    def d_range(self) -> list:
        if not self.eglobal:
            return []
        lo = self.hmin + 2 * min(self.edeg)
        hi = min(self.coh.limit + 2, self.hmax + 2 * max(self.edeg))
        return list(range(lo, hi + 1))

    def b_range(self) -> list:
        if not self.eglobal:
            return []
        lo = 2 * min(self.edeg)
        hi = min(self.coh.limit + 1, 2 * max(self.edeg))
        return list(range(lo, hi + 1))

    # products of classes
    def cup_classes(self, g: int, h: int) -> tuple:
        key = (g, h)
        if key not in self._cup:
            self._cup[key] = self.sp.product_of_pair((g, h))
        return self._cup[key]

    def cup_with(self, g: int, k: int, coords: Sequence) -> tuple:
        """class g times the degree-k class with given coordinates."""
        kg = self.hdeg[g]
        out = [Fraction(0)] * self.coh.betti(kg + k)
        for r, c in enumerate(coords):
            if c:
                h = self.sp.index[(k, r)]
                for i, x in enumerate(self.cup_classes(g, h)):
                    out[i] += c * x
        return tuple(out)

    def cup_coords(self, ka: int, a: Sequence, kb: int, b: Sequence) -> tuple:
        out = [Fraction(0)] * self.coh.betti(ka + kb)
        for r, c in enumerate(a):
            if c:
                g = self.sp.index[(ka, r)]
                for i, x in enumerate(self.cup_with(g, kb, b)):
                    out[i] += c * x
        return tuple(out)

    # H (x) E and its symmetrisation kernel
    def he_keys(self, n: int) -> tuple:
        return tuple((g, u) for g in range(self.sp.dim) for u in range(len(self.eglobal))
                     if self.hdeg[g] + self.edeg[u] == n)

    def sym3(self, vec: Mapping) -> dict:
        """Full graded symmetrisation of an H (x) E vector into 𝒢³H."""
        out: dict = {}
        for (g, u), c in vec.items():
            for (a, b), x in self.evec[u].items():
                s, key = normalize(GRADED_SYMMETRIC, (g, a, b), self.hdeg)
                if s:
                    vadd(out, {key: c * x}, s)
        return out

    def K(self, n: int):
        if n not in self._K:
            keys = self.he_keys(n)
            rows: dict = {}
            cols = []
            for key in keys:
                col = {}
                for t, x in self.sym3({key: 1}).items():
                    col[rows.setdefault(t, len(rows))] = x
                cols.append(col)
            m = QMatrix.from_sparse_columns(cols, len(rows))
            self._K[n] = (keys, kernel_basis(m))
        return self._K[n]

    # H (x) 𝒜²E and the map m
    def w_keys(self, n: int) -> tuple:
        out = []
        ne = len(self.eglobal)
        for g in range(self.sp.dim):
            for u in range(ne):
                for v in range(u, ne):
                    if self.hdeg[g] + self.edeg[u] + self.edeg[v] != n:
                        continue
                    if u == v and self.edeg[u] % 2 == 0:
                        continue
                    out.append((g, u, v))
        return tuple(out)

    def m_image(self, g: int, u: int, v: int) -> dict:
        """m(q (x) e_u ^ e_v) in 𝒢³H (x) 𝒢²H, keyed by (triple, pair)."""
        out: dict = {}
        su = _sign(self.edeg[u] * self.edeg[v])
        for first, second, s in ((u, v, 1), (v, u, -su)):
            for p, x in self.evec[first].items():
                sg, t = normalize(GRADED_SYMMETRIC, (g,) + p, self.hdeg)
                if not sg:
                    continue
                for p2, y in self.evec[second].items():
                    vadd(out, {(t, p2): x * y}, s * sg)
        return out

    def D(self, n: int):
        if n not in self._D:
            keys = self.w_keys(n)
            rows: dict = {}
            cols = []
            for key in keys:
                col = {}
                for t, x in self.m_image(*key).items():
                    col[rows.setdefault(t, len(rows))] = x
                cols.append(col)
            m = QMatrix.from_sparse_columns(cols, len(rows))
            self._D[n] = (keys, kernel_basis(m))
        return self._D[n]

    def w_vector(self, g: int, e1: Mapping, e2: Mapping) -> dict:
        """q (x) (e1 ^ e2) for e1, e2 given in E coordinates {u: coeff}."""
        out: dict = {}
        for u, x in e1.items():
            for v, y in e2.items():
                if u == v and self.edeg[u] % 2 == 0:
                    continue
                if u <= v:
                    vadd(out, {(g, u, v): x * y})
                else:
                    vadd(out, {(g, v, u): x * y}, -_sign(self.edeg[u] * self.edeg[v]))
        return out

    def in_D(self, n: int, w: Mapping) -> bool:
        keys, D = self.D(n)
        idx = {k: i for i, k in enumerate(keys)}
        if any(k not in idx for k in w):
            return False
        return D.contains(dense({idx[k]: c for k, c in w.items()}, len(keys)))

    # 𝒢²E and its symmetrisation kernel
    def b_keys(self, n: int) -> tuple:
        ne = len(self.eglobal)
        return tuple((u, v) for u in range(ne) for v in range(u, ne)
                     if self.edeg[u] + self.edeg[v] == n
                     and normalize(GRADED_SYMMETRIC, (u, v), self.edeg)[0])

    def B(self, n: int):
        if n not in self._B:
            keys = self.b_keys(n)
            rows: dict = {}
            cols = []
            for u, v in keys:
                col: dict = {}
                for p, x in self.evec[u].items():
                    for p2, y in self.evec[v].items():
                        s, t = normalize(GRADED_SYMMETRIC, p + p2, self.hdeg)
                        if s:
                            i = rows.setdefault(t, len(rows))
                            col[i] = col.get(i, 0) + s * x * y
                cols.append({i: x for i, x in col.items() if x})
            m = QMatrix.from_sparse_columns(cols, len(rows))
            self._B[n] = (keys, kernel_basis(m))
        return self._B[n]

    # E coordinates of elements of the square
    def e_coords(self, k: int, g2vec: Mapping) -> dict:
        """Global E coordinates {u: c} of an element {pair: c} of the degree-k square."""
        pairs, idx = self.sp.g2(k)
        v = [Fraction(0)] * len(pairs)
        for p, c in g2vec.items():
            v[idx[p]] += c
        coords = self.sp.E(k).coordinates(v)
        if coords is None:
            raise ValueError("element does not lie in E")
        return {self.eindex[(k, t)]: c for t, c in enumerate(coords) if c}

    def product_square(self, ka: int, a: Sequence, kb: int, b: Sequence) -> dict:
        """The element a·b of the graded-symmetric square, as {pair: coeff}."""
        out: dict = {}
        for r, x in enumerate(a):
            if not x:
                continue
            g = self.sp.index[(ka, r)]
            for t, y in enumerate(b):
                if not y:
                    continue
                h = self.sp.index[(kb, t)]
                s, key = normalize(GRADED_SYMMETRIC, (g, h), self.hdeg)
                if s:
                    vadd(out, {key: x * y}, s)
        return out


def engine(coh: Cohomology) -> Engine:
    eng = coh.__dict__.get("_engine")
    if eng is None:
        eng = Engine(coh)
        coh.__dict__["_engine"] = eng
    return eng


def _as_coh(obj) -> Cohomology:
    if isinstance(obj, Cohomology):
        return obj
    if isinstance(obj, CochainChoice):
        return obj.coh
    cached = obj.__dict__.get("_cohomology")
    if cached is None:
        cached = Cohomology(obj)
        obj.__dict__["_cohomology"] = cached
    return cached


def canonical_choice(obj) -> CochainChoice:
    coh = _as_coh(obj)
    c = coh.__dict__.get("_canonical_choice")
    if c is None:
        c = CochainChoice.canonical(coh)
        coh.__dict__["_canonical_choice"] = c
    return c


def _classify(coh: Cohomology, k: int, z: Mapping, what: str) -> tuple:
    try:
        return coh.classify(k, z)
    except NotClosed as exc:
        raise InconsistentModel(f"{what} takes a non-closed value in degree {k}") from exc


# -- evaluations ----------------------------------------------------------

def gamma_u(c: CochainChoice, eng: Engine, u: int) -> dict:
    k, t = eng.eglobal[u]
    return c.gamma(k)[t]


def triple_value(c: CochainChoice, eng: Engine, vec: Mapping) -> dict:
    """alpha gamma on an H (x) E vector: q (x) e -> (-1)^{|q|} alpha(q) gamma(e)."""
    out: dict = {}
    dga = c.dga
    for (g, u), x in vec.items():
        kq, aq = c.alpha_class(g)
        ke = eng.edeg[u]
        vadd(out, dga.mul(kq, aq, ke - 1, gamma_u(c, eng, u)), x * _sign(kq))
    return out


def pentagonal_value(c: CochainChoice, eng: Engine, vec: Mapping) -> dict:
    """alpha gamma² on q (x) e ^ f: (-1)^{|e|} alpha(q) gamma(e) gamma(f)."""
    out: dict = {}
    dga = c.dga
    for (g, u, v), x in vec.items():
        kq, aq = c.alpha_class(g)
        ku, kv = eng.edeg[u], eng.edeg[v]
        gg = dga.mul(ku - 1, gamma_u(c, eng, u), kv - 1, gamma_u(c, eng, v))
        vadd(out, dga.mul(kq, aq, ku + kv - 2, gg), x * _sign(ku))
    return out


def bianchi_value(c: CochainChoice, eng: Engine, vec: Mapping) -> dict:
    """alpha² gamma on e f: (-1)^{|e|} alpha²(e) gamma(f) + (-1)^{|f|+|e||f|} alpha²(f) gamma(e)."""
    out: dict = {}
    dga = c.dga
    for (u, v), x in vec.items():
        ku, kv = eng.edeg[u], eng.edeg[v]
        au, av = c.alpha_sq(ku, eng.evec[u]), c.alpha_sq(kv, eng.evec[v])
        vadd(out, dga.mul(ku, au, kv - 1, gamma_u(c, eng, v)), x * _sign(ku))
        vadd(out, dga.mul(kv, av, ku - 1, gamma_u(c, eng, u)), x * _sign(kv + ku * kv))
    return out


def _keyed(keys, vec) -> dict:
    return {keys[i]: x for i, x in enumerate(vec) if x}


def _component(coh, n, target, keys, basis, value_fn, what) -> Component:
    cols = []
    for b in basis.basis:
        z = value_fn(_keyed(keys, b))
        cols.append(_classify(coh, target, z, what))
    rows = coh.betti(target)
    m = QMatrix.from_columns(cols, rows) if cols else QMatrix.zeros(rows, 0)
    return Component(n, target, keys, basis, m)


def _degrees(requested, available) -> list:
    if requested is None:
        return list(available)
    return [n for n in requested if n in set(available)]


def uniform_triple(obj, c: CochainChoice | None = None, degrees=None) -> TensorMap:
    """The uniform triple product on K[H (x) E], degree -1."""
    coh = _as_coh(obj)
    c = c or canonical_choice(coh)
    eng = engine(coh)
    out = TensorMap("uniform triple product", -1, provenance=c.provenance)
    for n in _degrees(degrees, eng.k_range()):
        keys, K = eng.K(n)
        out.components[n] = _component(coh, n, n - 1, keys, K, lambda v: triple_value(c, eng, v),
                                       "the uniform triple product")
    return out


def bianchi_massey(obj, c: CochainChoice | None = None, degrees=None) -> TensorMap:
    """The Bianchi-Massey tensor on K[𝒢²E -> 𝒢⁴H], degree -1."""
    coh = _as_coh(obj)
    c = c or canonical_choice(coh)
    eng = engine(coh)
    out = TensorMap("Bianchi-Massey tensor", -1, provenance=c.provenance)
    for n in _degrees(degrees, eng.b_range()):
        keys, B = eng.B(n)
        out.components[n] = _component(coh, n, n - 1, keys, B, lambda v: bianchi_value(c, eng, v),
                                       "the Bianchi-Massey tensor")
    return out


def d_space(obj, degrees=None) -> dict:
    """Per degree: (keys, SubspaceBasis) of the kernel of m on H (x) 𝒜²E."""
    coh = _as_coh(obj)
    eng = engine(coh)
    return {n: eng.D(n) for n in _degrees(degrees, eng.d_range())}


def d_space_dims(obj, degrees=None) -> dict:
    return {n: D.dim for n, (keys, D) in d_space(obj, degrees).items()}


def pentagonal(obj, c: CochainChoice | None = None, degrees=None) -> TensorMap:
    """The pentagonal tensor on the kernel of m, degree -2.

    By default only degrees whose target cohomology can be nonzero are
    evaluated.
    """
    coh = _as_coh(obj)
    c = c or canonical_choice(coh)
    eng = engine(coh)
    if degrees is None:
        degrees = [n for n in eng.d_range() if n - 2 <= coh.top]
    out = TensorMap("pentagonal Massey tensor", -2, provenance=c.provenance)
    for n in _degrees(degrees, eng.d_range()):
        keys, D = eng.D(n)
        out.components[n] = _component(coh, n, n - 2, keys, D, lambda v: pentagonal_value(c, eng, v),
                                       "the pentagonal tensor")
    return out


# -- changing the cochain choice ------------------------------------------

@dataclass
class ChoiceDelta:
    """delta(c', c): E -> H^{*-1}, stored per global E index, with witness beta."""

    delta: dict  # u -> coordinates in H^{|e_u|-1}
    beta: dict  # class degree -> list of cochains
    eta: dict | None = None

    def is_zero(self) -> bool:
        return all(not any(v) for v in self.delta.values())

    def on(self, u: int) -> tuple:
        return self.delta[u]


def solve_beta(c: CochainChoice, c2: CochainChoice, degrees) -> dict:
    """beta with d beta = alpha' - alpha, degree by degree (free variables zero)."""
    dga = c.dga
    out = {}
    for k in degrees:
        vals = []
        for a, a2 in zip(c.alpha(k), c2.alpha(k)):
            diff = vadd(dict(a2), a, -1)
            if not diff:
                vals.append({})
                continue
            x = solve_particular(dga.d_matrix(k - 1), dense(diff, dga.dim(k)))
            if x is None:
                raise InconsistentModel("the two sections differ by a non-exact cocycle")
            vals.append(sparse(x))
        out[k] = vals
    return out


def choice_delta(obj, c: CochainChoice, c2: CochainChoice, beta: Mapping | None = None) -> ChoiceDelta:
    """[gamma' - gamma - beta(alpha + ½ d beta)] on every E basis vector."""
    coh = _as_coh(obj)
    eng = engine(coh)
    cls_degrees = sorted(set(eng.hdeg))
    if beta is None:
        beta = solve_beta(c, c2, cls_degrees)
    else:
        beta = {k: [dict(v) for v in beta.get(k, [{}] * coh.betti(k))] for k in cls_degrees}

    def beta_of(k):
        return beta.get(k) or [{} for _ in range(coh.betti(k))]

    delta = {}
    for u, (k, t) in enumerate(eng.eglobal):
        if k - 1 > coh.top:
            continue
        z = vadd(dict(c2.gamma(k)[t]), c.gamma(k)[t], -1)
        vadd(z, beta_phi(c, beta_of, eng.evec[u]), -1)
        delta[u] = _classify(coh, k - 1, z, "the choice difference")
    return ChoiceDelta(delta, beta)


def id_delta(eng: Engine, delta: Mapping, vec: Mapping) -> tuple | None:
    """Id delta on an H (x) E vector: q (x) e -> (-1)^{|q|} q delta(e)."""
    out = None
    for (g, u), x in vec.items():
        ku = eng.edeg[u]
        d = delta.get(u)
        if d is None or not any(d):
            continue
        val = eng.cup_with(g, ku - 1, d)
        if out is None:
            out = [Fraction(0)] * len(val)
        for i, y in enumerate(val):
            out[i] += x * _sign(eng.hdeg[g]) * y
    return tuple(out) if out is not None else None


def _vsub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def eq9_holds(obj, c: CochainChoice, c2: CochainChoice, delta: ChoiceDelta | None = None, degrees=None) -> bool:
    """T_{c'} - T_c = Id delta(c', c) on K[H (x) E]."""
    coh = _as_coh(obj)
    eng = engine(coh)
    delta = delta or choice_delta(coh, c, c2)
    t1 = uniform_triple(coh, c, degrees)
    t2 = uniform_triple(coh, c2, degrees)
    for n, comp in t1.components.items():
        for j, b in enumerate(comp.domain.basis):
            vec = _keyed(comp.keys, b)
            lhs = _vsub(t2.components[n].matrix.column(j), comp.matrix.column(j))
            rhs = id_delta(eng, delta.delta, vec) or tuple(Fraction(0) for _ in lhs)
            if lhs != rhs:
                return False
    return True


def _split_last(eng: Engine, vec: Mapping) -> dict:
    """(Id j)(vec) grouped by the last E slot: z -> H (x) E vector."""
    groups: dict = {}
    for (g, u, v), x in vec.items():
        vadd(groups.setdefault(v, {}), {(g, u): x})
        vadd(groups.setdefault(u, {}), {(g, v): x}, -_sign(eng.edeg[u] * eng.edeg[v]))
    return {z: w for z, w in groups.items() if w}


def triple_class(c: CochainChoice, eng: Engine, vec: Mapping, n: int) -> tuple:
    return _classify(c.coh, n - 1, triple_value(c, eng, vec), "the uniform triple product")


def t_delta_j(c: CochainChoice, eng: Engine, delta: Mapping, vec: Mapping, target: int) -> tuple:
    """(T_c delta)((Id j)(vec)) with (T delta)(k (x) g) = (-1)^{|k|} T(k) delta(g)."""
    out = [Fraction(0)] * c.coh.betti(target)
    for z, w in _split_last(eng, vec).items():
        d = delta.get(z)
        if d is None or not any(d):
            continue
        kz = target + 2 - eng.edeg[z]
        t = triple_class(c, eng, w, kz)
        val = eng.cup_coords(kz - 1, t, eng.edeg[z] - 1, d)
        for i, y in enumerate(val):
            out[i] += _sign(kz) * y
    return tuple(out)


def id_delta_sq(eng: Engine, delta: Mapping, vec: Mapping, target: int) -> tuple:
    """Id delta² on q (x) e ^ f: (-1)^{|e|} q delta(e) delta(f)."""
    out = [Fraction(0)] * eng.coh.betti(target)
    for (g, u, v), x in vec.items():
        du, dv = delta.get(u), delta.get(v)
        if not du or not dv or not any(du) or not any(dv):
            continue
        ku, kv = eng.edeg[u], eng.edeg[v]
        dd = eng.cup_coords(ku - 1, du, kv - 1, dv)
        val = eng.cup_with(g, ku + kv - 2, dd)
        for i, y in enumerate(val):
            out[i] += x * _sign(ku) * y
    return tuple(out)


@dataclass
class TransformationReport:
    eq9: bool
    eq12: bool
    cocycle: bool
    delta: ChoiceDelta
    mismatches: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.eq9 and self.eq12 and self.cocycle


def verify_transformation(obj, c: CochainChoice, c2: CochainChoice, beta: Mapping | None = None,
                          degrees=None) -> TransformationReport:
    """Check P_{c'} - P_c = (T_c delta)(Id j) + Id delta² on every pentagonal degree."""
    coh = _as_coh(obj)
    eng = engine(coh)
    delta = choice_delta(coh, c, c2, beta)
    ok9 = eq9_holds(coh, c, c2, delta)
    p1 = pentagonal(coh, c, degrees)
    p2 = pentagonal(coh, c2, degrees)
    ok12, okc = True, True
    bad = []
    for n, comp in p1.components.items():
        for j, b in enumerate(comp.domain.basis):
            vec = _keyed(comp.keys, b)
            lhs = _vsub(p2.components[n].matrix.column(j), comp.matrix.column(j))
            a = t_delta_j(c, eng, delta.delta, vec, n - 2)
            s = id_delta_sq(eng, delta.delta, vec, n - 2)
            rhs = tuple(x + y for x, y in zip(a, s))
            if lhs != rhs:
                ok12 = False
                bad.append((n, j, lhs, rhs))
            # (T_c - T_c' + Id delta) vanishes on each slot of (Id j)(vec)
            for z, w in _split_last(eng, vec).items():
                kz = n - eng.edeg[z]
                diff = _vsub(triple_class(c, eng, w, kz), triple_class(c2, eng, w, kz))
                idd = id_delta(eng, delta.delta, w)
                if idd is not None:
                    diff = tuple(x + y for x, y in zip(diff, idd))
                if any(diff):
                    okc = False
    return TransformationReport(ok9, ok12, okc, delta, bad)


# -- vanishing triple products --------------------------------------------

def _l2_unknowns(coh: Cohomology, eng: Engine, edegrees=None) -> list:
    """(u, r): delta(e_u) has coordinate r in H^{|e_u|-1}."""
    out = []
    for u, k in enumerate(eng.edeg):
        if edegrees is not None and k not in edegrees:
            continue
        if k - 1 <= coh.top:
            out.extend((u, r) for r in range(coh.betti(k - 1)))
    return out


def _id_delta_system(coh, eng, unknowns, kdegrees):
    """Rows: (n, K basis index, output coordinate); columns: unknowns."""
    col_of = {x: i for i, x in enumerate(unknowns)}
    rows = []
    row_meta = []
    for n in kdegrees:
        keys, K = eng.K(n)
        b = coh.betti(n - 1)
        for j, vec in enumerate(K.basis):
            block = [[Fraction(0)] * len(unknowns) for _ in range(b)]
            for (g, u), x in _keyed(keys, vec).items():
                ku = eng.edeg[u]
                for r in range(coh.betti(ku - 1)):
                    col = col_of.get((u, r))
                    if col is None:
                        continue
                    unit = tuple(Fraction(int(t == r)) for t in range(coh.betti(ku - 1)))
                    val = eng.cup_with(g, ku - 1, unit)
                    for i, y in enumerate(val):
                        block[i][col] += x * _sign(eng.hdeg[g]) * y
            rows.extend(block)
            row_meta.extend((n, j, i) for i in range(b))
    return rows, row_meta


def find_vanishing_triple_choice(obj, c: CochainChoice | None = None, kdegrees=None) -> CochainChoice | None:
    """A choice (alpha, gamma + eta) whose uniform triple product vanishes, or None.

    Solves T_c + Id delta = 0 on K[H (x) E] for delta, then takes eta =
    alpha o delta.  ``kdegrees`` restricts the degrees of K that must vanish.
    """
    coh = _as_coh(obj)
    c = c or canonical_choice(coh)
    eng = engine(coh)
    kdegrees = _degrees(kdegrees, eng.k_range())
    t = uniform_triple(coh, c, kdegrees)
    if t.is_zero():
        return c
    unknowns = _l2_unknowns(coh, eng)
    rows, meta = _id_delta_system(coh, eng, unknowns, kdegrees)
    rhs = []
    for n, j, i in meta:
        rhs.append(-t.components[n].matrix[i, j])
    if not unknowns:
        return None
    sol = solve_particular(QMatrix(rows, cols=len(unknowns)), rhs)
    if sol is None:
        return None
    delta: dict = {}
    for (u, r), x in zip(unknowns, sol):
        if x:
            k = eng.edeg[u]
            delta.setdefault(u, [Fraction(0)] * coh.betti(k - 1))[r] = x
    eta: dict = {}
    for u, coords in delta.items():
        k, tt = eng.eglobal[u]
        eta.setdefault(k, [{} for _ in range(coh.space().E(k).dim)])[tt] = coh.lift(k - 1, coords)
    out = c.with_gamma_shift(eta, provenance=VANISHING_TRIPLE)
    if not uniform_triple(coh, out, kdegrees).is_zero():
        raise InconsistentModel("shifted choice does not kill the uniform triple product")
    return out


def relevant_k_degrees(obj, n: int) -> list:
    """K-degrees through which a change of choice can move the pentagonal tensor in degree n."""
    coh = _as_coh(obj)
    eng = engine(coh)
    keys, D = eng.D(n)
    used = set()
    for b in D.basis:
        for i, x in enumerate(b):
            if x:
                g, u, v = keys[i]
                used.add(eng.edeg[u])
                used.add(eng.edeg[v])
    out = set()
    for cdeg in used:
        if cdeg - 1 <= coh.top and coh.betti(cdeg - 1) and coh.space().E(cdeg).dim:
            out.add(n - cdeg)
    return sorted(out)


# -- fourfold Massey products ---------------------------------------------

@dataclass
class MasseyFourfold:
    degree: int
    value: tuple
    ambiguity: SubspaceBasis
    sigma1: dict
    sigma2: dict
    representative: dict

    def format(self, coh: Cohomology) -> str:
        from .dga import format_terms

        return format_terms((c, [f"h{self.degree}_{i}"]) for i, c in enumerate(self.value))


def _class_arg(coh, x):
    k, coords = x
    coords = tuple(Fraction(v) for v in coords)
    if len(coords) != coh.betti(k):
        raise ValueError(f"expected {coh.betti(k)} coordinates in degree {k}")
    return k, coords


def _gamma_of_product(c: CochainChoice, eng: Engine, ka, a, kb, b) -> dict:
    e = eng.product_square(ka, a, kb, b)
    if not e:
        return {}
    out: dict = {}
    for u, x in eng.e_coords(ka + kb, e).items():
        vadd(out, gamma_u(c, eng, u), x)
    return out


def fourfold_massey(obj, classes: Sequence, c: CochainChoice | None = None) -> MasseyFourfold:
    """<x1, x2, x3, x4> from alpha1 sigma2 + gamma12 gamma34 + sigma1 alpha4.

    Classes are (degree, coordinates) pairs of even degree.  Here
    d gamma_{i,i+1} = alpha_i alpha_{i+1}, d sigma1 = gamma12 alpha3 - alpha1 gamma23 and
    d sigma2 = gamma23 alpha4 - alpha2 gamma34, which makes the sum closed.
    """
    coh = _as_coh(obj)
    c = c or canonical_choice(coh)
    eng = engine(coh)
    xs = [_class_arg(coh, x) for x in classes]
    if len(xs) != 4:
        raise ValueError("four classes required")
    if any(k % 2 for k, _ in xs):
        raise ValueError("fourfold products are implemented for even-degree classes")
    for i in range(3):
        (ka, a), (kb, b) = xs[i], xs[i + 1]
        if any(eng.cup_coords(ka, a, kb, b)):
            raise NotDefined(f"x{i + 1} x{i + 2} is not zero in cohomology", witness=("product", i + 1, i + 2))
    dga = c.dga
    al = [c.alpha_of(k, v) for k, v in xs]
    ks = [k for k, _ in xs]
    g = {}
    for i in range(3):
        g[i] = _gamma_of_product(c, eng, ks[i], xs[i][1], ks[i + 1], xs[i + 1][1])
    sig = []
    for i in range(2):
        a, b, cc = i, i + 1, i + 2
        kt = ks[a] + ks[b] + ks[cc] - 1
        target = dga.mul(ks[a] + ks[b] - 1, g[a], ks[cc], al[cc])
        vadd(target, dga.mul(ks[a], al[a], ks[b] + ks[cc] - 1, g[b]), -1)
        x = solve_particular(dga.d_matrix(kt - 1), dense(target, dga.dim(kt)))
        if x is None:
            cls = _classify(coh, kt, target, "a triple product")
            raise NotDefined(f"the triple product <x{a + 1}, x{b + 1}, x{cc + 1}> does not vanish",
                             witness=("triple", a + 1, kt, cls))
        sig.append(sparse(x))
    k1, k4 = ks[0], ks[3]
    ktot = sum(ks) - 2
    omega = dga.mul(k1, al[0], ks[1] + ks[2] + k4 - 2, sig[1])
    vadd(omega, dga.mul(ks[0] + ks[1] - 1, g[0], ks[2] + k4 - 1, g[2]))
    vadd(omega, dga.mul(ks[0] + ks[1] + ks[2] - 2, sig[0], k4, al[3]))
    value = _classify(coh, ktot, omega, "the fourfold Massey product")
    amb = []
    for kx, x in (xs[0], xs[3]):
        kr = ktot - kx
        for r in range(coh.betti(kr) if kr >= 0 else 0):
            unit = tuple(Fraction(int(t == r)) for t in range(coh.betti(kr)))
            amb.append(eng.cup_coords(kx, x, kr, unit))
    ambiguity = SubspaceBasis(coh.betti(ktot), amb)
    return MasseyFourfold(ktot, value, ambiguity, sig[0], sig[1], omega)


def star_vector(obj, classes: Sequence) -> tuple:
    """(degree, W vector) of the cyclic sum x1 (x) (x2x3 ^ x4x5); products must vanish."""
    coh = _as_coh(obj)
    eng = engine(coh)
    xs = [_class_arg(coh, x) for x in classes]
    if len(xs) != 5:
        raise ValueError("five classes required")
    out: dict = {}
    for s in range(5):
        (k1, x1), (k2, x2), (k3, x3), (k4, x4), (k5, x5) = (xs[(s + t) % 5] for t in range(5))
        e1 = eng.product_square(k2, x2, k3, x3)
        e2 = eng.product_square(k4, x4, k5, x5)
        if not e1 or not e2:
            continue
        c1 = eng.e_coords(k2 + k3, e1)
        c2 = eng.e_coords(k4 + k5, e2)
        for r, x in enumerate(x1):
            if x:
                g = eng.sp.index[(k1, r)]
                vadd(out, eng.w_vector(g, c1, c2), x)
    return sum(k for k, _ in xs), out


@dataclass
class FifthReport:
    massey_side: tuple
    pentagonal_side: tuple
    degree: int

    @property
    def equal(self) -> bool:
        return self.massey_side == self.pentagonal_side


def massey_times_fifth(obj, classes: Sequence, c: CochainChoice | None = None) -> tuple:
    """<x1, x2, x3, x4> x5, computed on the cochain level as [Omega alpha5]."""
    coh = _as_coh(obj)
    c = c or canonical_choice(coh)
    xs = [_class_arg(coh, x) for x in classes]
    m = fourfold_massey(coh, xs[:4], c)
    k5, x5 = xs[4]
    z = c.dga.mul(m.degree, m.representative, k5, c.alpha_of(k5, x5))
    return _classify(coh, m.degree + k5, z, "the Massey product times a class")


def compare_massey_pentagonal(obj, classes: Sequence, c: CochainChoice | None = None) -> FifthReport:
    """Both sides of <x1,...,x4> x5 = P(star(x1,...,x5)) with a shared choice."""
    coh = _as_coh(obj)
    c = c or canonical_choice(coh)
    eng = engine(coh)
    xs = [_class_arg(coh, x) for x in classes]
    for i in range(5):
        (ka, a), (kb, b) = xs[i], xs[(i + 1) % 5]
        if any(eng.cup_coords(ka, a, kb, b)):
            raise NotDefined(f"x{i + 1} x{(i + 1) % 5 + 1} is not zero in cohomology")
    n, w = star_vector(coh, xs)
    if w and not eng.in_D(n, w):
        raise InconsistentModel("star does not lie in the kernel of m")
    right = _classify(coh, n - 2, pentagonal_value(c, eng, w), "the pentagonal tensor")
    left = massey_times_fifth(coh, xs, c)
    return FifthReport(left, right, n - 2)


# -- the subspace Delta and the discrepancy -------------------------------

def _flatten(cols: Sequence[Sequence]) -> tuple:
    return tuple(x for col in cols for x in col)


def delta_subspace(obj, c: CochainChoice | None = None, degree: int | None = None) -> dict:
    """Per pentagonal degree n: span of (T_c delta)(Id j) over delta with Id delta = 0 on K.

    Elements are maps from the degree-n kernel of m to H^{n-2}, flattened
    column by column.  Only E-degrees used by that kernel enter.
    """
    coh = _as_coh(obj)
    c = c or canonical_choice(coh)
    eng = engine(coh)
    out = {}
    degrees = [degree] if degree is not None else [n for n in eng.d_range() if n - 2 <= coh.top]
    for n in degrees:
        keys, D = eng.D(n)
        rows = coh.betti(n - 2)
        amb = rows * D.dim
        rel = relevant_k_degrees(coh, n)
        edegs = {n - kk for kk in rel}
        unknowns = _l2_unknowns(coh, eng, edegs)
        if not unknowns or not D.dim or not rows:
            out[n] = SubspaceBasis(amb)
            continue
        sysrows, _ = _id_delta_system(coh, eng, unknowns, rel)
        m = QMatrix(sysrows, cols=len(unknowns)) if sysrows else QMatrix.zeros(0, len(unknowns))
        gens = []
        for sol in kernel_basis(m).basis:
            delta: dict = {}
            for (u, r), x in zip(unknowns, sol):
                if x:
                    k = eng.edeg[u]
                    delta.setdefault(u, [Fraction(0)] * coh.betti(k - 1))[r] = x
            cols = [t_delta_j(c, eng, delta, _keyed(keys, b), n - 2) for b in D.basis]
            gens.append(_flatten(cols))
        out[n] = SubspaceBasis(amb, gens)
    return out


@dataclass
class Discrepancy:
    degree: int
    matrix: QMatrix  # F P_b - P_c F on the source kernel basis
    delta_dim: int
    quotient: tuple  # coordinates of the class modulo Delta
    provenance: tuple = ()

    def is_zero(self) -> bool:
        return not any(self.quotient)


def check_isomorphism(cx: Cohomology, cy: Cohomology, F: Mapping) -> None:
    top = max(cx.top, cy.top)
    for k in range(1, top + 1):
        bx, by = cx.betti(k), cy.betti(k)
        if bx != by:
            raise NotAnIsomorphism(f"Betti numbers differ in degree {k}: {bx} and {by}")
        if bx == 0:
            continue
        m = F.get(k)
        if m is None or m.rows != by or m.cols != bx or rank(m) != bx:
            raise NotAnIsomorphism(f"the map in degree {k} is not invertible")
    ex, ey = engine(cx), engine(cy)
    for g in range(ex.sp.dim):
        for h in range(g, ex.sp.dim):
            kg, kh = ex.hdeg[g], ex.hdeg[h]
            if kg + kh > min(cx.limit, cy.limit):
                continue
            lhs = _apply_F(F, kg + kh, ex.cup_classes(g, h))
            fg = F[kg].column(ex.sp.locate[g][1])
            fh = F[kh].column(ex.sp.locate[h][1])
            if lhs != ey.cup_coords(kg, fg, kh, fh):
                raise NotAnIsomorphism(f"the map does not respect the product of {ex.sp.space.labels[g]} "
                                       f"and {ex.sp.space.labels[h]}")


def _apply_F(F: Mapping, k: int, coords: Sequence) -> tuple:
    if not coords:
        return tuple(coords)
    m = F[k]
    return tuple(sum((m[i, j] * coords[j] for j in range(m.cols)), Fraction(0)) for i in range(m.rows))


def transport_w(ex: Engine, ey: Engine, F: Mapping, vec: Mapping) -> dict:
    """F (x) F² (x) F² on an H (x) 𝒜²E vector."""
    out: dict = {}

    def F_e(u):
        k = ex.edeg[u]
        img: dict = {}
        for (a, b), x in ex.evec[u].items():
            ka, ia = ex.sp.locate[a]
            kb, ib = ex.sp.locate[b]
            fa = F[ka].column(ia)
            fb = F[kb].column(ib)
            vadd(img, ey.product_square(ka, fa, kb, fb), x)
        return ey.e_coords(k, img) if img else {}

    cache: dict = {}
    for (g, u, v), x in vec.items():
        kg, ig = ex.sp.locate[g]
        fu = cache.setdefault(u, F_e(u))
        fv = cache.setdefault(v, F_e(v))
        for r, y in enumerate(F[kg].column(ig)):
            if y:
                vadd(out, ey.w_vector(ey.sp.index[(kg, r)], fu, fv), x * y)
    return out


def pentagonal_discrepancy(X, Y, F: Mapping, degrees=None, choice_x: CochainChoice | None = None,
                           choice_y: CochainChoice | None = None) -> dict:
    """Per degree n, the class of F P_b - P_c F modulo Delta.

    b on X and c on Y are choices whose uniform triple products vanish on
    the K-degrees that can influence degree n; F maps H(X) to H(Y) as
    matrices per degree.
    """
    cx, cy = _as_coh(X), _as_coh(Y)
    check_isomorphism(cx, cy, F)
    ex, ey = engine(cx), engine(cy)
    if degrees is None:
        degrees = [n for n in ex.d_range() if n - 2 <= cx.top and ex.D(n)[1].dim]
    out = {}
    for n in degrees:
        rel = relevant_k_degrees(cx, n)
        b = find_vanishing_triple_choice(cx, choice_x, rel)
        c = find_vanishing_triple_choice(cy, choice_y, rel)
        if b is None or c is None:
            side = "source" if b is None else "target"
            fm = bianchi_massey(cx if b is None else cy)
            why = "the Bianchi-Massey tensor is nonzero" if not fm.is_zero() else \
                "no choice with vanishing uniform triple product was found"
            raise NoIntertwiningChoices(f"degree {n}: on the {side}, {why}")
        keys, D = ex.D(n)
        ykeys, DY = ey.D(n)
        yidx = {k: i for i, k in enumerate(ykeys)}
        cols = []
        for vec in D.basis:
            w = _keyed(keys, vec)
            px = _classify(cx, n - 2, pentagonal_value(b, ex, w), "the pentagonal tensor")
            left = _apply_F(F, n - 2, px)
            wy = transport_w(ex, ey, F, w)
            if wy and not DY.contains(dense({yidx[k]: x for k, x in wy.items()}, len(ykeys))):
                raise InconsistentModel("transported element leaves the kernel of m")
            right = _classify(cy, n - 2, pentagonal_value(c, ey, wy), "the pentagonal tensor")
            cols.append(_vsub(left, right) if left else ())
        rows = cy.betti(n - 2)
        mat = QMatrix.from_columns(cols, rows) if cols else QMatrix.zeros(rows, 0)
        dsub = delta_subspace(cx, b, n)[n]
        # Delta lives on the source side; push its values forward along F
        pushed = []
        for v in dsub.basis:
            colsv = [v[j * rows:(j + 1) * rows] for j in range(D.dim)]
            pushed.append(_flatten([_apply_F(F, n - 2, col) for col in colsv]))
        delta_y = SubspaceBasis(rows * D.dim, pushed)
        flat = _flatten(cols)
        q = quotient_coords([flat], delta_y)[0] if flat else ()
        out[n] = Discrepancy(n, mat, delta_y.dim, tuple(q), (b.provenance, c.provenance))
    return out


# -- formality ------------------------------------------------------------

@dataclass
class Formal:
    verdict: str = "Formal"
    choice: str = ""


@dataclass
class NotFormal:
    tensor: str
    witness: tuple
    verdict: str = "NotFormal"


@dataclass
class NotApplicable:
    reason: str
    verdict: str = "NotApplicable"


def orientation_of(obj, coh: Cohomology | None = None):
    """(top degree, functional) from the model, or None."""
    dga = obj if not isinstance(obj, Cohomology) else obj.dga
    return getattr(dga, "orientation", None)


def poincare_check(coh: Cohomology, m: int) -> str | None:
    """Reason the cohomology fails m-dimensional duality, or None."""
    if m > coh.limit:
        return f"the top degree {m} lies beyond the computed range"
    for k in range(m + 1, coh.top + 1):
        if coh.betti(k):
            return f"b_{k} = {coh.betti(k)} above the top degree {m}"
    if coh.betti(m) != 1:
        return f"b_{m} = {coh.betti(m)}, not 1"
    for k in range(m + 1):
        if coh.betti(k) != coh.betti(m - k):
            return f"b_{max(k, m - k)} = {coh.betti(max(k, m - k))} but b_{min(k, m - k)} = {coh.betti(min(k, m - k))}"
    eng = engine(coh)
    for k in range(1, m):
        b = coh.betti(k)
        if not b:
            continue
        rows = []
        for i in range(b):
            ui = tuple(Fraction(int(t == i)) for t in range(b))
            row = []
            for j in range(coh.betti(m - k)):
                uj = tuple(Fraction(int(t == j)) for t in range(coh.betti(m - k)))
                row.append(eng.cup_coords(k, ui, m - k, uj)[0])
            rows.append(row)
        if rank(QMatrix(rows, cols=coh.betti(m - k))) != b:
            return f"the pairing of H^{k} with H^{m - k} is degenerate"
    return None


def formality_verdict(obj, n: int, orientation=None):
    """Formal / NotFormal / NotApplicable for an (n-1)-connected Poincaré DGA of dimension <= 5n-2."""
    coh = _as_coh(obj)
    for i in range(1, min(n, coh.top + 1)):
        if coh.betti(i):
            return NotApplicable(f"b_{i} = {coh.betti(i)}, so the algebra is not {n - 1}-connected")
    orient = orientation or orientation_of(coh.dga)
    if orient is not None:
        m = orient[0]
    else:
        nz = [k for k in range(1, coh.top + 1) if coh.betti(k)]
        if not nz:
            return Formal(choice=CANONICAL)
        m = max(nz)
    reason = poincare_check(coh, m)
    if reason:
        return NotApplicable(reason)
    if m > 5 * n - 2:
        return NotApplicable(f"dimension {m} exceeds 5n-2 = {5 * n - 2}")
    fm = bianchi_massey(coh)
    w = fm.witness()
    if w:
        return NotFormal("Bianchi-Massey tensor", w)
    c = find_vanishing_triple_choice(coh)
    if c is None:
        return NotApplicable("no cochain choice with vanishing uniform triple product exists")
    p = pentagonal(coh, c)
    w = p.witness()
    if w:
        return NotFormal("pentagonal Massey tensor", w)
    return Formal(choice=c.provenance)


def canonical_element(obj, c: CochainChoice | None = None) -> tuple:
    """Orientation functional composed with the pentagonal tensor in degree top + 2."""
    coh = _as_coh(obj)
    orient = orientation_of(coh.dga)
    if orient is None:
        raise MissingOrientation("the model carries no orientation")
    m, functional = orient
    p = pentagonal(coh, c, [m + 2])
    comp = p.components.get(m + 2)
    if comp is None:
        return ()
    functional = tuple(Fraction(x) for x in functional)
    return tuple(sum((functional[i] * comp.matrix[i, j] for i in range(comp.matrix.rows)), Fraction(0))
                 for j in range(comp.matrix.cols))


# -- random choices for experiments ---------------------------------------

def random_exact_perturbation(obj, c: CochainChoice, rng: random.Random, scale: int = 3) -> CochainChoice:
    """gamma + d(zeta) for random zeta: another valid choice with the same alpha."""
    coh = _as_coh(obj)
    dga = coh.dga
    eng = engine(coh)

    def eta(k):
        out = []
        for _ in range(coh.space().E(k).dim):
            if k - 2 < 0:
                out.append({})
                continue
            zeta = {i: Fraction(rng.randint(-scale, scale)) for i in range(dga.dim(k - 2))}
            out.append(dga.d(k - 2, {i: x for i, x in zeta.items() if x}))
        return out

    return c.with_gamma_shift({k: eta(k) for k in sorted(set(eng.edeg))}, provenance=USER_PERTURBED)


def random_closed_perturbation(obj, c: CochainChoice, rng: random.Random, scale: int = 3) -> CochainChoice:
    """gamma + eta with eta a random combination of class representatives and coboundaries."""
    coh = _as_coh(obj)
    dga = coh.dga
    eng = engine(coh)
    shifts = {}
    for k in sorted(set(eng.edeg)):
        vals = []
        for _ in range(coh.space().E(k).dim):
            v: dict = {}
            if k - 1 <= coh.top:
                for rep in coh.representatives(k - 1):
                    vadd(v, rep, rng.randint(-scale, scale))
            if k - 2 >= 0:
                zeta = {i: Fraction(rng.randint(-scale, scale)) for i in range(dga.dim(k - 2))}
                vadd(v, dga.d(k - 2, {i: x for i, x in zeta.items() if x}))
            vals.append(v)
        shifts[k] = vals
    return c.with_gamma_shift(shifts, provenance=USER_PERTURBED)


def random_alpha_shift(obj, c: CochainChoice, rng: random.Random, scale: int = 2) -> CochainChoice:
    """alpha + d beta with random beta, and gamma corrected accordingly."""
    coh = _as_coh(obj)
    dga = coh.dga
    eng = engine(coh)
    beta = {}
    for k in sorted(set(eng.hdeg)):
        vals = []
        for _ in range(coh.betti(k)):
            if k - 1 < 0:
                vals.append({})
                continue
            b = {i: Fraction(rng.randint(-scale, scale)) for i in range(dga.dim(k - 1))}
            vals.append({i: x for i, x in b.items() if x})
        beta[k] = vals
    return c.with_alpha_shift(beta)


__all__ = [
    "TensorMap", "Component", "Engine", "engine", "canonical_choice", "ChoiceDelta", "MasseyFourfold",
    "FifthReport", "Discrepancy", "TransformationReport", "Formal", "NotFormal", "NotApplicable",
    "NotDefined", "NoIntertwiningChoices", "MissingOrientation", "NotAnIsomorphism",
    "uniform_triple", "bianchi_massey", "d_space", "d_space_dims", "pentagonal", "choice_delta",
    "eq9_holds", "verify_transformation", "find_vanishing_triple_choice", "relevant_k_degrees",
    "fourfold_massey", "star_vector", "massey_times_fifth", "compare_massey_pentagonal",
    "delta_subspace", "pentagonal_discrepancy", "check_isomorphism", "formality_verdict",
    "poincare_check", "canonical_element", "random_exact_perturbation", "random_closed_perturbation",
    "random_alpha_shift", "triple_value", "pentagonal_value", "bianchi_value",
]
