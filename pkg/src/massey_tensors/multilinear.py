"""Bases of tensor, symmetric and exterior powers and the canonical maps between them.

Graded powers follow the Koszul rule: exchanging two adjacent factors of
degrees a and b costs (-1)^(ab) in a graded-symmetric power and -(-1)^(ab)
in a graded-antisymmetric one.  Basis elements are non-decreasing index
tuples, listed in lexicographic order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, prod
from typing import Sequence

from .qlinalg import QMatrix, SubspaceBasis, kernel_basis

TENSOR = "tensor"
SYMMETRIC = "symmetric"
EXTERIOR = "exterior"
GRADED_SYMMETRIC = "graded-symmetric"
GRADED_ANTISYMMETRIC = "graded-antisymmetric"
KINDS = (TENSOR, SYMMETRIC, EXTERIOR, GRADED_SYMMETRIC, GRADED_ANTISYMMETRIC)


@dataclass(frozen=True)
class GradedVectorSpace:
    """Finite graded vector space given by one degree per basis element."""

    degrees: tuple
    labels: tuple = ()

    def __post_init__(self):
        if any(d < 0 for d in self.degrees):
            raise ValueError("degrees must be non-negative")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"v{i}" for i in range(len(self.degrees))))
        elif len(self.labels) != len(self.degrees):
            raise ValueError("one label per basis element required")

    @classmethod
    def ungraded(cls, r: int, degree: int = 0, prefix: str = "x") -> "GradedVectorSpace":
        return cls(tuple([degree] * r), tuple(f"{prefix}{i + 1}" for i in range(r)))

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def dims(self) -> dict:
        out: dict = {}
        for d in self.degrees:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def indices_in_degree(self, d: int) -> list:
        return [i for i, e in enumerate(self.degrees) if e == d]


def koszul_sort(idx: Sequence[int], degrees: Sequence[int], antisymmetric: bool = False):
    """Sort ``idx`` by adjacent swaps, tracking the graded sign.

    Returns (sign, sorted tuple).  For ``antisymmetric`` every swap carries an
    extra -1.
    """
    w = list(idx)
    sign = 1
    n = len(w)
    for i in range(n):
        for j in range(n - 1 - i):
            a, b = w[j], w[j + 1]
            if a > b:
                w[j], w[j + 1] = b, a
                if (degrees[a] * degrees[b]) % 2:
                    sign = -sign
                if antisymmetric:
                    sign = -sign
    return sign, tuple(w)


def normalize(kind: str, idx: Sequence[int], degrees: Sequence[int] | None = None):
    """Canonical basis representative of the class of e_idx in a power.

    Returns (sign, key); sign is 0 (and key None) when the class vanishes.
    """
    idx = tuple(idx)
    if kind == TENSOR:
        return 1, idx
    if kind == SYMMETRIC:
        return 1, tuple(sorted(idx))
    if kind == EXTERIOR:
        if len(set(idx)) < len(idx):
            return 0, None
        sign, key = koszul_sort(idx, [0] * (max(idx) + 1), antisymmetric=True)
        return sign, key
    if degrees is None:
        raise ValueError("graded powers need degrees")
    anti = kind == GRADED_ANTISYMMETRIC
    if kind not in (GRADED_SYMMETRIC, GRADED_ANTISYMMETRIC):
        raise ValueError(f"unknown power kind {kind!r}")
    sign, key = koszul_sort(idx, degrees, antisymmetric=anti)
    for a, b in zip(key, key[1:]):
        if a == b and (degrees[a] % 2 == 0) == anti:
            return 0, None
    return sign, key


@dataclass(frozen=True)
class PowerBasis:
    """Enumerated basis of the k-th power of a graded space."""

    kind: str
    power: int
    base: GradedVectorSpace
    elements: tuple
    index: dict = field(compare=False, repr=False)

    @property
    def dim(self) -> int:
        return len(self.elements)

    def degree_of(self, key) -> int:
        return sum(self.base.degrees[i] for i in key)

    @property
    def degrees(self) -> tuple:
        return tuple(self.degree_of(k) for k in self.elements)

    def as_space(self, sep: str = "") -> GradedVectorSpace:
        """The power itself as a graded space, ready for further powers."""
        joiner = sep if sep else ("*" if self.kind in (SYMMETRIC, GRADED_SYMMETRIC) else "^")
        if self.kind == TENSOR:
            joiner = "@"
        labels = tuple(joiner.join(self.base.labels[i] for i in k) if k else "1" for k in self.elements)
        return GradedVectorSpace(self.degrees, labels)

    def coords(self, combo: dict) -> tuple:
        """Dense coordinates of a dict {key: coefficient}."""
        v = [Fraction(0)] * self.dim
        for k, c in combo.items():
            v[self.index[k]] += c
        return tuple(v)

    def add_term(self, out: dict, idx: Sequence[int], coeff) -> None:
        """Accumulate coeff * [e_idx] into ``out`` keyed by basis key."""
        if not coeff:
            return
        sign, key = normalize(self.kind, idx, self.base.degrees)
        if sign:
            v = out.get(key, 0) + sign * coeff
            if v:
                out[key] = v
            else:
                out.pop(key, None)


def power_basis(V: GradedVectorSpace, kind: str, k: int) -> PowerBasis:
    if k < 0:
        raise ValueError("power must be non-negative")
    if kind not in KINDS:
        raise ValueError(f"unknown power kind {kind!r}")
    n = V.dim
    if kind == TENSOR:
        elems = list(itertools.product(range(n), repeat=k))
    elif kind == EXTERIOR:
        elems = list(itertools.combinations(range(n), k))
    else:
        elems = list(itertools.combinations_with_replacement(range(n), k))
        if kind != SYMMETRIC:
            elems = [e for e in elems if normalize(kind, e, V.degrees)[0] != 0]
    elems = tuple(elems)
    return PowerBasis(kind, k, V, elems, {e: i for i, e in enumerate(elems)})


@dataclass(frozen=True)
class LinearMap:
    """A matrix together with labels for its domain and codomain bases."""

    matrix: QMatrix
    domain: tuple
    codomain: tuple

    @property
    def rank(self) -> int:
        from .qlinalg import rank

        return rank(self.matrix)


# -- the map m on V (x) Λ²P²V, ungraded ----------------------------------

def _m_bases(r: int):
    V = GradedVectorSpace.ungraded(r)
    P2 = power_basis(V, SYMMETRIC, 2)
    P3 = power_basis(V, SYMMETRIC, 3)
    L2 = power_basis(P2.as_space(), EXTERIOR, 2)
    domain = [(q, w) for q in range(r) for w in L2.elements]
    codomain = [(t, p) for t in P3.elements for p in P2.elements]
    return V, P2, P3, L2, domain, codomain


def m_map_degree2(r: int) -> LinearMap:
    """q (x) (xy ^ zw) -> (xyq) (x) (zw) - (zwq) (x) (xy), into P³V (x) P²V."""
    if r < 0:
        raise ValueError("rank must be non-negative")
    V, P2, P3, L2, domain, codomain = _m_bases(r)
    row_of = {c: i for i, c in enumerate(codomain)}
    cols = []
    for q, (a, b) in domain:
        xy, zw = P2.elements[a], P2.elements[b]
        col: dict = {}
        for mono, other, s in ((xy, b, 1), (zw, a, -1)):
            key = (tuple(sorted(mono + (q,))), P2.elements[other])
            i = row_of[key]
            col[i] = col.get(i, 0) + s
        cols.append({i: v for i, v in col.items() if v})
    mat = QMatrix.from_sparse_columns(cols, len(codomain))
    dlabels = tuple(f"{V.labels[q]}@({L2.base.labels[a]}^{L2.base.labels[b]})" for q, (a, b) in domain)
    clabels = tuple(f"{P3.as_space().labels[P3.index[t]]}@{P2.as_space().labels[P2.index[p]]}" for t, p in codomain)
    return LinearMap(mat, dlabels, clabels)


def symmetrization_p3p2(r: int) -> QMatrix:
    """P³V (x) P²V -> P⁵V, multiplication of monomials."""
    V = GradedVectorSpace.ungraded(r)
    P2 = power_basis(V, SYMMETRIC, 2)
    P3 = power_basis(V, SYMMETRIC, 3)
    P5 = power_basis(V, SYMMETRIC, 5)
    cols = [{P5.index[tuple(sorted(t + p))]: 1} for t in P3.elements for p in P2.elements]
    return QMatrix.from_sparse_columns(cols, P5.dim)


def compute_R(r: int) -> SubspaceBasis:
    """R(V) = ker m for dim V = r, as an explicit kernel."""
    return kernel_basis(m_map_degree2(r).matrix)


def r_dimension_formula(r: int) -> int:
    return 6 * comb(r + 2, 5)


def star(xs: Sequence[Sequence]) -> tuple:
    """Cyclic sum of x1 (x) (x2x3 ^ x4x5), in the domain basis of m_map_degree2."""
    if len(xs) != 5:
        raise ValueError("star takes five vectors")
    r = len(xs[0])
    if any(len(x) != r for x in xs):
        raise ValueError("all five vectors must lie in the same space")
    V, P2, P3, L2, domain, codomain = _m_bases(r)
    col_of = {c: i for i, c in enumerate(domain)}
    out = [Fraction(0)] * len(domain)

    def sym2(u, v):
        res: dict = {}
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if b:
                    k = P2.index[(i, j) if i <= j else (j, i)]
                    res[k] = res.get(k, 0) + a * b
        return res

    xs = [tuple(Fraction(x) for x in v) for v in xs]
    for shift in range(5):
        x1, x2, x3, x4, x5 = (xs[(shift + t) % 5] for t in range(5))
        u, w = sym2(x2, x3), sym2(x4, x5)
        for a, ca in u.items():
            for b, cb in w.items():
                if a == b:
                    continue
                key, s = ((a, b), 1) if a < b else ((b, a), -1)
                for q, cq in enumerate(x1):
                    if cq:
                        out[col_of[(q, key)]] += s * ca * cb * cq
    return tuple(out)


# -- Weyl modules ---------------------------------------------------------

@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {parts}")
        object.__setattr__(self, "parts", parts)

    def conjugate(self) -> tuple:
        if not self.parts:
            return ()
        return tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0]))


def weyl_dim(lam, r: int) -> int:
    """dim S(lam) for GL_r via the hook-content formula."""
    if not isinstance(lam, Partition):
        lam = Partition(tuple(lam))
    conj = lam.conjugate()
    num, den = 1, 1
    for i, row in enumerate(lam.parts):
        for j in range(row):
            num *= r + j - i
            den *= (row - j - 1) + (conj[j] - i - 1) + 1
    return num // den if num % den == 0 else Fraction(num, den)


# -- graded versions ------------------------------------------------------

@dataclass(frozen=True)
class GradedMBases:
    H: GradedVectorSpace
    G2: PowerBasis  # graded-symmetric square of H
    G3: PowerBasis
    A2G2: PowerBasis  # graded-antisymmetric square of G2
    domain: tuple  # (q, (a, b)) with a, b indices into G2
    codomain: tuple  # (t, p): t in G3, p in G2


def graded_m_bases(H: GradedVectorSpace) -> GradedMBases:
    G2 = power_basis(H, GRADED_SYMMETRIC, 2)
    G3 = power_basis(H, GRADED_SYMMETRIC, 3)
    A2 = power_basis(G2.as_space(), GRADED_ANTISYMMETRIC, 2)
    domain = tuple((q, w) for q in range(H.dim) for w in A2.elements)
    codomain = tuple((t, p) for t in G3.elements for p in G2.elements)
    return GradedMBases(H, G2, G3, A2, domain, codomain)


def _sym_q(G3: PowerBasis, q: int, pair) -> tuple:
    return normalize(GRADED_SYMMETRIC, (q,) + tuple(pair), G3.base.degrees)


def graded_m_map(H: GradedVectorSpace) -> LinearMap:
    """q (x) (a ^ b) -> (qa)(b) - (-1)^{|a||b|} (qb)(a) on H (x) 𝒜²(𝒢²H)."""
    B = graded_m_bases(H)
    row_of = {c: i for i, c in enumerate(B.codomain)}
    g2deg = B.G2.degrees
    cols = []
    for q, (a, b) in B.domain:
        col: dict = {}
        ab_sign = -1 if (g2deg[a] * g2deg[b]) % 2 else 1
        for first, second, s in ((a, b, 1), (b, a, -ab_sign)):
            sg, t = _sym_q(B.G3, q, B.G2.elements[first])
            if sg:
                i = row_of[(t, B.G2.elements[second])]
                col[i] = col.get(i, 0) + s * sg
        cols.append({i: v for i, v in col.items() if v})
    mat = QMatrix.from_sparse_columns(cols, len(B.codomain))
    return LinearMap(mat, B.domain, B.codomain)


def full_symmetrization(H: GradedVectorSpace, e_vectors: Sequence[Sequence] | None = None) -> LinearMap:
    """s : H (x) E -> 𝒢³H for E spanned by ``e_vectors`` in 𝒢²H coordinates.

    With ``e_vectors`` omitted E is all of 𝒢²H.  Columns are indexed by
    (q, e) with e the position of the E basis vector.
    """
    G2 = power_basis(H, GRADED_SYMMETRIC, 2)
    G3 = power_basis(H, GRADED_SYMMETRIC, 3)
    if e_vectors is None:
        e_vectors = [tuple(Fraction(int(i == j)) for j in range(G2.dim)) for i in range(G2.dim)]
    cols = []
    domain = []
    for q in range(H.dim):
        for k, e in enumerate(e_vectors):
            col: dict = {}
            for p, c in enumerate(e):
                if c:
                    sg, t = _sym_q(G3, q, G2.elements[p])
                    if sg:
                        i = G3.index[t]
                        col[i] = col.get(i, 0) + sg * c
            cols.append({i: v for i, v in col.items() if v})
            domain.append((q, k))
    return LinearMap(QMatrix.from_sparse_columns(cols, G3.dim), tuple(domain), G3.elements)


def K_kernel(H: GradedVectorSpace, e_vectors: Sequence[Sequence] | None = None) -> SubspaceBasis:
    """K[H (x) E] = ker s."""
    return kernel_basis(full_symmetrization(H, e_vectors).matrix)


def j_inclusion(H: GradedVectorSpace) -> LinearMap:
    """x ^ y -> x (x) y - (-1)^{|x||y|} y (x) x, from 𝒜²(𝒢²H) into 𝒢²H (x) 𝒢²H."""
    G2 = power_basis(H, GRADED_SYMMETRIC, 2)
    A2 = power_basis(G2.as_space(), GRADED_ANTISYMMETRIC, 2)
    g2deg = G2.degrees
    n = G2.dim
    cols = []
    for a, b in A2.elements:
        col: dict = {}
        s = -1 if (g2deg[a] * g2deg[b]) % 2 else 1
        col[a * n + b] = col.get(a * n + b, 0) + 1
        col[b * n + a] = col.get(b * n + a, 0) - s
        cols.append({i: v for i, v in col.items() if v})
    codomain = tuple((a, b) for a in range(n) for b in range(n))
    return LinearMap(QMatrix.from_sparse_columns(cols, n * n), A2.elements, codomain)


def id_tensor(n: int, f: LinearMap) -> QMatrix:
    """Matrix of Id_n (x) f with the H factor outermost."""
    rows, cols = f.matrix.rows, f.matrix.cols
    out = []
    for q in range(n):
        for i in range(rows):
            row = [Fraction(0)] * (n * cols)
            src = f.matrix.row(i)
            row[q * cols:(q + 1) * cols] = src
            out.append(row)
    return QMatrix(out, cols=n * cols)


def s_tensor_id(H: GradedVectorSpace) -> QMatrix:
    """s (x) Id : H (x) 𝒢²H (x) 𝒢²H -> 𝒢³H (x) 𝒢²H."""
    s = full_symmetrization(H)
    n2 = power_basis(H, GRADED_SYMMETRIC, 2).dim
    n3 = s.matrix.rows
    cols = []
    for q in range(H.dim):
        for a in range(n2):
            src = s.matrix.column(q * n2 + a)
            for b in range(n2):
                cols.append({t * n2 + b: x for t, x in enumerate(src) if x})
    return QMatrix.from_sparse_columns(cols, n3 * n2)


def power_dimension(kind: str, r: int, k: int) -> int:
    if kind == SYMMETRIC:
        return comb(r + k - 1, k)
    if kind == EXTERIOR:
        return comb(r, k)
    if kind == TENSOR:
        return r ** k
    raise ValueError("closed form only for ungraded kinds")


def lambda2_p2_dim(r: int) -> int:
    return comb(comb(r + 1, 2), 2)


__all__ = [
    "GradedVectorSpace", "PowerBasis", "Partition", "LinearMap", "KINDS",
    "TENSOR", "SYMMETRIC", "EXTERIOR", "GRADED_SYMMETRIC", "GRADED_ANTISYMMETRIC",
    "normalize", "koszul_sort", "power_basis", "m_map_degree2", "symmetrization_p3p2",
    "compute_R", "r_dimension_formula", "star", "weyl_dim", "graded_m_bases",
    "graded_m_map", "full_symmetrization", "K_kernel", "j_inclusion", "id_tensor",
    "s_tensor_id", "power_dimension", "lambda2_p2_dim", "prod",
]
