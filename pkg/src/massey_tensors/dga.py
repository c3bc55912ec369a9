"""Finite graded-commutative DGAs over the rationals.

Two presentations share one interface: free Sullivan algebras truncated at
a degree cap, and algebras given by an explicit basis with structure
constants.  Elements of a fixed degree are sparse dicts {basis index:
Fraction}.  On top of this sit cohomology, cochain choices (a cocycle
section together with a prederivative of its square) and products of
algebra-valued maps on graded powers.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .multilinear import (
    GRADED_ANTISYMMETRIC,
    GRADED_SYMMETRIC,
    GradedVectorSpace,
    koszul_sort,
    normalize,
    power_basis,
)
from .qlinalg import QMatrix, SubspaceBasis, as_fraction, image_basis, kernel_basis, solve_particular


UNBOUNDED = 10**9


class DegreeCapExceeded(ValueError):
    pass


class StructureCheckFailed(ValueError):
    pass


class DegreeMismatch(StructureCheckFailed):
    pass


class NotASquareZeroDifferential(StructureCheckFailed):
    pass


class NotAMorphism(ValueError):
    pass


class NotClosed(ValueError):
    pass


class InconsistentModel(RuntimeError):
    pass


# -- sparse vectors -------------------------------------------------------

def vadd(acc: dict, v: Mapping, c=1) -> dict:
    """acc += c * v, in place; drops zeros."""
    if not c:
        return acc
    for k, x in v.items():
        y = acc.get(k, 0) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def vscale(v: Mapping, c) -> dict:
    return {k: c * x for k, x in v.items()} if c else {}


def dense(v: Mapping, n: int) -> tuple:
    out = [Fraction(0)] * n
    for k, x in v.items():
        out[k] = Fraction(x)
    return tuple(out)


def sparse(v: Sequence) -> dict:
    return {i: Fraction(x) for i, x in enumerate(v) if x}


# -- polynomial text ------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*]))")


def parse_terms(text: str) -> list:
    """Parse ``c * g1 * g2 + ...`` into [(Fraction, [names])].

    A term may omit the coefficient; a bare coefficient stands for a multiple
    of the unit.  Raises ValueError on malformed input.
    """
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial")
    pos, n = 0, len(text)
    tokens = []
    while pos < n:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"unexpected character {text[pos:].strip()[0]!r} in {text!r}")
        pos = m.end()
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
    terms = []
    i = 0
    sign = 1
    expect_term = True
    while i < len(tokens):
        kind, val = tokens[i]
        if kind == "op" and val in "+-":
            if not expect_term and terms is not None:
                pass
            sign = sign * (-1 if val == "-" else 1)
            expect_term = True
            i += 1
            continue
        if not expect_term:
            raise ValueError(f"missing operator before {val!r} in {text!r}")
        coeff = Fraction(sign)
        names = []
        need_factor = True
        while i < len(tokens):
            kind, val = tokens[i]
            if need_factor:
                if kind == "num":
                    coeff *= Fraction(val)
                elif kind == "name":
                    names.append(val)
                else:
                    raise ValueError(f"expected a factor, found {val!r} in {text!r}")
                need_factor = False
                i += 1
            elif kind == "op" and val == "*":
                need_factor = True
                i += 1
            else:
                break
        if need_factor:
            raise ValueError(f"dangling '*' in {text!r}")
        terms.append((coeff, names))
        sign = 1
        expect_term = False
    if expect_term:
        raise ValueError(f"polynomial ends with an operator: {text!r}")
    return terms


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_terms(terms: Iterable) -> str:
    """Inverse of parse_terms for [(coeff, [names])]."""
    out = []
    for c, names in terms:
        c = Fraction(c)
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        parts = ([] if a == 1 and names else [format_rational(a)]) + list(names)
        out.append((sign, " * ".join(parts)))
    if not out:
        return "0"
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


# -- the common interface -------------------------------------------------

class DGA:
    """Interface shared by both presentations.

    Subclasses provide ``cap``, ``dim``, ``labels``, ``_mul_basis`` and
    ``_d_basis``.
    """

    name: str = ""
    cap: int = 0
    orientation = None  # (top degree, functional on top cohomology coordinates)

    def _check_degree(self, k: int):
        if k < 0:
            raise ValueError("negative degree")
        if k > self.cap:
            raise DegreeCapExceeded(f"degree {k} exceeds the cap {self.cap}")

    def cohomology_limit(self) -> int:
        """Highest degree in which cohomology is determined by the stored data."""
        return self.cap

    def mul(self, ka: int, a: Mapping, kb: int, b: Mapping) -> dict:
        k = ka + kb
        self._check_degree(k)
        out: dict = {}
        if not a or not b:
            return out
        for i, x in a.items():
            for j, y in b.items():
                vadd(out, self._mul_basis(ka, i, kb, j), x * y)
        return out

    def d(self, k: int, a: Mapping) -> dict:
        self._check_degree(k + 1)
        out: dict = {}
        for i, x in a.items():
            vadd(out, self._d_basis(k, i), x)
        return out

    def d_matrix(self, k: int) -> QMatrix:
        cache = self.__dict__.setdefault("_dmat_cache", {})
        if k not in cache:
            if k < 0:
                cache[k] = QMatrix.zeros(self.dim(0), 0)
            else:
                self._check_degree(k + 1)
                cache[k] = QMatrix.from_sparse_columns([self._d_basis(k, i) for i in range(self.dim(k))], self.dim(k + 1))
        return cache[k]

    def element(self, k: int, coeffs: Mapping | Sequence = ()) -> "Element":
        if not isinstance(coeffs, Mapping):
            coeffs = sparse(coeffs)
        return Element(self, k, {i: Fraction(x) for i, x in coeffs.items() if x})

    def unit(self) -> "Element":
        return Element(self, 0, {0: Fraction(1)})

    def zero(self, k: int) -> "Element":
        return Element(self, k, {})

    def max_degree(self) -> int:
        return self.cap

    def check_structure(self, exhaustive_through: int | None = None) -> None:
        """Verify d² = 0, Leibniz, graded commutativity and associativity."""
        top = self.cap
        lim = top if exhaustive_through is None else min(top, exhaustive_through)
        for k in range(0, top - 1):
            for i in range(self.dim(k)):
                if self.d(k + 1, self._d_basis(k, i)):
                    raise NotASquareZeroDifferential(f"d² ≠ 0 on {self.labels(k)[i]}")
        for ka in range(lim + 1):
            for kb in range(ka, lim + 1 - ka):
                for i in range(self.dim(ka)):
                    for j in range(self.dim(kb)):
                        ab = self._mul_basis(ka, i, kb, j)
                        ba = self._mul_basis(kb, j, ka, i)
                        s = -1 if (ka * kb) % 2 else 1
                        if ab != vscale(ba, s):
                            raise StructureCheckFailed(
                                f"graded commutativity fails for {self.labels(ka)[i]}, {self.labels(kb)[j]}")
                        if ka + kb + 1 <= top:
                            lhs = self.d(ka + kb, ab)
                            rhs = self.mul(ka + 1, self._d_basis(ka, i), kb, {j: 1})
                            sg = -1 if ka % 2 else 1
                            vadd(rhs, self.mul(ka, {i: 1}, kb + 1, self._d_basis(kb, j)), sg)
                            if lhs != rhs:
                                raise StructureCheckFailed(
                                    f"Leibniz rule fails for {self.labels(ka)[i]}, {self.labels(kb)[j]}")
        for ka in range(1, lim + 1):
            for kb in range(1, lim + 1 - ka):
                for kc in range(1, lim + 1 - ka - kb):
                    for i in range(self.dim(ka)):
                        for j in range(self.dim(kb)):
                            ab = self._mul_basis(ka, i, kb, j)
                            for l in range(self.dim(kc)):
                                bc = self._mul_basis(kb, j, kc, l)
                                if self.mul(ka + kb, ab, kc, {l: 1}) != self.mul(ka, {i: 1}, kb + kc, bc):
                                    raise StructureCheckFailed("associativity fails for "
                                                               f"{self.labels(ka)[i]}, {self.labels(kb)[j]}, {self.labels(kc)[l]}")

    def format_vector(self, k: int, v: Mapping) -> str:
        labels = self.labels(k)
        return format_terms((v[i], [labels[i]] if labels[i] != "1" else []) for i in sorted(v))


class Element:
    """A homogeneous element of a DGA."""

    __slots__ = ("dga", "degree", "coeffs")

    def __init__(self, dga: DGA, degree: int, coeffs: Mapping):
        self.dga = dga
        self.degree = degree
        self.coeffs = dict(coeffs)

    def _same(self, other):
        if not isinstance(other, Element) or other.dga is not self.dga:
            raise TypeError("elements of different algebras")
        if other.degree != self.degree and other.coeffs and self.coeffs:
            raise ValueError("cannot add elements of different degrees")

    def __add__(self, other):
        self._same(other)
        deg = self.degree if self.coeffs else other.degree
        return Element(self.dga, deg, vadd(dict(self.coeffs), other.coeffs))

    def __sub__(self, other):
        self._same(other)
        deg = self.degree if self.coeffs else other.degree
        return Element(self.dga, deg, vadd(dict(self.coeffs), other.coeffs, -1))

    def __neg__(self):
        return Element(self.dga, self.degree, vscale(self.coeffs, -1))

    def __mul__(self, other):
        if isinstance(other, Element):
            if other.dga is not self.dga:
                raise TypeError("elements of different algebras")
            return Element(self.dga, self.degree + other.degree,
                           self.dga.mul(self.degree, self.coeffs, other.degree, other.coeffs))
        c = as_fraction(other)
        return Element(self.dga, self.degree, vscale(self.coeffs, c))

    def __rmul__(self, other):
        return self.__mul__(other)

    def d(self) -> "Element":
        return Element(self.dga, self.degree + 1, self.dga.d(self.degree, self.coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs

    def vector(self) -> tuple:
        return dense(self.coeffs, self.dga.dim(self.degree))

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        if self.dga is not other.dga:
            return False
        if not self.coeffs and not other.coeffs:
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, frozenset(self.coeffs.items())))

    def __repr__(self):
        return f"<{self.dga.format_vector(self.degree, self.coeffs)} in degree {self.degree}>"


# -- free algebras --------------------------------------------------------

class SullivanModel(DGA):
    """Free graded-commutative algebra on generators, truncated at ``cap``.

    Monomials are sorted tuples of generator indices (odd generators at
    most once); the basis in each degree is in lexicographic order.
    ``differentials`` maps generator names to polynomial strings or to term
    lists [(coeff, [names])].
    """

    def __init__(self, generators: Sequence, differentials: Mapping | None = None, cap: int = 10,
                 name: str = "", orientation=None, check: bool = True):
        self.name = name
        self.cap = int(cap)
        self.generators = tuple((str(g), int(k)) for g, k in generators)
        names = [g for g, _ in self.generators]
        if len(set(names)) != len(names):
            raise StructureCheckFailed("duplicate generator name")
        if any(k < 1 for _, k in self.generators):
            raise DegreeMismatch("generators must have positive degree")
        self.gen_index = {g: i for i, g in enumerate(names)}
        self.gen_degrees = tuple(k for _, k in self.generators)
        self.orientation = orientation
        self._dgen: list = [dict() for _ in self.generators]
        self.diff_terms: dict = {}
        for g, poly in (differentials or {}).items():
            if g not in self.gen_index:
                raise StructureCheckFailed(f"differential given for unknown generator {g!r}")
            terms = parse_terms(poly) if isinstance(poly, str) else list(poly)
            p = self.poly_from_terms(terms)
            want = self.gen_degrees[self.gen_index[g]] + 1
            for w in p:
                if self.word_degree(w) != want:
                    raise DegreeMismatch(
                        f"d{g} has a term of degree {self.word_degree(w)}, expected {want}")
            self._dgen[self.gen_index[g]] = p
        self._bases: dict = {}
        self._index: dict = {}
        for k in range(self.cap + 1):
            self._enumerate(k)
        self._dword: dict = {(): {}}
        if check:
            self.check_square_zero()

    # monomials
    def word_degree(self, w) -> int:
        return sum(self.gen_degrees[g] for g in w)

    def _enumerate(self, k: int):
        out = []
        degs = self.gen_degrees

        def rec(start, remaining, word):
            if remaining == 0:
                out.append(tuple(word))
                return
            for g in range(start, len(degs)):
                dg = degs[g]
                if dg > remaining:
                    continue
                if dg % 2 and word and word[-1] == g:
                    continue
                word.append(g)
                rec(g, remaining - dg, word)
                word.pop()

        rec(0, k, [])
        out.sort()
        self._bases[k] = out
        self._index[k] = {w: i for i, w in enumerate(out)}

    def monomial_basis(self, k: int) -> list:
        self._check_degree(k)
        return list(self._bases[k])

    def dim(self, k: int) -> int:
        self._check_degree(k)
        return len(self._bases[k])

    def word_label(self, w) -> str:
        if not w:
            return "1"
        names = [self.generators[g][0] for g in w]
        out = []
        for g, grp in itertools.groupby(names):
            n = len(list(grp))
            out.append(g if n == 1 else f"{g}^{n}")
        return "*".join(out)

    def labels(self, k: int) -> list:
        self._check_degree(k)
        return [self.word_label(w) for w in self._bases[k]]

    def mul_words(self, a: tuple, b: tuple):
        """(sign, word) for the product of two monomials; sign 0 if it vanishes."""
        degs = self.gen_degrees
        sign = 1
        for i in a:
            if degs[i] % 2:
                for j in b:
                    if degs[j] % 2:
                        if i == j:
                            return 0, None
                        if i > j:
                            sign = -sign
        return sign, tuple(sorted(a + b))

    def word_from_names(self, names: Sequence[str]):
        idx = []
        for n in names:
            if n not in self.gen_index:
                raise StructureCheckFailed(f"unknown generator {n!r}")
            idx.append(self.gen_index[n])
        sign, w = koszul_sort(idx, self.gen_degrees)
        for a, b in zip(w, w[1:]):
            if a == b and self.gen_degrees[a] % 2:
                return 0, None
        return sign, w

    def poly_from_terms(self, terms) -> dict:
        p: dict = {}
        for c, names in terms:
            s, w = self.word_from_names(names)
            if s:
                vadd(p, {w: Fraction(c)}, s)
        return p

    def poly_mul(self, p: Mapping, q: Mapping) -> dict:
        out: dict = {}
        for a, x in p.items():
            for b, y in q.items():
                s, w = self.mul_words(a, b)
                if s:
                    vadd(out, {w: x * y}, s)
        return out

    def d_word(self, w: tuple) -> dict:
        """Differential of a monomial as a polynomial, by the Leibniz rule."""
        if w in self._dword:
            return self._dword[w]
        g, rest = w[0], w[1:]
        out = self.poly_mul(self._dgen[g], {rest: 1})
        if rest:
            sign = -1 if self.gen_degrees[g] % 2 else 1
            vadd(out, self.poly_mul({(g,): 1}, self.d_word(rest)), sign)
        self._dword[w] = out
        return out

    def poly_to_vector(self, p: Mapping, k: int | None = None) -> tuple:
        """(degree, sparse vector) of a homogeneous polynomial."""
        if not p:
            return (k if k is not None else 0), {}
        degs = {self.word_degree(w) for w in p}
        if len(degs) != 1:
            raise DegreeMismatch("polynomial is not homogeneous")
        kk = degs.pop()
        if k is not None and kk != k:
            raise DegreeMismatch(f"polynomial has degree {kk}, expected {k}")
        self._check_degree(kk)
        idx = self._index[kk]
        return kk, {idx[w]: Fraction(c) for w, c in p.items()}

    def _mul_basis(self, ka, i, kb, j):
        s, w = self.mul_words(self._bases[ka][i], self._bases[kb][j])
        if not s:
            return {}
        return {self._index[ka + kb][w]: Fraction(s)}

    def _d_basis(self, k, i):
        p = self.d_word(self._bases[k][i])
        idx = self._index[k + 1]
        return {idx[w]: Fraction(c) for w, c in p.items()}

    def cohomology_limit(self) -> int:
        return self.cap - 1

    def gen(self, name: str) -> Element:
        g = self.gen_index[name]
        k = self.gen_degrees[g]
        self._check_degree(k)
        return Element(self, k, {self._index[k][(g,)]: Fraction(1)})

    def poly(self, text: str, degree: int | None = None) -> Element:
        """Element from polynomial text such as ``2*x1*y12 - 1/3*x2*y11``."""
        p = self.poly_from_terms(parse_terms(text))
        k, v = self.poly_to_vector(p, degree)
        return Element(self, k, v)

    def gen_differential(self, name: str) -> dict:
        return dict(self._dgen[self.gen_index[name]])

    def differential_terms(self, name: str) -> list:
        """[(coeff, [names])] for d(name), in basis order."""
        p = self._dgen[self.gen_index[name]]
        return [(c, [self.generators[g][0] for g in w]) for w, c in sorted(p.items())]

    def check_square_zero(self):
        for g, (name, k) in enumerate(self.generators):
            dd: dict = {}
            for w, c in self._dgen[g].items():
                vadd(dd, self.d_word(w), c)
            if dd:
                raise NotASquareZeroDifferential(f"d(d{name}) ≠ 0")

    def __eq__(self, other):
        if not isinstance(other, SullivanModel):
            return NotImplemented
        return (self.name, self.cap, self.generators, self._dgen, self.orientation) == \
            (other.name, other.cap, other.generators, other._dgen, other.orientation)

    __hash__ = None


# -- algebras with an explicit basis --------------------------------------

class ExplicitBasisModel(DGA):
    """DGA given by basis labels per degree, structure constants and d.

    ``products`` maps pairs of labels to {label: coeff}; the unit "1" is
    implicit and missing pairs multiply to zero.  The opposite order is
    filled in by graded commutativity.  ``differential`` maps a label to
    {label: coeff}.
    """

    def __init__(self, basis: Mapping, products: Mapping | None = None, differential: Mapping | None = None,
                 name: str = "", orientation=None, check: bool = True):
        self.name = name
        self.orientation = orientation
        basis = {int(k): list(v) for k, v in basis.items() if v}
        if 0 in basis and basis[0] != ["1"]:
            raise StructureCheckFailed("degree 0 must be spanned by the unit '1'")
        basis[0] = ["1"]
        self.cap = max(basis)
        self._labels = {k: tuple(basis.get(k, [])) for k in range(self.cap + 1)}
        self.where: dict = {}
        for k, labs in self._labels.items():
            for i, lab in enumerate(labs):
                if lab in self.where:
                    raise StructureCheckFailed(f"duplicate basis label {lab!r}")
                self.where[lab] = (k, i)
        self._prod: dict = {}
        for (a, b), val in (products or {}).items():
            ka, i = self._locate(a)
            kb, j = self._locate(b)
            vec = self._vec(val, ka + kb, f"{a}*{b}")
            for key, v in (((ka, i, kb, j), vec), ((kb, j, ka, i), vscale(vec, -1 if (ka * kb) % 2 else 1))):
                if key in self._prod and self._prod[key] != v:
                    raise StructureCheckFailed(f"inconsistent products given for {a}, {b}")
                self._prod[key] = v
        self._dmap: dict = {}
        for a, val in (differential or {}).items():
            ka, i = self._locate(a)
            self._dmap[(ka, i)] = self._vec(val, ka + 1, f"d{a}")
        if self._dmap.get((0, 0)):
            raise StructureCheckFailed("d(1) must vanish")
        if check:
            self.check_structure()

    def _locate(self, lab):
        if lab not in self.where:
            raise StructureCheckFailed(f"unknown basis label {lab!r}")
        return self.where[lab]

    def _vec(self, val: Mapping, k: int, what: str) -> dict:
        out: dict = {}
        for lab, c in val.items():
            if not c:
                continue
            kk, i = self._locate(lab)
            if kk != k:
                raise DegreeMismatch(f"{what} has a term {lab} of degree {kk}, expected {k}")
            vadd(out, {i: Fraction(c)})
        return out

    def dim(self, k):
        return len(self._labels.get(k, ()))

    def _check_degree(self, k):
        if k < 0:
            raise ValueError("negative degree")

    def labels(self, k):
        return list(self._labels.get(k, ()))

    def _mul_basis(self, ka, i, kb, j):
        if ka == 0:
            return {j: Fraction(1)} if kb <= self.cap else {}
        if kb == 0:
            return {i: Fraction(1)}
        return dict(self._prod.get((ka, i, kb, j), {}))

    def _d_basis(self, k, i):
        return dict(self._dmap.get((k, i), {}))

    def mul(self, ka, a, kb, b):
        if ka + kb > self.cap:
            return {}
        return super().mul(ka, a, kb, b)

    def d(self, k, a):
        if k + 1 > self.cap:
            return {}
        return super().d(k, a)

    def cohomology_limit(self) -> int:
        # a finite algebra: everything above the top degree is zero
        return UNBOUNDED

    def d_matrix(self, k):
        cache = self.__dict__.setdefault("_dmat_cache", {})
        if k not in cache:
            cols = [self._d_basis(k, i) for i in range(self.dim(k))] if k >= 0 else []
            cache[k] = QMatrix.from_sparse_columns(cols, self.dim(k + 1))
        return cache[k]

    def basis_element(self, label: str) -> Element:
        k, i = self._locate(label)
        return Element(self, k, {i: Fraction(1)})

    def vector_from_text(self, text: str) -> Element:
        """Element from a linear combination of basis labels."""
        out: dict = {}
        deg = None
        for c, names in parse_terms(text):
            if len(names) > 1:
                raise ValueError("products are not allowed in a linear combination of basis labels")
            k, i = self._locate(names[0]) if names else (0, 0)
            if deg is not None and k != deg:
                raise DegreeMismatch("linear combination is not homogeneous")
            deg = k
            vadd(out, {i: c})
        return Element(self, deg or 0, out)

    def product_table(self) -> list:
        """[(a, b, {label: coeff})] for a ≤ b in basis order, nonzero only."""
        out = []
        order = [(k, i) for k in range(1, self.cap + 1) for i in range(self.dim(k))]
        for x, (ka, i) in enumerate(order):
            for kb, j in order[x:]:
                v = self._prod.get((ka, i, kb, j))
                if v:
                    labs = self._labels[ka + kb]
                    out.append((self._labels[ka][i], self._labels[kb][j], {labs[t]: c for t, c in sorted(v.items())}))
        return out

    def differential_table(self) -> list:
        out = []
        for k in range(self.cap + 1):
            for i in range(self.dim(k)):
                v = self._dmap.get((k, i))
                if v:
                    labs = self._labels[k + 1]
                    out.append((self._labels[k][i], {labs[t]: c for t, c in sorted(v.items())}))
        return out

    def __eq__(self, other):
        if not isinstance(other, ExplicitBasisModel):
            return NotImplemented
        return (self.name, self._labels, self._prod, self._dmap, self.orientation) == \
            (other.name, other._labels, other._prod, other._dmap, other.orientation)

    __hash__ = None


def monomial_basis(dga: DGA, k: int) -> list:
    if isinstance(dga, SullivanModel):
        return dga.monomial_basis(k)
    return dga.labels(k)


def multiply(a: Element, b: Element) -> Element:
    return a * b


def differential(a: Element) -> Element:
    return a.d()


# -- cohomology -----------------------------------------------------------

class Cohomology:
    """Cohomology of a DGA, computed degree by degree on demand.

    Representatives are the reduced echelon basis of the cocycles reduced
    modulo coboundaries; this fixes the section alpha.  Classes are named
    ``h<degree>_<index>``.
    """

    def __init__(self, dga: DGA):
        self.dga = dga
        self.limit = dga.cohomology_limit()
        self.top = min(self.limit, dga.cap)  # no classes above this degree
        self._cache: dict = {}
        self._space = None

    def _data(self, k: int):
        if k > self.limit:
            raise DegreeCapExceeded(f"cohomology in degree {k} needs data beyond the cap {self.dga.cap}")
        if k < 0:
            raise ValueError("negative degree")
        if k not in self._cache:
            n = self.dga.dim(k) if k <= self.dga.cap else 0
            Z = kernel_basis(self.dga.d_matrix(k)) if n else SubspaceBasis(0)
            B = image_basis(self.dga.d_matrix(k - 1)) if k > 0 and n else SubspaceBasis(n)
            reduced = [dense(B.reduce(z), n) for z in Z.basis]
            reps = SubspaceBasis(n, reduced)
            self._cache[k] = (Z, B, reps)
        return self._cache[k]

    def cocycles(self, k) -> SubspaceBasis:
        return self._data(k)[0]

    def coboundaries(self, k) -> SubspaceBasis:
        return self._data(k)[1]

    def betti(self, k: int) -> int:
        return self._data(k)[2].dim

    def betti_numbers(self, through: int | None = None) -> dict:
        top = self.top if through is None else through
        return {k: self.betti(k) for k in range(top + 1)}

    def labels(self, k: int) -> list:
        return [f"h{k}_{i}" for i in range(self.betti(k))]

    def representative(self, k: int, i: int) -> dict:
        return sparse(self._data(k)[2].basis[i])

    def representatives(self, k: int) -> list:
        return [sparse(v) for v in self._data(k)[2].basis]

    def classify(self, k: int, z: Mapping, check_closed: bool = True) -> tuple:
        """Coordinates of the class of a cocycle z in degree k."""
        Z, B, reps = self._data(k)
        if k > self.dga.cap:
            return ()
        if check_closed and k + 1 <= self.dga.cap and self.dga.d(k, z):
            raise NotClosed(f"element of degree {k} is not closed")
        r = B.reduce(dense(z, self.dga.dim(k))) if z else {}
        return tuple(Fraction(r.get(p, 0)) for p in reps.pivots)

    def lift(self, k: int, coords: Sequence) -> dict:
        """alpha: class coordinates -> representative cocycle."""
        out: dict = {}
        reps = self._data(k)[2].basis
        for c, v in zip(coords, reps):
            if c:
                vadd(out, sparse(v), c)
        return out

    def cup(self, ka: int, u: Sequence, kb: int, v: Sequence) -> tuple:
        k = ka + kb
        if k > self.limit:
            raise DegreeCapExceeded(f"product lands in degree {k}, beyond the known cohomology")
        prod = self.dga.mul(ka, self.lift(ka, u), kb, self.lift(kb, v))
        return self.classify(k, prod, check_closed=False)

    def space(self) -> "ClassSpace":
        if self._space is None:
            self._space = ClassSpace(self)
        return self._space

    def E(self, k: int) -> SubspaceBasis:
        return self.space().E(k)


class ClassSpace:
    """Reduced cohomology H^{>0} through the cohomology limit, as one graded space.

    Global class indices run over degrees in increasing order.  Also caches
    the degree pieces of the graded-symmetric square and of E.
    """

    def __init__(self, coh: Cohomology):
        self.coh = coh
        degs, labels, locate = [], [], []
        for k in range(1, coh.top + 1):
            for i in range(coh.betti(k)):
                degs.append(k)
                labels.append(f"h{k}_{i}")
                locate.append((k, i))
        self.space = GradedVectorSpace(tuple(degs), tuple(labels))
        self.degrees = tuple(degs)
        self.locate = tuple(locate)
        self.index = {kl: g for g, kl in enumerate(locate)}
        self._g2: dict = {}
        self._E: dict = {}
        self._ebasis: dict = {}

    @property
    def dim(self):
        return len(self.degrees)

    def in_degree(self, k: int) -> list:
        return [g for g, d in enumerate(self.degrees) if d == k]

    def unit_vector(self, g: int) -> tuple:
        k, i = self.locate[g]
        return tuple(Fraction(int(t == i)) for t in range(self.coh.betti(k)))

    def g2(self, k: int) -> tuple:
        """Sorted pairs (g1, g2) spanning the graded-symmetric square in degree k."""
        if k not in self._g2:
            pairs = []
            for a in range(self.dim):
                for b in range(a, self.dim):
                    if self.degrees[a] + self.degrees[b] == k and normalize(GRADED_SYMMETRIC, (a, b), self.degrees)[0]:
                        pairs.append((a, b))
            self._g2[k] = (tuple(pairs), {p: i for i, p in enumerate(pairs)})
        return self._g2[k]

    def product_of_pair(self, pair) -> tuple:
        a, b = pair
        ka, i = self.locate[a]
        kb, j = self.locate[b]
        return self.coh.cup(ka, self.unit_vector(a), kb, self.unit_vector(b))

    def E(self, k: int) -> SubspaceBasis:
        """Kernel of the product from the degree-k square to H^k."""
        if k not in self._E:
            pairs, _ = self.g2(k)
            if not pairs:
                self._E[k] = SubspaceBasis(0)
            elif k > self.coh.limit:
                raise DegreeCapExceeded(f"E in degree {k} needs cohomology beyond the cap")
            else:
                cols = [self.product_of_pair(p) for p in pairs]
                m = QMatrix.from_columns(cols, self.coh.betti(k)) if self.coh.betti(k) else QMatrix.zeros(0, len(pairs))
                self._E[k] = kernel_basis(m)
        return self._E[k]

    def e_vectors(self, k: int) -> list:
        """E basis in degree k as sparse dicts {pair: coeff}."""
        if k not in self._ebasis:
            pairs, _ = self.g2(k)
            self._ebasis[k] = [{pairs[t]: c for t, c in enumerate(v) if c} for v in self.E(k).basis]
        return self._ebasis[k]

    def e_degrees(self, upto: int) -> list:
        return [k for k in range(2, upto + 1) if self.g2(k)[0] and self.E(k).dim]


def cohomology(dga: DGA) -> Cohomology:
    return Cohomology(dga)


def cup_product(coh: Cohomology, ka: int, u: Sequence, kb: int, v: Sequence) -> tuple:
    return coh.cup(ka, u, kb, v)


def e_kernel(coh: Cohomology, k: int) -> SubspaceBasis:
    return coh.E(k)


# -- cochain choices ------------------------------------------------------

CANONICAL = "canonical"
VANISHING_TRIPLE = "vanishing-triple"
USER_PERTURBED = "user-perturbed"


class CochainChoice:
    """A cocycle section alpha with a prederivative gamma of alpha² on E.

    ``alpha(k)`` lists representatives for the degree-k classes, ``gamma(k)``
    lists values (in degree k-1) on the E basis in degree k.  Both are
    computed lazily per degree and then frozen.
    """

    def __init__(self, coh: Cohomology, alpha_fn: Callable, gamma_fn: Callable | None = None,
                 provenance: str = CANONICAL):
        self.coh = coh
        self.dga = coh.dga
        self.provenance = provenance
        self._alpha_fn = alpha_fn
        self._gamma_fn = gamma_fn
        self._alpha: dict = {}
        self._gamma: dict = {}

    @classmethod
    def canonical(cls, coh: Cohomology) -> "CochainChoice":
        return cls(coh, lambda k: coh.representatives(k), None, CANONICAL)

    def alpha(self, k: int) -> list:
        if k not in self._alpha:
            vals = [dict(v) for v in self._alpha_fn(k)]
            if len(vals) != self.coh.betti(k):
                raise InconsistentModel("alpha must give one value per class")
            self._alpha[k] = vals
        return self._alpha[k]

    def alpha_class(self, g: int) -> tuple:
        """(degree, cocycle) for the global class index g."""
        k, i = self.coh.space().locate[g]
        return k, self.alpha(k)[i]

    def alpha_of(self, k: int, coords: Sequence) -> dict:
        out: dict = {}
        for c, v in zip(coords, self.alpha(k)):
            if c:
                vadd(out, v, c)
        return out

    def alpha_sq(self, k: int, e: Mapping) -> dict:
        """alpha² evaluated on a degree-k element {pair: coeff} of the square."""
        out: dict = {}
        for (a, b), c in e.items():
            ka, va = self.alpha_class(a)
            kb, vb = self.alpha_class(b)
            vadd(out, self.dga.mul(ka, va, kb, vb), c)
        return out

    def gamma(self, k: int) -> list:
        if k not in self._gamma:
            sp = self.coh.space()
            if self._gamma_fn is None:
                vals = prederivative_gamma(self, k)
            else:
                vals = [dict(v) for v in self._gamma_fn(k)]
            if len(vals) != len(sp.e_vectors(k)):
                raise InconsistentModel("gamma must give one value per E basis vector")
            self._gamma[k] = vals
        return self._gamma[k]

    def gamma_of(self, k: int, ecoords: Sequence) -> dict:
        out: dict = {}
        for c, v in zip(ecoords, self.gamma(k)):
            if c:
                vadd(out, v, c)
        return out

    def verify(self, k: int) -> bool:
        """Check d(gamma(e)) = alpha²(e) on the E basis in degree k."""
        sp = self.coh.space()
        for e, g in zip(sp.e_vectors(k), self.gamma(k)):
            if self.dga.d(k - 1, g) != self.alpha_sq(k, e):
                return False
        for v in self.alpha(k) if k <= self.coh.limit else []:
            if k + 1 <= self.dga.cap and self.dga.d(k, v):
                return False
        return True

    def with_gamma_shift(self, eta: Callable | Mapping, provenance: str = USER_PERTURBED) -> "CochainChoice":
        """(alpha, gamma + eta) for eta closed, given per E-degree."""
        get = eta if callable(eta) else (lambda k: eta.get(k))
        base = self

        def gamma_fn(k):
            shift = get(k)
            vals = [dict(v) for v in base.gamma(k)]
            if shift:
                for v, s in zip(vals, shift):
                    if s and k - 1 + 1 <= base.dga.cap and base.dga.d(k - 1, s):
                        raise NotClosed("gamma shift must be closed")
                    vadd(v, s)
            return vals

        return CochainChoice(self.coh, lambda k: base.alpha(k), gamma_fn, provenance)

    def with_alpha_shift(self, beta: Callable | Mapping, provenance: str = USER_PERTURBED) -> "CochainChoice":
        """alpha' = alpha + d beta and gamma' = gamma + beta(alpha + ½ d beta) on E."""
        get = beta if callable(beta) else (lambda k: beta.get(k))
        base = self
        dga = self.dga

        def beta_of(k):
            b = get(k)
            return [dict(v) for v in b] if b else [{} for _ in range(self.coh.betti(k))]

        def alpha_fn(k):
            return [vadd(dict(a), dga.d(k - 1, b)) if b else dict(a) for a, b in zip(base.alpha(k), beta_of(k))]

        def gamma_fn(k):
            sp = base.coh.space()
            vals = [dict(v) for v in base.gamma(k)]
            for v, e in zip(vals, sp.e_vectors(k)):
                vadd(v, beta_phi(base, beta_of, e))
            return vals

        return CochainChoice(self.coh, alpha_fn, gamma_fn, provenance)


def beta_phi(choice: CochainChoice, beta_of: Callable, e: Mapping) -> dict:
    """beta(alpha + ½ d beta) on an element of the square:
    (x, y) -> beta(x) phi(y) + (-1)^{|x||y|} beta(y) phi(x)."""
    dga = choice.dga
    sp = choice.coh.space()
    out: dict = {}

    def phi(g):
        k, i = sp.locate[g]
        b = beta_of(k)[i]
        v = dict(choice.alpha(k)[i])
        if b:
            vadd(v, dga.d(k - 1, b), Fraction(1, 2))
        return k, v

    for (a, b), c in e.items():
        ka, ia = sp.locate[a]
        kb, ib = sp.locate[b]
        ba, bb = beta_of(ka)[ia], beta_of(kb)[ib]
        _, pa = phi(a)
        _, pb = phi(b)
        if ba:
            vadd(out, dga.mul(ka - 1, ba, kb, pb), c)
        if bb:
            vadd(out, dga.mul(kb - 1, bb, ka, pa), c * (-1 if (ka * kb) % 2 else 1))
    return out


def prederivative_gamma(choice: CochainChoice, k: int) -> list:
    """gamma on the E basis in degree k with d gamma = alpha², free variables zero."""
    sp = choice.coh.space()
    dga = choice.dga
    vals = []
    es = sp.e_vectors(k)
    if not es:
        return []
    m = dga.d_matrix(k - 1)
    for e in es:
        target = choice.alpha_sq(k, e)
        x = solve_particular(m, dense(target, dga.dim(k)))
        if x is None:
            raise InconsistentModel(f"alpha² is not exact on an E vector in degree {k}")
        vals.append(sparse(x))
    return vals


# -- products of algebra-valued maps --------------------------------------

class MapIntoAlgebra:
    """Linear map from a graded power of a space V into a DGA, raising degree by ``shift``.

    ``values`` maps basis keys of the power (sorted index tuples) to sparse
    vectors in the DGA.
    """

    def __init__(self, dga: DGA, V: GradedVectorSpace, kind: str, power: int, shift: int, values: Mapping):
        if kind not in (GRADED_SYMMETRIC, GRADED_ANTISYMMETRIC):
            raise ValueError("maps are defined on graded-symmetric or graded-antisymmetric powers")
        self.dga, self.V, self.kind, self.power, self.shift = dga, V, kind, power, shift
        self.basis = power_basis(V, kind, power)
        self.values = {k: dict(v) for k, v in values.items() if v}
        for k in self.values:
            if k not in self.basis.index:
                raise ValueError(f"{k} is not a basis key")

    def degree_of(self, key) -> int:
        return self.basis.degree_of(key) + self.shift

    def evaluate(self, idx: Sequence[int]) -> dict:
        """Value on the class of the tensor e_idx (any order)."""
        s, key = normalize(self.kind, idx, self.V.degrees)
        if not s:
            return {}
        return vscale(self.values.get(key, {}), s)

    def __eq__(self, other):
        if not isinstance(other, MapIntoAlgebra):
            return NotImplemented
        return (self.kind, self.power, self.shift, self.values) == (other.kind, other.power, other.shift, other.values)

    __hash__ = None

    def scale(self, c) -> "MapIntoAlgebra":
        return MapIntoAlgebra(self.dga, self.V, self.kind, self.power, self.shift,
                              {k: vscale(v, c) for k, v in self.values.items()})

    def __add__(self, other):
        vals = {k: dict(v) for k, v in self.values.items()}
        for k, v in other.values.items():
            vadd(vals.setdefault(k, {}), v)
        return MapIntoAlgebra(self.dga, self.V, self.kind, self.power, self.shift, vals)

    def __sub__(self, other):
        return self + other.scale(-1)

    def differential(self) -> "MapIntoAlgebra":
        vals = {k: self.dga.d(self.degree_of(k), v) for k, v in self.values.items()}
        return MapIntoAlgebra(self.dga, self.V, self.kind, self.power, self.shift + 1, vals)


def _product(f: MapIntoAlgebra, g: MapIntoAlgebra, kind: str) -> MapIntoAlgebra:
    if f.V != g.V or f.dga is not g.dga:
        raise ValueError("maps must share their source space and target algebra")
    if f.kind != kind or g.kind != kind:
        raise ValueError(f"both maps must be defined on {kind} powers")
    p, q = f.power, g.power
    n = p + q
    degs = f.V.degrees
    dga = f.dga
    anti = kind == GRADED_ANTISYMMETRIC
    norm = Fraction(1, math.factorial(p) * math.factorial(q))
    target = power_basis(f.V, kind, n)
    values = {}
    for key in target.elements:
        out: dict = {}
        for perm in itertools.permutations(range(n)):
            word = [key[t] for t in perm]
            # sign of moving e_key into the order e_word
            sign = _perm_sign(key, perm, degs, anti)
            first, second = word[:p], word[p:]
            sign *= -1 if (g.shift * sum(degs[t] for t in first)) % 2 else 1
            fv = f.evaluate(first)
            gv = g.evaluate(second)
            if fv and gv:
                kf = sum(degs[t] for t in first) + f.shift
                kg = sum(degs[t] for t in second) + g.shift
                vadd(out, dga.mul(kf, fv, kg, gv), sign * norm)
        if out:
            values[key] = out
    return MapIntoAlgebra(dga, f.V, kind, n, f.shift + g.shift, values)


def _perm_sign(key, perm, degs, anti) -> int:
    """Koszul sign relating e_key to the reordered tensor e_{key∘perm}."""
    sign = 1
    n = len(perm)
    for a in range(n):
        for b in range(a + 1, n):
            if perm[a] > perm[b]:
                if (degs[key[perm[a]]] * degs[key[perm[b]]]) % 2:
                    sign = -sign
                if anti:
                    sign = -sign
    return sign


def map_sym_product(f: MapIntoAlgebra, g: MapIntoAlgebra) -> MapIntoAlgebra:
    return _product(f, g, GRADED_SYMMETRIC)


def map_alt_product(f: MapIntoAlgebra, g: MapIntoAlgebra) -> MapIntoAlgebra:
    return _product(f, g, GRADED_ANTISYMMETRIC)


def map_power(f: MapIntoAlgebra, p: int) -> MapIntoAlgebra:
    """f^p = (f f ... f) / p!, the convention under which f f = 2 f²."""
    if p < 1:
        raise ValueError("power must be positive")
    out = f
    for _ in range(p - 1):
        out = _product(out, f, f.kind)
    return out.scale(Fraction(1, math.factorial(p)))


def alpha_as_map(choice: CochainChoice, V: GradedVectorSpace | None = None) -> MapIntoAlgebra:
    """The section alpha as a map on the first power of the class space."""
    sp = choice.coh.space()
    vals = {(g,): choice.alpha_class(g)[1] for g in range(sp.dim)}
    return MapIntoAlgebra(choice.dga, V or sp.space, GRADED_SYMMETRIC, 1, 0, vals)


# -- morphisms ------------------------------------------------------------

@dataclass
class DGAMorphism:
    """Algebra map given on generators (Sullivan source) or basis labels."""

    source: DGA
    target: DGA
    images: dict  # name -> Element of the target

    def __post_init__(self):
        src = self.source
        if isinstance(src, SullivanModel):
            for name, k in src.generators:
                img = self.images.get(name)
                if img is None:
                    self.images[name] = self.target.zero(k)
                elif img.coeffs and img.degree != k:
                    raise NotAMorphism(f"image of {name} has degree {img.degree}, expected {k}")
            for name, k in src.generators:
                if k + 1 > min(src.cap, self.target.cap):
                    continue
                lhs = self.apply_poly(src.gen_differential(name), k + 1)
                rhs = self.images[name].d()
                if lhs != rhs:
                    raise NotAMorphism(f"f(d{name}) ≠ d f({name})")
        else:
            for k in range(1, src.cap + 1):
                for lab in src.labels(k):
                    img = self.images.get(lab)
                    if img is None:
                        self.images[lab] = self.target.zero(k)
                    elif img.coeffs and img.degree != k:
                        raise NotAMorphism(f"image of {lab} has degree {img.degree}, expected {k}")
            for k in range(0, src.cap + 1):
                for i in range(src.dim(k)):
                    x = src.element(k, {i: 1})
                    if self.apply(x.d()) != self.apply(x).d():
                        raise NotAMorphism(f"d-compatibility fails on {src.labels(k)[i]}")
                    for kb in range(1, src.cap + 1 - k):
                        for j in range(src.dim(kb)):
                            y = src.element(kb, {j: 1})
                            if self.apply(x * y) != self.apply(x) * self.apply(y):
                                raise NotAMorphism("map is not multiplicative")

    def apply_poly(self, p: Mapping, k: int) -> Element:
        out = self.target.zero(k)
        src = self.source
        for w, c in p.items():
            term = self.target.unit()
            for g in w:
                term = term * self.images[src.generators[g][0]]
            if term.coeffs:
                out = out + term * c
        return Element(self.target, k, out.coeffs)

    def apply(self, x: Element) -> Element:
        src = self.source
        if isinstance(src, SullivanModel):
            basis = src.monomial_basis(x.degree)
            return self.apply_poly({basis[i]: c for i, c in x.coeffs.items()}, x.degree)
        out: dict = {}
        labs = src.labels(x.degree)
        for i, c in x.coeffs.items():
            if x.degree == 0:
                vadd(out, {0: 1}, c)
            else:
                vadd(out, self.images[labs[i]].coeffs, c)
        return Element(self.target, x.degree, out)


def apply_morphism(f: DGAMorphism, x: Element) -> Element:
    return f.apply(x)


def induced_cohomology_map(f: DGAMorphism, through: int | None = None,
                           source_coh: Cohomology | None = None, target_coh: Cohomology | None = None) -> dict:
    """Matrices of H^k(f) for k up to ``through`` (default: the common limit)."""
    cs = source_coh or Cohomology(f.source)
    ct = target_coh or Cohomology(f.target)
    top = min(cs.top, ct.top) if through is None else through
    out = {}
    for k in range(top + 1):
        cols = []
        for z in cs.representatives(k):
            img = f.apply(Element(f.source, k, z))
            cols.append(ct.classify(k, img.coeffs))
        out[k] = QMatrix.from_columns(cols, ct.betti(k)) if cols else QMatrix.zeros(ct.betti(k), 0)
    return out


__all__ = [
    "DGA", "Element", "SullivanModel", "ExplicitBasisModel", "Cohomology", "ClassSpace", "CochainChoice",
    "MapIntoAlgebra", "DGAMorphism", "DegreeCapExceeded", "StructureCheckFailed", "DegreeMismatch",
    "NotASquareZeroDifferential", "NotAMorphism", "NotClosed", "InconsistentModel",
    "CANONICAL", "VANISHING_TRIPLE", "USER_PERTURBED",
    "parse_terms", "format_terms", "format_rational", "monomial_basis", "multiply", "differential",
    "cohomology", "cup_product", "e_kernel", "prederivative_gamma", "beta_phi",
    "map_sym_product", "map_alt_product", "map_power", "alpha_as_map",
    "apply_morphism", "induced_cohomology_map", "vadd", "vscale", "dense", "sparse",
]
