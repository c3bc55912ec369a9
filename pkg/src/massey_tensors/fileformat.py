"""Text format for DGA models.

Directives, one per line (``#`` starts a comment)::

    name <string>      (the rest of the line, ``#`` included)
    cap <int>
    gen <ident> <degree>
    diff <ident> = <polynomial>
    orient <degree> [<class expression>]
    basis <degree> <label> <label> ...
    product <label> <label> = <linear combination>
    dmatrix <label> = <linear combination>

``gen``/``diff`` describe a free model truncated at ``cap``; ``basis``,
``product`` and ``dmatrix`` describe an algebra by structure constants
(``dmatrix`` gives one column of the differential).  Polynomials are sums
of terms ``c * g1 * g2`` with ``c`` an integer or ``p/q``.  The optional
class expression of ``orient`` gives the orientation functional in the
dual basis of the top classes (default: 1 on ``h<degree>_0``).
"""
from __future__ import annotations

import re
from fractions import Fraction

from .dga import (
    DegreeMismatch,
    ExplicitBasisModel,
    NotASquareZeroDifferential,
    StructureCheckFailed,
    SullivanModel,
    format_rational,
    format_terms,
    parse_terms,
)

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_CLASS = re.compile(r"^h(\d+)_(\d+)$")


class ModelSyntaxError(SyntaxError):
    def __init__(self, message, lineno=None):
        super().__init__(f"line {lineno}: {message}" if lineno else message)
        self.lineno = lineno

    def __str__(self):
        return self.msg


def parse_class_expression(text: str, betti=None) -> tuple:
    """``2*h8_0 - h8_1`` -> (degree, coordinates); ``betti`` maps degree -> dimension."""
    terms = parse_terms(text)
    deg = None
    coords: dict = {}
    for c, names in terms:
        if len(names) != 1 or not _CLASS.match(names[0]):
            raise ValueError(f"expected a combination of classes h<degree>_<index>, got {text!r}")
        k, i = map(int, _CLASS.match(names[0]).groups())
        if deg is not None and k != deg:
            raise ValueError("class expression mixes degrees")
        deg = k
        coords[i] = coords.get(i, 0) + c
    n = betti(deg) if betti is not None else (max(coords) + 1 if coords else 0)
    if coords and max(coords) >= n:
        raise ValueError(f"class index out of range in degree {deg} (dimension {n})")
    return deg, tuple(Fraction(coords.get(i, 0)) for i in range(n))


def parse(text: str):
    """Parse model text into a SullivanModel or ExplicitBasisModel."""
    name, cap, orient = "", None, None
    gens, diffs, diff_lines = [], {}, {}
    basis, products, dmap = {}, {}, {}
    explicit_lines, free_lines = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.strip().startswith("name "):
            name = raw.strip()[5:].strip()
            continue
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if head == "name":
                name = rest
            elif head == "cap":
                cap = int(rest)
                if cap < 0:
                    raise ValueError("cap must be non-negative")
            elif head == "gen":
                parts = rest.split()
                if len(parts) != 2 or not _IDENT.match(parts[0]):
                    raise ValueError("expected 'gen <ident> <degree>'")
                gens.append((parts[0], int(parts[1])))
                free_lines.append(lineno)
            elif head == "diff":
                lhs, eq, rhs = rest.partition("=")
                g = lhs.strip()
                if not eq or not _IDENT.match(g):
                    raise ValueError("expected 'diff <ident> = <polynomial>'")
                if g in diffs:
                    raise ValueError(f"second differential for {g}")
                diffs[g] = parse_terms(rhs)
                diff_lines[g] = lineno
                free_lines.append(lineno)
            elif head == "orient":
                parts = rest.split(None, 1)
                if not parts:
                    raise ValueError("expected 'orient <degree> [<class expression>]'")
                orient = (int(parts[0]), parts[1].strip() if len(parts) > 1 else None, lineno)
            elif head == "basis":
                parts = rest.split()
                if len(parts) < 2:
                    raise ValueError("expected 'basis <degree> <label> ...'")
                k = int(parts[0])
                for lab in parts[1:]:
                    if not _IDENT.match(lab) and lab != "1":
                        raise ValueError(f"bad label {lab!r}")
                basis.setdefault(k, []).extend(parts[1:])
                explicit_lines.append(lineno)
            elif head == "product":
                lhs, eq, rhs = rest.partition("=")
                labs = lhs.replace("*", " ").split()
                if not eq or len(labs) != 2:
                    raise ValueError("expected 'product <a> <b> = <combination>'")
                products[(labs[0], labs[1])] = _combination(rhs)
                explicit_lines.append(lineno)
            elif head == "dmatrix":
                lhs, eq, rhs = rest.partition("=")
                if not eq:
                    raise ValueError("expected 'dmatrix <label> = <combination>'")
                dmap[lhs.strip()] = _combination(rhs)
                explicit_lines.append(lineno)
            else:
                raise ValueError(f"unknown directive {head!r}")
        except (ValueError, ZeroDivisionError) as exc:
            raise ModelSyntaxError(str(exc), lineno) from None
    if free_lines and explicit_lines:
        raise ModelSyntaxError("a model uses either gen/diff or basis/product/dmatrix, not both",
                               max(min(free_lines), min(explicit_lines)))
    orientation = None
    if free_lines:
        base = SullivanModel(gens, {}, cap=cap if cap is not None else 10, name=name, check=False)
        for g, terms in diffs.items():
            if g not in base.gen_index:
                raise ModelSyntaxError(f"differential of unknown generator {g!r}", diff_lines[g])
            try:
                p = base.poly_from_terms(terms)
            except StructureCheckFailed as exc:
                raise ModelSyntaxError(str(exc), diff_lines[g]) from None
            want = base.gen_degrees[base.gen_index[g]] + 1
            for w in p:
                if base.word_degree(w) != want:
                    raise DegreeMismatch(f"line {diff_lines[g]}: d{g} has a term of degree "
                                         f"{base.word_degree(w)}, expected {want}")
        try:
            model = SullivanModel(gens, diffs, cap=base.cap, name=name)
        except NotASquareZeroDifferential as exc:
            g = str(exc).split("d(d", 1)[-1].split(")")[0]
            raise NotASquareZeroDifferential(f"line {diff_lines.get(g, '?')}: {exc}") from None
    else:
        if cap is not None and basis and cap < max(basis):
            raise ModelSyntaxError("cap below the highest basis degree", None)
        try:
            model = ExplicitBasisModel(basis, products, dmap, name=name)
        except StructureCheckFailed:
            raise
    if orient is not None:
        m, expr, lineno = orient
        try:
            if expr is None:
                orientation = (m, None)
            else:
                k, coords = parse_class_expression(expr)
                if k != m:
                    raise ValueError("orientation class has the wrong degree")
                orientation = (m, coords)
        except ValueError as exc:
            raise ModelSyntaxError(str(exc), lineno) from None
        model.orientation = _complete_orientation(model, orientation)
    return model


def _complete_orientation(model, orientation):
    m, coords = orientation
    if coords is None:
        from .dga import Cohomology

        b = Cohomology(model).betti(m) if m <= model.cohomology_limit() else 1
        coords = tuple(Fraction(int(i == 0)) for i in range(max(b, 1)))
    return (m, tuple(Fraction(c) for c in coords))


def _combination(text: str) -> dict:
    out: dict = {}
    for c, names in parse_terms(text):
        if len(names) > 1:
            raise ValueError("products are not allowed on the right-hand side")
        lab = names[0] if names else "1"
        out[lab] = out.get(lab, 0) + c
    return {k: v for k, v in out.items() if v}


def _format_combination(v: dict) -> str:
    return format_terms((c, [lab] if lab != "1" else []) for lab, c in v.items())


def serialize(model) -> str:
    lines = []
    if model.name:
        lines.append(f"name {model.name}")
    if isinstance(model, SullivanModel):
        lines.append(f"cap {model.cap}")
        for g, k in model.generators:
            lines.append(f"gen {g} {k}")
        for g, _ in model.generators:
            terms = model.differential_terms(g)
            if terms:
                lines.append(f"diff {g} = {format_terms(terms)}")
    elif isinstance(model, ExplicitBasisModel):
        for k in range(1, model.cap + 1):
            labs = model.labels(k)
            if labs:
                lines.append(f"basis {k} " + " ".join(labs))
        for a, b, v in model.product_table():
            lines.append(f"product {a} {b} = {_format_combination(v)}")
        for a, v in model.differential_table():
            lines.append(f"dmatrix {a} = {_format_combination(v)}")
    else:
        raise TypeError("unknown model type")
    if model.orientation is not None:
        m, coords = model.orientation
        expr = format_terms((c, [f"h{m}_{i}"]) for i, c in enumerate(coords))
        lines.append(f"orient {m} {expr}")
    return "\n".join(lines) + "\n"


def load(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dump(model, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(model))


def parse_map(text: str, source_betti, target_betti) -> dict:
    """Map file: ``map h2_0 = h2_1 + 2*h2_0`` lines, plus optional ``map identity``.

    Returns {degree: list of target coordinate columns}; classes without a
    line map to zero unless ``identity`` is given.
    """
    cols: dict = {}
    identity = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head != "map":
            raise ModelSyntaxError(f"unknown directive {head!r}", lineno)
        if rest.strip() == "identity":
            identity = True
            continue
        lhs, eq, rhs = rest.partition("=")
        m = _CLASS.match(lhs.strip())
        if not eq or not m:
            raise ModelSyntaxError("expected 'map h<k>_<i> = <class expression>'", lineno)
        k, i = map(int, m.groups())
        if i >= source_betti(k):
            raise ModelSyntaxError(f"no class h{k}_{i} in the source", lineno)
        try:
            kk, coords = parse_class_expression(rhs, target_betti)
        except ValueError as exc:
            raise ModelSyntaxError(str(exc), lineno) from None
        if kk is not None and kk != k:
            raise ModelSyntaxError("a class must map to a class of the same degree", lineno)
        cols[(k, i)] = coords
    return {"columns": cols, "identity": identity}


__all__ = ["parse", "serialize", "load", "dump", "parse_map", "parse_class_expression", "ModelSyntaxError",
           "format_rational"]
