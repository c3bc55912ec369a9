"""Command-line front end: one subcommand per computation.

Exit codes: 0 on success, 1 when the answer is "not applicable" or "not
defined" (a report is still printed), 2 on input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import comb

from . import invariants as inv
from .dga import Cohomology, DegreeCapExceeded, StructureCheckFailed, format_rational
from .fileformat import ModelSyntaxError, load, parse_class_expression, parse_map, serialize
from .models import p3_model, p3_model_with_h3
from .multilinear import compute_R, m_map_degree2, weyl_dim
from .qlinalg import QMatrix

OK, NOT_APPLICABLE, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def _q(x) -> str:
    return format_rational(x)


def _matrix_rows(m: QMatrix) -> list:
    return [[_q(x) for x in m.row(i)] for i in range(m.rows)]


class Report:
    """Collects human-readable lines and a structured payload."""

    def __init__(self, command: str):
        self.lines = []
        self.data = {"command": command}

    def line(self, text=""):
        self.lines.append(text)

    def render(self, machine: bool) -> str:
        if machine:
            return json.dumps(self.data, sort_keys=True, indent=2, ensure_ascii=False)
        return "\n".join(self.lines)


def _load(path):
    try:
        return load(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _coh(model):
    return Cohomology(model)


def _tensor_section(rep: Report, t: inv.TensorMap, key: str):
    comps = {}
    rep.line(f"{t.name} (choice: {t.provenance})")
    for n in t.degrees():
        c = t.components[n]
        if not c.domain.dim:
            continue
        rep.line(f"  degree {n} -> H^{c.target_degree}: domain dim {c.domain.dim}, rank {c.rank}")
        for row in _matrix_rows(c.matrix):
            rep.line("    [" + " ".join(row) + "]")
        comps[str(n)] = {"target_degree": c.target_degree, "domain_dim": c.domain.dim, "rank": c.rank,
                         "matrix": _matrix_rows(c.matrix)}
    if not comps:
        rep.line("  zero domain")
    rep.line(f"  total rank {t.rank}; {'zero' if t.is_zero() else 'nonzero'}")
    rep.data[key] = {"provenance": t.provenance, "components": comps, "rank": t.rank, "zero": t.is_zero()}


def cmd_cohomology(args, rep: Report) -> int:
    model = _load(args.file)
    coh = _coh(model)
    top = coh.top if args.through is None else args.through
    out = {}
    rep.line(f"cohomology of {model.name or args.file}")
    for k in range(top + 1):
        b = coh.betti(k)
        reps = []
        for i in range(b):
            v = coh.representative(k, i)
            reps.append(model.format_vector(k, v))
        out[str(k)] = {"betti": b, "representatives": reps}
        rep.line(f"  b_{k} = {b}")
        for i, r in enumerate(reps):
            rep.line(f"    h{k}_{i} = [{r}]")
    rep.data["degrees"] = out
    return OK


def cmd_repdim(args, rep: Report) -> int:
    r = args.rank
    if r < 1:
        raise InputError("rank must be at least 1")
    R = compute_R(r)
    m = m_map_degree2(r)
    formula = 6 * comb(r + 2, 5)
    w = weyl_dim((3, 1, 1), r)
    rep.line(f"dim R = {R.dim} (kernel of a {m.matrix.rows} x {m.matrix.cols} matrix)")
    rep.line(f"formula 6*C({r + 2},5) = {formula}: {'agrees' if formula == R.dim else 'DISAGREES'}")
    rep.line(f"Weyl module S(3,1,1) of GL_{r}: dimension {w}")
    rep.data.update({"rank": r, "dim_R": R.dim, "formula": formula, "weyl_311": int(w),
                     "agrees": formula == R.dim == w})
    return OK


def cmd_bianchi(args, rep: Report) -> int:
    coh = _coh(_load(args.file))
    t = inv.bianchi_massey(coh)
    _tensor_section(rep, t, "bianchi_massey")
    if not t.is_zero():
        rep.line("Bianchi-Massey tensor nonzero: not formal")
    return OK


def cmd_triple(args, rep: Report) -> int:
    coh = _coh(_load(args.file))
    c = inv.canonical_choice(coh)
    if args.vanish:
        found = inv.find_vanishing_triple_choice(coh)
        if found is None:
            _tensor_section(rep, inv.uniform_triple(coh, c), "uniform_triple")
            rep.line("no cochain choice makes the uniform triple product vanish")
            rep.data["vanishing_choice"] = None
            return NOT_APPLICABLE
        c = found
        rep.data["vanishing_choice"] = c.provenance
    _tensor_section(rep, inv.uniform_triple(coh, c), "uniform_triple")
    return OK


def cmd_pentagonal(args, rep: Report) -> int:
    model = _load(args.file)
    coh = _coh(model)
    t = inv.pentagonal(coh)
    _tensor_section(rep, t, "pentagonal")
    if args.canonical:
        try:
            vec = inv.canonical_element(coh)
        except inv.MissingOrientation as exc:
            rep.line(str(exc))
            rep.data["canonical_element"] = None
            return NOT_APPLICABLE
        rep.line("canonical element: [" + " ".join(_q(x) for x in vec) + "]")
        rep.data["canonical_element"] = [_q(x) for x in vec]
    return OK


def _classes(coh, text: str) -> list:
    out = []
    for part in text.split(","):
        try:
            out.append(parse_class_expression(part.strip(), coh.betti))
        except (ValueError, DegreeCapExceeded) as exc:
            raise InputError(f"bad class {part.strip()!r}: {exc}") from None
    return out


def cmd_massey4(args, rep: Report) -> int:
    coh = _coh(_load(args.file))
    xs = _classes(coh, args.classes)
    if len(xs) != 4:
        raise InputError("--classes needs four classes")
    try:
        m = inv.fourfold_massey(coh, xs)
    except inv.NotDefined as exc:
        rep.line(f"not defined: {exc}")
        rep.data["defined"] = False
        rep.data["reason"] = str(exc)
        return NOT_APPLICABLE
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep.data["defined"] = True
    rep.data["degree"] = m.degree
    rep.data["value"] = [_q(x) for x in m.value]
    rep.data["ambiguity_dim"] = m.ambiguity.dim
    rep.line(f"<x1,x2,x3,x4> in H^{m.degree}: {m.format(coh)}")
    rep.line(f"ambiguity x1 H + x4 H: dimension {m.ambiguity.dim}")
    if args.times:
        x5 = _classes(coh, args.times)
        if len(x5) != 1:
            raise InputError("--times takes one class")
        try:
            cmp = inv.compare_massey_pentagonal(coh, xs + x5)
            rep.line(f"times x5: {[_q(x) for x in cmp.massey_side]}")
            rep.line(f"pentagonal tensor on star: {[_q(x) for x in cmp.pentagonal_side]}")
            rep.line(f"equal: {cmp.equal}")
            rep.data["times"] = {"massey": [_q(x) for x in cmp.massey_side],
                                 "pentagonal": [_q(x) for x in cmp.pentagonal_side], "equal": cmp.equal}
        except inv.NotDefined as exc:
            val = inv.massey_times_fifth(coh, xs + x5)
            rep.line(f"times x5: {[_q(x) for x in val]} ({exc}; no comparison)")
            rep.data["times"] = {"massey": [_q(x) for x in val], "pentagonal": None, "equal": None}
    return OK


def cmd_formality(args, rep: Report) -> int:
    model = _load(args.file)
    v = inv.formality_verdict(_coh(model), args.conn)
    rep.data["verdict"] = v.verdict
    if isinstance(v, inv.Formal):
        rep.line("Formal: both the Bianchi-Massey and the pentagonal tensor vanish")
        rep.data["choice"] = v.choice
        return OK
    if isinstance(v, inv.NotFormal):
        n, j, i, val = v.witness
        rep.line(f"NotFormal: {v.tensor} nonzero: not formal")
        rep.line(f"  witness: domain degree {n}, basis vector {j}, target class index {i}, value {_q(val)}")
        rep.data["tensor"] = v.tensor
        rep.data["witness"] = {"degree": n, "basis_index": j, "class_index": i, "value": _q(val)}
        return OK
    rep.line(f"NotApplicable: {v.reason}")
    rep.data["reason"] = v.reason
    return NOT_APPLICABLE


def cmd_p3(args, rep: Report) -> int:
    if args.rank < 1 or (args.h3 is not None and args.h3 < 0):
        raise InputError("need --rank >= 1 and --h3 >= 0")
    model = p3_model(args.rank) if not args.h3 else p3_model_with_h3(args.rank, args.h3)
    text = serialize(model)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        rep.line(f"wrote {args.out}")
        rep.data["out"] = args.out
    else:
        rep.lines.append(text.rstrip("\n"))
        rep.data["model"] = text
    return OK


def cmd_discrepancy(args, rep: Report) -> int:
    cx, cy = _coh(_load(args.fileX)), _coh(_load(args.fileY))
    try:
        with open(args.iso, encoding="utf-8") as fh:
            iso_map = parse_map(fh.read(), cx.betti, cy.betti)
    except OSError as exc:
        raise InputError(f"cannot read {args.iso}: {exc.strerror}") from None
    F = {}
    for k in range(1, max(cx.top, cy.top) + 1):
        bx, by = cx.betti(k), cy.betti(k)
        if not bx and not by:
            continue
        cols = []
        for i in range(bx):
            col = iso_map["columns"].get((k, i))
            if col is None:
                col = tuple(Fraction(int(t == i)) for t in range(by)) if iso_map["identity"] else (Fraction(0),) * by
            cols.append(col)
        F[k] = QMatrix.from_columns(cols, by) if cols else QMatrix.zeros(by, 0)
    try:
        res = inv.pentagonal_discrepancy(cx, cy, F)
    except inv.NotAnIsomorphism as exc:
        raise InputError(f"not an algebra isomorphism: {exc}") from None
    except inv.NoIntertwiningChoices as exc:
        rep.line(f"no intertwining choices: {exc}")
        rep.data["reason"] = str(exc)
        return NOT_APPLICABLE
    out = {}
    for n, d in res.items():
        rep.line(f"degree {n}: discrepancy {'zero' if d.is_zero() else 'nonzero'} modulo a "
                 f"{d.delta_dim}-dimensional subspace (choices: {', '.join(d.provenance)})")
        for row in _matrix_rows(d.matrix):
            rep.line("    [" + " ".join(row) + "]")
        out[str(n)] = {"zero": d.is_zero(), "delta_dim": d.delta_dim, "matrix": _matrix_rows(d.matrix),
                       "class": [_q(x) for x in d.quotient]}
    rep.data["degrees"] = out
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="massey-tensors", description=__doc__.splitlines()[0])
    p.add_argument("--machine", action="store_true", help="print structured JSON output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("cohomology", help="Betti numbers and class representatives")
    s.add_argument("file")
    s.add_argument("--through", type=int)
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("repdim", help="dimension of the kernel of m for a rank-r space")
    s.add_argument("--rank", type=int, required=True)
    s.set_defaults(func=cmd_repdim)

    s = sub.add_parser("bianchi", help="Bianchi-Massey tensor")
    s.add_argument("file")
    s.set_defaults(func=cmd_bianchi)

    s = sub.add_parser("triple", help="uniform triple product")
    s.add_argument("file")
    s.add_argument("--vanish", action="store_true", help="search for a choice making it vanish")
    s.set_defaults(func=cmd_triple)

    s = sub.add_parser("pentagonal", help="pentagonal Massey tensor")
    s.add_argument("file")
    s.add_argument("--canonical", action="store_true", help="also print the canonical element")
    s.set_defaults(func=cmd_pentagonal)

    s = sub.add_parser("massey4", help="fourfold Massey product")
    s.add_argument("file")
    s.add_argument("--classes", required=True, help="four comma-separated class expressions")
    s.add_argument("--times", help="a fifth class to multiply by")
    s.set_defaults(func=cmd_massey4)

    s = sub.add_parser("formality", help="formality verdict for a Poincaré model")
    s.add_argument("file")
    s.add_argument("--conn", type=int, required=True, help="n for an (n-1)-connected model")
    s.set_defaults(func=cmd_formality)

    s = sub.add_parser("p3", help="write the P3 model")
    s.add_argument("--rank", type=int, required=True)
    s.add_argument("--h3", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_p3)

    s = sub.add_parser("discrepancy", help="pentagonal discrepancy along a cohomology isomorphism")
    s.add_argument("fileX")
    s.add_argument("fileY")
    s.add_argument("--iso", required=True)
    s.set_defaults(func=cmd_discrepancy)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    rep = Report(args.command)
    try:
        code = args.func(args, rep)
    except (InputError, ModelSyntaxError, StructureCheckFailed, DegreeCapExceeded) as exc:
        kind = type(exc).__name__
        if args.machine:
            print(json.dumps({"command": args.command, "error": kind, "message": str(exc)}, sort_keys=True))
        else:
            print(f"error ({kind}): {exc}", file=sys.stderr)
        return INPUT_ERROR
    rep.data["exit_code"] = code
    print(rep.render(args.machine))
    return code


if __name__ == "__main__":
    sys.exit(main())
