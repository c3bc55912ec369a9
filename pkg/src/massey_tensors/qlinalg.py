"""Exact linear algebra over the rationals.

Matrices are dense ``QMatrix`` objects holding :class:`fractions.Fraction`
entries.  Elimination runs on sparse row dictionaries internally because the
matrices produced by the tensor constructions are overwhelmingly zero; the
results are identical to dense Gauss-Jordan elimination with the
first-nonzero-pivot rule.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple of Fraction

__all__ = [
    "QMatrix",
    "SubspaceBasis",
    "DimensionMismatch",
    "as_fraction",
    "rref",
    "rank",
    "kernel_basis",
    "solve_particular",
    "intersect",
    "subspace_sum",
    "quotient_coords",
    "image_basis",
    "mat_vec",
    "contains",
]


class DimensionMismatch(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


class QMatrix:
    """Immutable dense matrix of rationals."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, entries: Iterable[Sequence] = (), cols: int | None = None):
        data = tuple(tuple(as_fraction(x) for x in row) for row in entries)
        if cols is None:
            cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != cols:
                raise DimensionMismatch(f"row of length {len(row)} in a matrix with {cols} columns")
        self.rows = len(data)
        self.cols = cols
        self._data = data

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        z = Fraction(0)
        return cls([[z] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "QMatrix":
        cols = len(columns)
        out = [[Fraction(0)] * cols for _ in range(rows)]
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise DimensionMismatch("column length does not match row count")
            for i, x in enumerate(col):
                if x:
                    out[i][j] = as_fraction(x)
        return cls(out, cols=cols)

    @classmethod
    def from_sparse_columns(cls, columns: Sequence[dict], rows: int) -> "QMatrix":
        cols = len(columns)
        out = [[Fraction(0)] * cols for _ in range(rows)]
        for j, col in enumerate(columns):
            for i, x in col.items():
                out[i][j] = as_fraction(x)
        return cls(out, cols=cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list:
        return [list(r) for r in self._data]

    def transpose(self) -> "QMatrix":
        return QMatrix([self.column(j) for j in range(self.cols)], cols=self.rows)

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        ocols = [other.column(j) for j in range(other.cols)]
        out = []
        for r in self._data:
            nz = [(k, x) for k, x in enumerate(r) if x]
            out.append([sum((x * c[k] for k, x in nz), Fraction(0)) for c in ocols])
        return QMatrix(out, cols=other.cols)

    def __add__(self, other: "QMatrix") -> "QMatrix":
        self._same_shape(other)
        return QMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], cols=self.cols)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        self._same_shape(other)
        return QMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], cols=self.cols)

    def scale(self, c) -> "QMatrix":
        c = as_fraction(c)
        return QMatrix([[c * a for a in r] for r in self._data], cols=self.cols)

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch")

    def is_zero(self) -> bool:
        return not any(x for r in self._data for x in r)

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return (self.rows, self.cols, self._data) == (other.rows, other.cols, other._data)

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._data)
        return f"QMatrix({self.rows}x{self.cols}: [{body}])"


def mat_vec(m: QMatrix, v: Sequence) -> Vector:
    if len(v) != m.cols:
        raise DimensionMismatch("vector length does not match column count")
    nz = [(k, as_fraction(x)) for k, x in enumerate(v) if x]
    return tuple(sum((x * m.row(i)[k] for k, x in nz), Fraction(0)) for i in range(m.rows))


# -- elimination core on sparse rows -------------------------------------

def _sparse_rows(rows: Iterable[Sequence]) -> list[dict]:
    out = []
    for r in rows:
        d = {j: as_fraction(x) for j, x in enumerate(r) if x}
        out.append(d)
    return out


def _rref_sparse(rows: list[dict], ncols: int) -> tuple[list[dict], list[int]]:
    """Gauss-Jordan on sparse rows; returns nonzero reduced rows and pivots.

    Pivot rows are normalised to leading 1 and every pivot column is cleared
    in all other rows.  Output rows are sorted by pivot column.
    """
    pivot_rows: dict[int, dict] = {}
    for row in rows:
        row = dict(row)
        # reduce against the existing pivots (forward)
        while row:
            hit = [c for c in row if c in pivot_rows]
            if not hit:
                break
            for c in hit:
                f = row.get(c)
                if not f:
                    continue
                for k, v in pivot_rows[c].items():
                    nv = row.get(k, 0) - f * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        if not row:
            continue
        p = min(row)
        inv = 1 / row[p]
        row = {k: v * inv for k, v in row.items()}
        # clear the new pivot column from earlier pivot rows
        for c, prow in pivot_rows.items():
            f = prow.get(p)
            if f:
                for k, v in row.items():
                    nv = prow.get(k, 0) - f * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        pivot_rows[p] = row
    pivots = sorted(pivot_rows)
    return [pivot_rows[p] for p in pivots], pivots


def rref(m: QMatrix) -> tuple[QMatrix, list[int]]:
    """Reduced row echelon form and the pivot columns of ``m``."""
    red, pivots = _rref_sparse(_sparse_rows(m.tolist()), m.cols)
    zero = Fraction(0)
    out = [[r.get(j, zero) for j in range(m.cols)] for r in red]
    out += [[zero] * m.cols for _ in range(m.rows - len(red))]
    return QMatrix(out, cols=m.cols), pivots


def rank(m: QMatrix) -> int:
    return len(_rref_sparse(_sparse_rows(m.tolist()), m.cols)[1])


class SubspaceBasis:
    """A subspace of Q^n stored by its reduced echelon basis.

    Two SubspaceBasis objects describing the same subspace compare equal.
    """

    __slots__ = ("ambient_dim", "basis", "pivots", "_rows")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        vecs = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            vecs.append(v)
        red, pivots = _rref_sparse(_sparse_rows(vecs), ambient_dim)
        self.ambient_dim = ambient_dim
        self._rows = red
        self.pivots = tuple(pivots)
        zero = Fraction(0)
        self.basis = tuple(tuple(r.get(j, zero) for j in range(ambient_dim)) for r in red)

    @classmethod
    def _from_reduced(cls, ambient_dim, rows, pivots):
        obj = cls.__new__(cls)
        obj.ambient_dim = ambient_dim
        obj._rows = rows
        obj.pivots = tuple(pivots)
        zero = Fraction(0)
        obj.basis = tuple(tuple(r.get(j, zero) for j in range(ambient_dim)) for r in rows)
        return obj

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"SubspaceBasis(dim={self.dim}, ambient={self.ambient_dim})"

    def reduce(self, v: Sequence) -> dict:
        """Sparse remainder of ``v`` after clearing this subspace's pivots."""
        row = {j: as_fraction(x) for j, x in enumerate(v) if x}
        for p, prow in zip(self.pivots, self._rows):
            f = row.get(p)
            if f:
                for k, x in prow.items():
                    nv = row.get(k, 0) - f * x
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
        return row

    def contains(self, v: Sequence) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: Sequence) -> Vector | None:
        """Coordinates of ``v`` in the echelon basis, or None if v is outside."""
        if self.reduce(v):
            return None
        return tuple(as_fraction(v[p]) for p in self.pivots)

    def combine(self, coords: Sequence) -> Vector:
        out = [Fraction(0)] * self.ambient_dim
        for c, row in zip(coords, self._rows):
            c = as_fraction(c)
            if c:
                for k, x in row.items():
                    out[k] += c * x
        return tuple(out)

    def is_subspace_of(self, other: "SubspaceBasis") -> bool:
        return all(other.contains(v) for v in self.basis)


def contains(space: SubspaceBasis, v: Sequence) -> bool:
    return space.contains(v)


def kernel_basis(m: QMatrix) -> SubspaceBasis:
    """Null space of ``m``; one vector per free column of the rref."""
    red, pivots = _rref_sparse(_sparse_rows(m.tolist()), m.cols)
    pivset = set(pivots)
    vecs = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for p, row in zip(pivots, red):
            x = row.get(f)
            if x:
                v[p] = -x
        vecs.append(v)
    return SubspaceBasis(m.cols, vecs)


def image_basis(m: QMatrix) -> SubspaceBasis:
    """Column space of ``m`` as a subspace of Q^rows."""
    return SubspaceBasis(m.rows, [m.column(j) for j in range(m.cols)])


def solve_particular(m: QMatrix, b: Sequence) -> Vector | None:
    """A solution of m x = b with all free variables zero, or None."""
    if len(b) != m.rows:
        raise DimensionMismatch("right-hand side length does not match row count")
    n = m.cols
    aug = []
    for i in range(m.rows):
        row = {j: x for j, x in enumerate(m.row(i)) if x}
        bi = as_fraction(b[i])
        if bi:
            row[n] = bi
        aug.append(row)
    red, pivots = _rref_sparse(aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [Fraction(0)] * n
    for p, row in zip(pivots, red):
        x[p] = row.get(n, Fraction(0))
    return tuple(x)


def subspace_sum(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    return SubspaceBasis(a.ambient_dim, a.basis + b.basis)


def intersect(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    """a ∩ b via the kernel of [A | -B]."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    if not a.dim or not b.dim:
        return SubspaceBasis(a.ambient_dim)
    n = a.ambient_dim
    cols = list(a.basis) + [tuple(-x for x in v) for v in b.basis]
    joint = QMatrix.from_columns(cols, n)
    ker = kernel_basis(joint)
    vecs = [a.combine(k[: a.dim]) for k in ker.basis]
    return SubspaceBasis(n, vecs)


def quotient_coords(vectors: Iterable[Sequence], modulo: SubspaceBasis) -> list[Vector]:
    """Coordinates of each vector in Q^n / modulo.

    The complement is spanned by the standard basis vectors at the non-pivot
    columns of ``modulo``; coordinates are listed in increasing column order.
    """
    free = [j for j in range(modulo.ambient_dim) if j not in set(modulo.pivots)]
    zero = Fraction(0)
    out = []
    for v in vectors:
        r = modulo.reduce(v)
        out.append(tuple(r.get(j, zero) for j in free))
    return out
