"""Sparse exact linear algebra over the rationals.

Vectors are plain dicts mapping index -> Fraction, with zero entries never
stored.  Matrices are immutable sparse maps (row, col) -> Fraction.  All
eliminations are exact; nothing in this package ever touches a float.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Optional

Vector = dict  # index -> Fraction, zeros omitted

_RATIONAL_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


def rational(value) -> Fraction:
    """Coerce ints, Fractions, or 'p/q' strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise ValueError("not an exact rational literal: %r" % (value,))
        return Fraction(text)
    raise TypeError("cannot coerce %r to a rational" % (value,))


def format_rational(value: Fraction) -> str:
    """Render 'p' or 'p/q'; Fraction.__str__ already does exactly that."""
    return str(Fraction(value))


def vector(entries: Mapping) -> Vector:
    """Normalize a mapping to a sparse vector, dropping zeros."""
    out = {}
    for idx, val in entries.items():
        q = rational(val)
        if q:
            out[idx] = q
    return out


def vec_add(a: Vector, b: Vector) -> Vector:
    out = dict(a)
    for idx, val in b.items():
        s = out.get(idx, 0) + val
        if s:
            out[idx] = s
        else:
            out.pop(idx, None)
    return out


def vec_scale(c, a: Vector) -> Vector:
    c = rational(c)
    if not c:
        return {}
    return {idx: c * val for idx, val in a.items()}


def vec_sub(a: Vector, b: Vector) -> Vector:
    return vec_add(a, vec_scale(-1, b))


def dot(f: Vector, v: Vector) -> Fraction:
    """Pairing of a functional with a vector, summing over common support."""
    if len(f) > len(v):
        f, v = v, f
    total = Fraction(0)
    for idx, val in f.items():
        w = v.get(idx)
        if w is not None:
            total += val * w
    return total


class RatMatrix:
    """Immutable sparse rational matrix.

    entries maps (row, col) -> nonzero Fraction.  Construction drops zeros
    and validates index bounds; afterwards instances are treated as frozen.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Optional[Mapping] = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix shape")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        clean = {}
        for (r, c), val in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError("entry (%d, %d) outside %dx%d" % (r, c, rows, cols))
            q = rational(val)
            if q:
                clean[(r, c)] = q
        object.__setattr__(self, "entries", clean)

    def __setattr__(self, name, value):
        raise AttributeError("RatMatrix is immutable")

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def from_rows(cls, dense: Iterable[Iterable]) -> "RatMatrix":
        dense = [list(row) for row in dense]
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        entries = {}
        for r, row in enumerate(dense):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for c, val in enumerate(row):
                entries[(r, c)] = rational(val)
        return cls(rows, cols, entries)

    def __getitem__(self, key) -> Fraction:
        return self.entries.get(key, Fraction(0))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        raise TypeError("RatMatrix is not hashable")

    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in add")
        entries = dict(self.entries)
        for key, val in other.entries.items():
            s = entries.get(key, 0) + val
            if s:
                entries[key] = s
            else:
                entries.pop(key, None)
        return RatMatrix(self.rows, self.cols, entries)

    def __neg__(self) -> "RatMatrix":
        return self.scale(-1)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "RatMatrix":
        c = rational(c)
        if not c:
            return RatMatrix.zero(self.rows, self.cols)
        return RatMatrix(self.rows, self.cols, {k: c * v for k, v in self.entries.items()})

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matmul")
        by_row = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        acc = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                key = (r, c)
                s = acc.get(key, 0) + v * w
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
        return RatMatrix(self.rows, other.cols, acc)

    def power(self, k: int) -> "RatMatrix":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative power")
        out = RatMatrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def apply(self, v: Vector) -> Vector:
        """Matrix times column vector."""
        by_col = {}
        for (r, c), val in self.entries.items():
            by_col.setdefault(c, []).append((r, val))
        acc = {}
        for c, coeff in v.items():
            for r, val in by_col.get(c, ()):
                s = acc.get(r, 0) + coeff * val
                if s:
                    acc[r] = s
                else:
                    acc.pop(r, None)
        return acc

    def apply_functional(self, f: Vector) -> Vector:
        """Row vector times matrix (pullback of a functional)."""
        return self.transpose().apply(f)

    def column(self, c: int) -> Vector:
        return {r: v for (r, cc), v in self.entries.items() if cc == c}

    def columns(self) -> list:
        out = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            out[c][r] = v
        return out

    def to_dense(self) -> list:
        return [[self.entries.get((r, c), Fraction(0)) for c in range(self.cols)] for r in range(self.rows)]

    def __repr__(self):
        return "RatMatrix(%d, %d, %d nonzero)" % (self.rows, self.cols, len(self.entries))


def outer(v: Vector, f: Vector, rows: int, cols: int) -> RatMatrix:
    """Rank-one matrix v * f (column times row)."""
    entries = {}
    for r, a in v.items():
        for c, b in f.items():
            entries[(r, c)] = a * b
    return RatMatrix(rows, cols, entries)


class LinearSolver:
    """Incremental exact Gaussian elimination over added column vectors.

    Tracks, for each independent vector, its reduced form and an expression
    of that reduced form in terms of the original added vectors, so targets
    can be both tested for membership and expressed in the original family.
    Pivots are the smallest-index nonzero coordinates.  Stored vectors are
    reduced against all earlier ones, so reductions must sweep in insertion
    order; that also keeps results deterministic.
    """

    def __init__(self):
        self._pivots = []  # (pivot index, reduced vector, expression over added ids)
        self._added = 0

    @property
    def dim(self) -> int:
        return len(self._pivots)

    def _reduce(self, v: Vector):
        rem = dict(v)
        expr = {}
        for pivot, vec, vec_expr in self._pivots:
            coeff = rem.get(pivot)
            if coeff:
                for idx, val in vec.items():
                    s = rem.get(idx, 0) - coeff * val
                    if s:
                        rem[idx] = s
                    else:
                        rem.pop(idx, None)
                for idx, val in vec_expr.items():
                    s = expr.get(idx, 0) + coeff * val
                    if s:
                        expr[idx] = s
                    else:
                        expr.pop(idx, None)
        return rem, expr

    def add(self, v: Vector) -> Optional[Vector]:
        """Add a vector; return its normalized reduced form if independent."""
        rem, used = self._reduce(v)
        this_id = self._added
        self._added += 1
        if not rem:
            return None
        pivot = min(rem)
        inv = 1 / rem[pivot]
        rem = {idx: inv * val for idx, val in rem.items()}
        expr = {this_id: inv}
        for idx, val in used.items():
            s = expr.get(idx, 0) - inv * val
            if s:
                expr[idx] = s
            else:
                expr.pop(idx, None)
        self._pivots.append((pivot, rem, expr))
        return rem

    def contains(self, target: Vector) -> bool:
        rem, _ = self._reduce(target)
        return not rem

    def express(self, target: Vector) -> Optional[Vector]:
        """Coefficients over the added vectors reproducing target, or None."""
        rem, expr = self._reduce(target)
        if rem:
            return None
        return expr


def span_dim(vectors: Iterable[Vector]) -> int:
    solver = LinearSolver()
    for v in vectors:
        solver.add(v)
    return solver.dim


def _markowitz_rank(entries: dict) -> int:
    """Rank by exact elimination with Markowitz pivoting.

    Pivot minimizes (row fill - 1) * (col fill - 1) with ties broken on the
    (row, col) pair, which bounds fill-in and keeps the run deterministic.
    """
    rows = {}
    for (r, c), v in entries.items():
        rows.setdefault(r, {})[c] = v
    rank = 0
    while rows:
        col_count = {}
        for cols in rows.values():
            for c in cols:
                col_count[c] = col_count.get(c, 0) + 1
        best = None
        for r in rows:
            row_fill = len(rows[r])
            for c in rows[r]:
                score = (row_fill - 1) * (col_count[c] - 1)
                key = (score, r, c)
                if best is None or key < best:
                    best = key
        _, pr, pc = best
        pivot_row = rows.pop(pr)
        pivot_val = pivot_row[pc]
        rank += 1
        for r in list(rows):
            row = rows[r]
            coeff = row.get(pc)
            if not coeff:
                continue
            factor = coeff / pivot_val
            for c, v in pivot_row.items():
                s = row.get(c, 0) - factor * v
                if s:
                    row[c] = s
                else:
                    row.pop(c, None)
            if not row:
                del rows[r]
    return rank


def rank(m: RatMatrix) -> int:
    return _markowitz_rank(m.entries)


def rref_rows(row_vectors: Iterable[Vector]) -> list:
    """Canonical reduced row echelon basis of the span of the given rows.

    The output depends only on the row span: fully reduced, pivot entries 1,
    rows ordered by pivot column.
    """
    basis = []  # (pivot, row)
    for raw in row_vectors:
        row = dict(raw)
        for pivot, other in basis:
            coeff = row.get(pivot)
            if coeff:
                for idx, val in other.items():
                    s = row.get(idx, 0) - coeff * val
                    if s:
                        row[idx] = s
                    else:
                        row.pop(idx, None)
        if not row:
            continue
        pivot = min(row)
        inv = 1 / row[pivot]
        row = {idx: inv * val for idx, val in row.items()}
        for i, (p, other) in enumerate(basis):
            coeff = other.get(pivot)
            if coeff:
                new = dict(other)
                for idx, val in row.items():
                    s = new.get(idx, 0) - coeff * val
                    if s:
                        new[idx] = s
                    else:
                        new.pop(idx, None)
                basis[i] = (p, new)
        basis.append((pivot, row))
        basis.sort(key=lambda t: t[0])
    return [row for _, row in basis]


def kernel_basis(m: RatMatrix) -> list:
    """Canonical kernel basis of m, one vector per free column.

    Computed from the reduced row echelon form; each basis vector carries a 1
    at its free column and is supported elsewhere only on pivot columns, so
    the family is in reduced (column) echelon shape and reproducible.
    """
    rows = {}
    for (r, c), v in m.entries.items():
        rows.setdefault(r, {})[c] = v
    reduced = rref_rows(rows.values())
    pivots = {min(row): row for row in reduced}
    basis = []
    for c in range(m.cols):
        if c in pivots:
            continue
        vec = {c: Fraction(1)}
        for p, row in pivots.items():
            coeff = row.get(c)
            if coeff:
                vec[p] = -coeff
        basis.append(vec)
    return basis


def image_basis(m: RatMatrix) -> list:
    """Canonical basis of the column space (reduced echelon over columns)."""
    return rref_rows(m.columns())


def solve_columns(m: RatMatrix, b: Vector) -> Optional[Vector]:
    """Express b in the columns of m; returns col index -> coeff, or None."""
    solver = LinearSolver()
    cols = m.columns()
    for col in cols:
        solver.add(col)
    expr = solver.express(b)
    return expr


def invert(m: RatMatrix) -> RatMatrix:
    """Exact inverse of a square matrix; ValueError when singular."""
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    solver = LinearSolver()
    for col in m.columns():
        solver.add(col)
    entries = {}
    for i in range(m.rows):
        expr = solver.express({i: Fraction(1)})
        if expr is None:
            raise ValueError("matrix is singular")
        for j, v in expr.items():
            entries[(j, i)] = v
    return RatMatrix(m.rows, m.cols, entries)
