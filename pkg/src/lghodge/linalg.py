"""Exact dense linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`; matrices and subspaces are immutable.
Everything here is small (ambient dimension at most a dozen or so), so the
implementations favour clarity over speed.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


class LinalgError(ValueError):
    """Base class for errors raised by the exact linear algebra layer."""


class ShapeError(LinalgError):
    pass


class ParseError(LinalgError):
    pass


def to_rational(value) -> Fraction:
    """Coerce ``value`` to a :class:`Fraction`.

    Strings must look like ``"p"`` or ``"p/q"``; anything else (decimals,
    exponents, whitespace, zero denominators) is rejected.  Floats are refused
    outright so that no inexact value can sneak in.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise ParseError(f"malformed rational: {value!r}")
        num, _, den = value.partition("/")
        if den and int(den) == 0:
            raise ParseError(f"zero denominator: {value!r}")
        return Fraction(int(num), int(den) if den else 1)
    raise ParseError(f"not a rational: {value!r}")


def format_rational(x: Fraction) -> str:
    return str(x)


class Matrix:
    """An immutable dense matrix with :class:`Fraction` entries."""

    __slots__ = ("_data", "_rows", "_cols")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(to_rational(x) for x in row) for row in data)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ShapeError("ragged rows")
            if cols is not None and cols != width:
                raise ShapeError(f"expected {cols} columns, got {width}")
        else:
            width = cols or 0
        self._data = rows
        self._rows = len(rows)
        self._cols = width

    # construction helpers

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> Matrix:
        cols = rows if cols is None else cols
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> Matrix:
        if not columns:
            return cls.zeros(rows, 0)
        return cls(zip(*columns), cols=len(columns)) if rows else cls.zeros(0, len(columns))

    @classmethod
    def from_flat(cls, rows: int, cols: int, entries: Sequence) -> Matrix:
        if len(entries) != rows * cols:
            raise ShapeError(f"{len(entries)} entries for a {rows}x{cols} matrix")
        return cls([entries[i * cols:(i + 1) * cols] for i in range(rows)], cols=cols)

    @classmethod
    def block_diagonal(cls, blocks: Sequence[Matrix]) -> Matrix:
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = [[Fraction(0)] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return cls(out, cols=m)

    # basic accessors

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> tuple[int, int]:
        return self._rows, self._cols

    @property
    def entries(self) -> tuple[Fraction, ...]:
        """Row-major flat tuple of entries."""
        return tuple(x for row in self._data for x in row)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self._cols)]

    def __getitem__(self, idx: tuple[int, int]) -> Fraction:
        i, j = idx
        return self._data[i][j]

    def is_square(self) -> bool:
        return self._rows == self._cols

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._data for x in row)

    # arithmetic

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.shape, self._data))

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return Matrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
            cols=self._cols,
        )

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return Matrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)],
            cols=self._cols,
        )

    def __neg__(self) -> Matrix:
        return self.scale(-1)

    def scale(self, c) -> Matrix:
        c = to_rational(c)
        return Matrix([[c * x for x in r] for r in self._data], cols=self._cols)

    def __mul__(self, c) -> Matrix:
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: Matrix) -> Matrix:
        if self._cols != other._rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        # row-by-row accumulation skipping zeros; the operators here are sparse
        out = []
        for r in self._data:
            acc = [Fraction(0)] * other._cols
            for a, orow in zip(r, other._data):
                if a:
                    for j, b in enumerate(orow):
                        if b:
                            acc[j] += a * b
            out.append(acc)
        return Matrix(out, cols=other._cols)

    def apply(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self._cols:
            raise ShapeError(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), Fraction(0)) for r in self._data)

    def __pow__(self, k: int) -> Matrix:
        if not self.is_square():
            raise ShapeError("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = Matrix.identity(self._rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def transpose(self) -> Matrix:
        return Matrix(zip(*self._data), cols=self._rows) if self._rows else Matrix.zeros(self._cols, 0)

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def hstack(self, other: Matrix) -> Matrix:
        if self._rows != other._rows:
            raise ShapeError("row count mismatch in hstack")
        return Matrix([r + s for r, s in zip(self._data, other._data)], cols=self._cols + other._cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        return Matrix([[self._data[i][j] for j in cols] for i in rows], cols=len(cols))

    def _check_same_shape(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch: {self.shape} vs {other.shape}")

    # display / serialization

    def __repr__(self) -> str:
        return f"Matrix({[[str(x) for x in r] for r in self._data]})"

    def pretty(self) -> str:
        cells = [[str(x) for x in r] for r in self._data]
        if not cells or not cells[0]:
            return f"[] ({self._rows}x{self._cols})"
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)

    def to_json_obj(self) -> dict:
        return {
            "rows": self._rows,
            "cols": self._cols,
            "entries": [[format_rational(x) for x in r] for r in self._data],
        }

    @classmethod
    def from_json_obj(cls, obj) -> Matrix:
        if not isinstance(obj, dict):
            raise ParseError("matrix JSON must be an object")
        try:
            rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
        except KeyError as exc:
            raise ParseError(f"matrix JSON missing key {exc}") from None
        if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 0 or cols < 0:
            raise ParseError("rows/cols must be nonnegative integers")
        if not isinstance(entries, list) or len(entries) != rows:
            raise ParseError(f"expected {rows} rows of entries")
        for r in entries:
            if not isinstance(r, list) or len(r) != cols:
                raise ParseError(f"expected {cols} entries per row")
        return cls(entries, cols=cols)

    @classmethod
    def from_json(cls, text: str) -> Matrix:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        return cls.from_json_obj(obj)


# elimination


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...], int]:
    """Reduced row echelon form.

    Returns ``(R, pivot_columns, rank)``.
    """
    a = m.tolist()
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return Matrix(a, cols=ncols), tuple(pivots), len(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[2]


def determinant(m: Matrix) -> Fraction:
    """Exact determinant by Bareiss fraction-free elimination."""
    if not m.is_square():
        raise ShapeError(f"determinant of non-square {m.shape} matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    a = m.tolist()
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return Fraction(0)
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division: Sylvester's identity
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve(m: Matrix, b: Sequence) -> Vector | None:
    """One solution of ``m x = b`` (free variables set to zero), or None."""
    b = [to_rational(x) for x in b]
    if len(b) != m.rows:
        raise ShapeError("right-hand side has wrong length")
    aug = m.hstack(Matrix([[x] for x in b], cols=1) if b else Matrix.zeros(0, 1))
    r, pivots, _ = rref(aug)
    if m.cols in pivots:
        return None
    x = [Fraction(0)] * m.cols
    for i, c in enumerate(pivots):
        x[c] = r[i, m.cols]
    return tuple(x)


def kernel(m: Matrix) -> Subspace:
    r, pivots, _ = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -r[i, f]
        basis.append(v)
    return Subspace.span(basis, m.cols)


def image(m: Matrix) -> Subspace:
    return Subspace.span(m.columns(), m.rows)


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise ShapeError("inverse of a non-square matrix")
    n = m.rows
    r, pivots, rk = rref(m.hstack(Matrix.identity(n)))
    if rk < n or pivots[n - 1] != n - 1:
        raise LinalgError("matrix is singular")
    return r.submatrix(range(n), range(n, 2 * n))


# subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^n held by its canonical (reduced echelon) basis.

    Two subspaces are equal iff their canonical bases are equal, so the
    dataclass equality is subspace equality.
    """

    ambient_dim: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
        vecs = [tuple(to_rational(x) for x in v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ShapeError(f"vector of length {len(v)} in Q^{ambient_dim}")
        if not vecs:
            return cls(ambient_dim, ())
        r, _, rk = rref(Matrix(vecs, cols=ambient_dim))
        return cls(ambient_dim, tuple(r.row(i) for i in range(rk)))

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls.span(Matrix.identity(n).columns(), n)

    def canonicalize(self) -> Subspace:
        return Subspace.span(self.basis, self.ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> Matrix:
        """Basis vectors as the columns of an ``ambient_dim x dim`` matrix."""
        return Matrix.from_columns(self.basis, self.ambient_dim)

    def _check(self, other: Subspace) -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ShapeError(f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}")

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def intersection(self, other: Subspace) -> Subspace:
        self._check(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient_dim)
        # x.A = y.B  <=>  (x, y) in ker [A | -B]
        a = self.basis_matrix()
        b = other.basis_matrix()
        ker = kernel(a.hstack(-b))
        k = self.dim
        vecs = [a.apply(v[:k]) for v in ker.basis]
        return Subspace.span(vecs, self.ambient_dim)

    __and__ = intersection

    def contains(self, v: Sequence) -> bool:
        v = tuple(to_rational(x) for x in v)
        if len(v) != self.ambient_dim:
            raise ShapeError("vector length does not match ambient dimension")
        return Subspace.span(self.basis + (v,), self.ambient_dim).dim == self.dim

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def issubspace(self, other: Subspace) -> bool:
        self._check(other)
        return (self + other).dim == other.dim

    def __le__(self, other: Subspace) -> bool:
        return self.issubspace(other)

    def image_under(self, m: Matrix) -> Subspace:
        if m.cols != self.ambient_dim:
            raise ShapeError("matrix does not act on this ambient space")
        return Subspace.span([m.apply(v) for v in self.basis], m.rows)

    def to_json_obj(self) -> list[list[str]]:
        return [[format_rational(x) for x in v] for v in self.basis]
