"""Exact dense linear algebra over a :class:`~cartan_strat.fields.FieldSpec`.

Matrices are lists of rows; vectors are lists.  Everything here is written
against ordinary arithmetic operators so it works for both ``Fraction`` and
``ModP`` scalars.
"""

from __future__ import annotations

from typing import Sequence

from .fields import FieldSpec

Matrix = list  # list[list[Scalar]], rows x cols
Vector = list


def zeros(field: FieldSpec, rows: int, cols: int) -> Matrix:
    z = field.zero
    return [[z] * cols for _ in range(rows)]


def identity(field: FieldSpec, n: int) -> Matrix:
    m = zeros(field, n, n)
    for i in range(n):
        m[i][i] = field.one
    return m


def matmul(field: FieldSpec, a: Matrix, b: Matrix, inner: int | None = None, cols: int | None = None) -> Matrix:
    """Product ``a @ b``.  Row lists cannot record a width, so ``inner``
    is needed when ``a`` has no rows and ``cols`` when ``b`` has none."""
    rows = len(a)
    if inner is None:
        inner = len(a[0]) if a else len(b)
    if cols is None:
        cols = len(b[0]) if b else 0
    out = zeros(field, rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            c = ai[k]
            if not c:
                continue
            bk = b[k]
            for j in range(cols):
                if bk[j]:
                    oi[j] = oi[j] + c * bk[j]
    return out


def apply(field: FieldSpec, a: Matrix, v: Vector) -> Vector:
    out = [field.zero] * len(a)
    for i, row in enumerate(a):
        s = field.zero
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out[i] = s
    return out


def is_zero_matrix(a: Matrix) -> bool:
    return not any(x for row in a for x in row)


def column(a: Matrix, j: int) -> Vector:
    return [row[j] for row in a]


def from_columns(field: FieldSpec, cols: Sequence[Vector], height: int) -> Matrix:
    return [[c[i] for c in cols] for i in range(height)] if cols else [[] for _ in range(height)]


class Subspace:
    """A subspace of ``field^dim`` kept in reduced row echelon form.

    Row ``k`` has a 1 at ``pivots[k]`` and zeros at every other pivot column,
    so coordinates of a member vector are just its pivot entries, and the
    residual of any vector after :meth:`reduce` has zeros at all pivots.
    """

    __slots__ = ("field", "dim", "rows", "pivots")

    def __init__(self, field: FieldSpec, dim: int, vectors: Sequence[Vector] = ()):
        self.field = field
        self.dim = dim
        self.rows: list[Vector] = []
        self.pivots: list[int] = []
        for v in vectors:
            self.add(v)

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Vector) -> Vector:
        vec = list(vec)
        for row, p in zip(self.rows, self.pivots):
            c = vec[p]
            if c:
                for j in range(self.dim):
                    if row[j]:
                        vec[j] = vec[j] - c * row[j]
        return vec

    def __contains__(self, vec: Vector) -> bool:
        return not any(self.reduce(vec))

    def add(self, vec: Vector) -> bool:
        """Extend the span by ``vec``; return whether the dimension grew."""
        r = self.reduce(vec)
        piv = next((j for j, x in enumerate(r) if x), None)
        if piv is None:
            return False
        inv = self.field.one / r[piv]
        r = [x * inv for x in r]
        for k, row in enumerate(self.rows):
            c = row[piv]
            if c:
                self.rows[k] = [x - c * y for x, y in zip(row, r)]
        pos = 0
        while pos < len(self.pivots) and self.pivots[pos] < piv:
            pos += 1
        self.rows.insert(pos, r)
        self.pivots.insert(pos, piv)
        return True

    def coordinates(self, vec: Vector) -> Vector:
        """Coordinates of a member vector with respect to :attr:`rows`."""
        return [vec[p] for p in self.pivots]

    def complement_indices(self) -> list[int]:
        piv = set(self.pivots)
        return [j for j in range(self.dim) if j not in piv]

    def quotient_coordinates(self, vec: Vector) -> Vector:
        """Coordinates of ``vec`` modulo this subspace.

        The quotient basis is the images of the unit vectors at the
        non-pivot positions.
        """
        r = self.reduce(vec)
        return [r[j] for j in self.complement_indices()]

    def copy(self) -> "Subspace":
        other = Subspace(self.field, self.dim)
        other.rows = [list(r) for r in self.rows]
        other.pivots = list(self.pivots)
        return other


def rank(field: FieldSpec, a: Matrix) -> int:
    if not a:
        return 0
    return Subspace(field, len(a[0]), a).dimension


def nullspace(field: FieldSpec, a: Matrix, cols: int) -> list[Vector]:
    """Basis of ``{x : a x = 0}`` for a matrix with ``cols`` columns."""
    s = Subspace(field, cols, a)
    free = s.complement_indices()
    basis = []
    for f in free:
        x = [field.zero] * cols
        x[f] = field.one
        for row, p in zip(s.rows, s.pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis
