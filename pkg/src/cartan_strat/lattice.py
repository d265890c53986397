"""Integer matrices: Smith normal form, cokernels and a few helpers.

All arithmetic uses Python ints, so there is no overflow.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

IntMatrix = list  # list[list[int]]


class OracleBoundExceeded(ValueError):
    pass


class MatrixShapeError(ValueError):
    pass


def _check_rect(a: Sequence[Sequence[int]]) -> tuple[int, int]:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    for r in a:
        if len(r) != cols:
            raise MatrixShapeError("matrix rows have different lengths")
        for x in r:
            if not isinstance(x, int) or isinstance(x, bool):
                raise MatrixShapeError(f"non-integer entry {x!r}")
    return rows, cols


def int_identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def int_matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a and b and len(a[0]) != len(b):
        raise MatrixShapeError(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    cols = len(b[0]) if b else 0
    return [[sum(x * b[k][j] for k, x in enumerate(row)) for j in range(cols)] for row in a]


def transpose(a: IntMatrix) -> IntMatrix:
    return [list(r) for r in zip(*a)]


def determinant(a: IntMatrix) -> int:
    """Bareiss fraction-free elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def is_diagonal(a: IntMatrix) -> bool:
    return all(x == 0 for i, r in enumerate(a) for j, x in enumerate(r) if i != j)


@dataclass(frozen=True)
class SmithDecomposition:
    """``D = U * A * V`` with U, V unimodular and D in Smith form."""

    U: tuple
    D: tuple
    V: tuple

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    def to_dict(self) -> dict:
        return {"U": [list(r) for r in self.U], "D": [list(r) for r in self.D], "V": [list(r) for r in self.V]}


def smith_normal_form(a: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form with transforms.

    Pivot: smallest nonzero absolute value in the active block, first in
    row-major order on ties.  Rows and columns are cleared by remainder
    steps; whenever the pivot fails to divide some entry of the remaining
    block, that row is added to the pivot row and the step repeats.
    """
    rows, cols = _check_rect(a)
    d = [list(r) for r in a]
    u = int_identity(rows)
    v = int_identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, k):
        # row dst += k * row src
        d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):
        for r in d:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = d[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, pi, pj = best
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = d[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // p))
                    dirty = dirty or d[i][t] != 0
            for j in range(t + 1, cols):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // p))
                    dirty = dirty or d[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if d[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    dec = SmithDecomposition(
        tuple(tuple(r) for r in u), tuple(tuple(r) for r in d), tuple(tuple(r) for r in v)
    )
    _assert_contract(a, dec)
    return dec


def _assert_contract(a, dec: SmithDecomposition) -> None:
    u = [list(r) for r in dec.U]
    dd = [list(r) for r in dec.D]
    v = [list(r) for r in dec.V]
    rows, cols = len(a), (len(a[0]) if a else 0)
    if rows and cols:
        assert int_matmul(int_matmul(u, [list(r) for r in a]), v) == dd, "D != U A V"
    assert abs(determinant(u)) == 1 and abs(determinant(v)) == 1, "transform not unimodular"
    assert is_diagonal(dd), "D not diagonal"
    diag = dec.diagonal
    assert all(x >= 0 for x in diag), "negative diagonal entry"
    for x, y in zip(diag, diag[1:]):
        assert (x == 0 and y == 0) or (x != 0 and y % x == 0), "divisibility chain broken"


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank plus cyclic factors, each >= 2 and dividing the next."""

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(f) for f in self.invariant_factors if f != 1)
        object.__setattr__(self, "invariant_factors", factors)
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        if any(f < 2 for f in factors):
            raise ValueError(f"invariant factors must be >= 2, got {factors}")
        for x, y in zip(factors, factors[1:]):
            if y % x:
                raise ValueError(f"invariant factors {factors} do not form a divisibility chain")

    @classmethod
    def from_cyclic_orders(cls, orders: Sequence[int], free_rank: int = 0) -> "AbelianGroup":
        """Canonical form of the direct sum of Z/n over ``orders``.

        A zero order contributes a free summand.
        """
        free = free_rank + sum(1 for n in orders if n == 0)
        nonzero = [abs(n) for n in orders if n != 0]
        if not nonzero:
            return cls(free)
        diagonal = [[n if i == j else 0 for j in range(len(nonzero))] for i, n in enumerate(nonzero)]
        return cls(free, tuple(smith_normal_form(diagonal).diagonal))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "invariant_factors": list(self.invariant_factors)}

    def __str__(self):
        parts = [f"Z/{f}" for f in self.invariant_factors]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def cokernel(a: Sequence[Sequence[int]]) -> AbelianGroup:
    """Cokernel of ``a`` acting on column vectors, Z^cols -> Z^rows."""
    rows, cols = _check_rect(a)
    if rows == 0:
        return AbelianGroup()
    if cols == 0:
        return AbelianGroup(rows)
    diag = smith_normal_form(a).diagonal
    zeros = sum(1 for x in diag if x == 0) + (rows - len(diag))
    return AbelianGroup(zeros, tuple(x for x in diag if x > 1))


def group_order(g: AbelianGroup) -> float | int:
    if g.free_rank:
        return math.inf
    return math.prod(g.invariant_factors)


def group_exponent(g: AbelianGroup) -> float | int:
    if g.free_rank:
        return math.inf
    return g.invariant_factors[-1] if g.invariant_factors else 1


def invariants_via_minor_gcd(a: Sequence[Sequence[int]], bound: int = 6) -> list[int]:
    """Smith diagonal from gcds of k x k minors; an independent check."""
    rows, cols = _check_rect(a)
    if max(rows, cols) > bound:
        raise OracleBoundExceeded(f"matrix size {rows}x{cols} exceeds oracle bound {bound}")
    out = []
    prev = 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for ri in combinations(range(rows), k):
            for ci in combinations(range(cols), k):
                g = math.gcd(g, determinant([[a[i][j] for j in ci] for i in ri]))
                if g == 1:
                    break
            if g == 1:
                break
        if g == 0:
            out.extend([0] * (min(rows, cols) - k + 1))
            break
        out.append(g // prev)
        prev = g
    return out


def random_unimodular(n: int, seed: int, steps: int = 20) -> IntMatrix:
    if n < 1:
        raise ValueError("n must be positive")
    rng = random.Random(seed)
    m = int_identity(n)
    for _ in range(steps):
        op = rng.randrange(3) if n > 1 else 2
        if op == 0:
            i, j = rng.sample(range(n), 2)
            k = rng.randint(-3, 3)
            m[i] = [x + k * y for x, y in zip(m[i], m[j])]
        elif op == 1:
            i, j = rng.sample(range(n), 2)
            m[i], m[j] = m[j], m[i]
        else:
            i = rng.randrange(n)
            m[i] = [-x for x in m[i]]
    return m


def congruence(a: IntMatrix, p: IntMatrix) -> IntMatrix:
    """``p * a * p^t``."""
    ra, ca = _check_rect(a)
    rp, cp = _check_rect(p)
    if ra != ca or cp != ra:
        raise MatrixShapeError(f"congruence needs square a and p with matching size, got {ra}x{ca} and {rp}x{cp}")
    return int_matmul(int_matmul(p, a), transpose(p))


def is_unimodular(a: IntMatrix) -> bool:
    return len(a) == (len(a[0]) if a else 0) and abs(determinant(a)) == 1
