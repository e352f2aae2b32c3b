"""
Dense integer matrices and Smith normal form over the integers.

Design NOTE on integer matrices:
- IntMatrix is an immutable row-major container of Python integers (arbitrary precision). Products go through
  numpy object arrays so no entry is ever truncated to a machine integer.
- smith_normal_form pivots on the entry of smallest absolute value and reduces with floor division, which keeps
  coefficients small on the rank-8 lattices used by the root datum code. The unimodular transforms u and v are
  tracked alongside, so u * M * v reproduces the diagonal exactly.
- Lattice quotients Z^r / (row span) are read off the invariant factors: entries > 1 are the torsion part and
  the number of zero (or missing) factors is the free rank.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from sympy import primefactors


@dataclass(frozen=True)
class IntMatrix:
    """An exact integer matrix.

    Args:
        rows: number of rows
        cols: number of columns
        entries: row-major tuple of rows * cols integers
    """
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError(f"Matrix dimensions must be non-negative, got {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f"Expected {self.rows * self.cols} entries for a {self.rows}x{self.cols} matrix, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        """Builds a matrix from a list of rows. cols is needed only for matrices without rows."""
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError(f"Ragged row of length {len(r)} in a matrix with {cols} columns")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, value in enumerate(values):
            out[i][i] = int(value)
        return cls.from_rows(out, cols)

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def array(self) -> np.ndarray:
        """numpy object array view (a fresh copy) of the entries."""
        return np.array(self.entries, dtype=object).reshape(self.rows, self.cols)

    @classmethod
    def from_array(cls, array: np.ndarray) -> "IntMatrix":
        rows, cols = array.shape
        return cls(rows, cols, tuple(int(x) for x in array.reshape(-1)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        return IntMatrix.from_array(np.dot(self.array, other.array))

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([[self[i, j] for i in range(self.rows)] for j in range(self.cols)], self.rows)

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ValueError("Cannot stack matrices with different column counts")
        return IntMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def select_rows(self, indices: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_rows([self.row(i) for i in indices], self.cols)

    def determinant(self) -> int:
        """Fraction-free (Bareiss) determinant of a square matrix."""
        if self.rows != self.cols:
            raise ValueError("Determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_rows()
        sign = 1
        previous = 1
        for t in range(n - 1):
            if a[t][t] == 0:
                swap = next((i for i in range(t + 1, n) if a[i][t] != 0), None)
                if swap is None:
                    return 0
                a[t], a[swap] = a[swap], a[t]
                sign = -sign
            for i in range(t + 1, n):
                for j in range(t + 1, n):
                    a[i][j] = (a[i][j] * a[t][t] - a[i][t] * a[t][j]) // previous
            previous = a[t][t]
        return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form of an integer matrix.

    Args:
        d: invariant factors, length min(rows, cols), non-negative, each dividing the next (zeros last)
        u: unimodular rows x rows transform
        v: unimodular cols x cols transform, with u * M * v = diag(d) padded with zeros
        rows, cols: dimensions of the original matrix
    """
    d: tuple[int, ...]
    u: IntMatrix
    v: IntMatrix
    rows: int
    cols: int

    @property
    def diagonal_matrix(self) -> IntMatrix:
        return IntMatrix.diagonal(self.d, self.rows, self.cols)

    @property
    def rank(self) -> int:
        return sum(1 for x in self.d if x != 0)


def _smallest_nonzero(a: list[list[int]], t: int) -> tuple[int, int] | None:
    best = None
    for i in range(t, len(a)):
        for j in range(t, len(a[i])):
            x = a[i][j]
            if x != 0 and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                best = (i, j)
                if abs(x) == 1:
                    return best
    return best


def smith_normal_form(m: IntMatrix) -> SnfResult:
    """
    Computes the Smith normal form u * m * v = diag(d) together with the unimodular transforms.

    Args:
        m: integer matrix (any shape, including empty)
    Returns:
        SnfResult with divisibility-ordered, non-negative invariant factors
    """
    rows, cols = m.rows, m.cols
    a = m.to_rows()
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(target, source, factor):
        # row_target += factor * row_source
        a[target] = [x + factor * y for x, y in zip(a[target], a[source])]
        u[target] = [x + factor * y for x, y in zip(u[target], u[source])]

    def add_col(target, source, factor):
        for r in a:
            r[target] += factor * r[source]
        for r in v:
            r[target] += factor * r[source]

    size = min(rows, cols)
    for t in range(size):
        pivot = _smallest_nonzero(a, t)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    add_row(i, t, -(a[i][t] // a[t][t]))
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    add_col(j, t, -(a[t][j] // a[t][t]))
            # Bring a smaller remainder of row/column t into the pivot position
            candidates = [(abs(a[i][t]), i, t) for i in range(t + 1, rows) if a[i][t] != 0]
            candidates += [(abs(a[t][j]), t, j) for j in range(t + 1, cols) if a[t][j] != 0]
            if candidates:
                _, i, j = min(candidates)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            offender = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                             if a[i][j] % a[t][t] != 0), None)
            if offender is None:
                break
            add_row(t, offender[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    d = tuple(a[i][i] for i in range(size))
    return SnfResult(d=d, u=IntMatrix.from_rows(u, rows), v=IntMatrix.from_rows(v, cols), rows=rows, cols=cols)


@dataclass(frozen=True)
class QuotientInvariants:
    """Structure of Z^rank / (row span): torsion invariant factors (> 1) and free rank."""
    torsion: tuple[int, ...]
    free_rank: int

    @property
    def torsion_order(self) -> int:
        order = 1
        for x in self.torsion:
            order *= x
        return order

    @property
    def torsion_primes(self) -> frozenset[int]:
        return frozenset(p for x in self.torsion for p in primefactors(x))


def quotient_invariants(ambient_rank: int, generators: IntMatrix) -> QuotientInvariants:
    """Invariant factors of Z^ambient_rank modulo the lattice spanned by the rows of generators."""
    if generators.rows == 0:
        return QuotientInvariants(torsion=(), free_rank=ambient_rank)
    if generators.cols != ambient_rank:
        raise ValueError(f"Generators have {generators.cols} columns, expected {ambient_rank}")
    snf = smith_normal_form(generators)
    return QuotientInvariants(torsion=tuple(x for x in snf.d if x > 1), free_rank=ambient_rank - snf.rank)


def quotient_torsion_primes(ambient_rank: int, generators: IntMatrix) -> frozenset[int]:
    """Primes p such that Z^ambient_rank / (row span of generators) has p-torsion."""
    return quotient_invariants(ambient_rank, generators).torsion_primes


def lattice_basis(generators: IntMatrix) -> IntMatrix:
    """
    Row-echelon basis of the lattice spanned by the rows of generators (integer row operations only).

    Returns:
        IntMatrix whose rows are a Z-basis of the row span
    """
    a = generators.to_rows()
    rank = 0
    for col in range(generators.cols):
        while True:
            live = [i for i in range(rank, len(a)) if a[i][col] != 0]
            if not live:
                break
            lead = min(live, key=lambda i: abs(a[i][col]))
            a[rank], a[lead] = a[lead], a[rank]
            finished = True
            for i in range(rank + 1, len(a)):
                if a[i][col] != 0:
                    q = a[i][col] // a[rank][col]
                    a[i] = [x - q * y for x, y in zip(a[i], a[rank])]
                    finished = finished and a[i][col] == 0
            if finished:
                rank += 1
                break
    return IntMatrix.from_rows(a[:rank], generators.cols)
