"""
Matrices over Galois rings (including Z/p^k and finite fields) and linear systems over them.

Design NOTE on ring matrices:
- RingMatrix is immutable; entries are RingElement tuples of the owning GaloisRing. Products over Z/p^k go
  through numpy object arrays, products over extension rings through the ring's polynomial arithmetic.
- Linear systems are solved by local Smith elimination: GR(p^k, e) is a local principal ideal ring, so pivoting
  on an entry of minimal p-adic valuation and normalizing it to p^v diagonalizes any matrix. The right-hand side
  only sees row operations and the solution only sees column operations, so tall systems (commutation systems
  with many equations) never materialize a square row transform.
- The homogeneous solution module is reported as generators with their additive orders p^exponent: a pivot of
  valuation 0 < v < k contributes a generator of order p^v, a missing pivot a free generator of order p^k.
  Over a field (k = 1) every generator is free and the elimination is ordinary Gaussian elimination.
"""

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from algebra.galois_ring import GaloisRing, RingElement


@dataclass(frozen=True)
class RingMatrix:
    """
    Dense matrix over a Galois ring.

    Args:
        ring: coefficient ring
        rows: number of rows
        cols: number of columns
        entries: row-major tuple of ring elements
    """
    ring: GaloisRing
    rows: int
    cols: int
    entries: tuple[RingElement, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f"Expected {self.rows * self.cols} entries, got {len(self.entries)}")

    # --- constructors ---------------------------------------------------------------------------

    @classmethod
    def from_rows(cls, ring: GaloisRing, rows: Sequence[Sequence], cols: int | None = None) -> "RingMatrix":
        """Entries may be integers, coefficient lists or ring elements; all are reduced into the ring."""
        rows = list(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries = []
        for r in rows:
            if len(r) != cols:
                raise ValueError(f"Ragged row of length {len(r)} in a matrix with {cols} columns")
            entries.extend(ring.element(x) for x in r)
        return cls(ring, len(rows), cols, tuple(entries))

    @classmethod
    def identity(cls, ring: GaloisRing, n: int) -> "RingMatrix":
        return cls(ring, n, n, tuple(ring.one if i == j else ring.zero for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, ring: GaloisRing, rows: int, cols: int) -> "RingMatrix":
        return cls(ring, rows, cols, (ring.zero,) * (rows * cols))

    @classmethod
    def scalar(cls, ring: GaloisRing, n: int, value: RingElement) -> "RingMatrix":
        return cls(ring, n, n, tuple(value if i == j else ring.zero for i in range(n) for j in range(n)))

    @classmethod
    def from_columns(cls, ring: GaloisRing, columns: Sequence[Sequence[RingElement]], rows: int) -> "RingMatrix":
        return cls(ring, rows, len(columns), tuple(columns[j][i] for i in range(rows) for j in range(len(columns))))

    @classmethod
    def block_diagonal(cls, ring: GaloisRing, blocks: Sequence["RingMatrix"]) -> "RingMatrix":
        n = sum(b.rows for b in blocks)
        out = [[ring.zero] * n for _ in range(n)]
        offset = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[offset + i][offset + j] = b[i, j]
            offset += b.rows
        return cls.from_rows(ring, out, n)

    # --- access ---------------------------------------------------------------------------------

    def __getitem__(self, index: tuple[int, int]) -> RingElement:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[RingElement]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> list[RingElement]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> list[list[RingElement]]:
        return [self.row(i) for i in range(self.rows)]

    def to_json(self) -> list[list]:
        return [[self.ring.to_json(x) for x in self.row(i)] for i in range(self.rows)]

    def vectorize(self) -> list[RingElement]:
        return list(self.entries)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(not any(x) for x in self.entries)

    def is_identity(self) -> bool:
        return self.is_square and self == RingMatrix.identity(self.ring, self.rows)

    def _int_array(self) -> np.ndarray:
        return np.array([x[0] for x in self.entries], dtype=object).reshape(self.rows, self.cols)

    def _from_int_array(self, array: np.ndarray) -> "RingMatrix":
        m = self.ring.modulo
        rows, cols = array.shape
        return RingMatrix(self.ring, rows, cols, tuple((int(x) % m,) for x in array.reshape(-1)))

    # --- arithmetic -----------------------------------------------------------------------------

    def _check_ring(self, other: "RingMatrix"):
        if other.ring != self.ring:
            raise ValueError(f"Ring mismatch: {self.ring.describe()} vs {other.ring.describe()}")

    def __add__(self, other: "RingMatrix") -> "RingMatrix":
        self._check_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("Shape mismatch in matrix addition")
        add = self.ring.add
        return RingMatrix(self.ring, self.rows, self.cols, tuple(add(x, y) for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "RingMatrix") -> "RingMatrix":
        self._check_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("Shape mismatch in matrix subtraction")
        sub = self.ring.sub
        return RingMatrix(self.ring, self.rows, self.cols, tuple(sub(x, y) for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> "RingMatrix":
        return RingMatrix(self.ring, self.rows, self.cols, tuple(self.ring.neg(x) for x in self.entries))

    def __matmul__(self, other: "RingMatrix") -> "RingMatrix":
        self._check_ring(other)
        if self.cols != other.rows:
            raise ValueError(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return RingMatrix.zeros(self.ring, self.rows, other.cols)
        if self.ring.e == 1:
            return self._from_int_array(np.dot(self._int_array(), other._int_array()))
        ring = self.ring
        out = []
        for i in range(self.rows):
            left = self.row(i)
            for j in range(other.cols):
                acc = ring.zero
                for l, x in enumerate(left):
                    if any(x):
                        acc = ring.add(acc, ring.mul(x, other.entries[l * other.cols + j]))
                out.append(acc)
        return RingMatrix(ring, self.rows, other.cols, tuple(out))

    def scale(self, c: RingElement) -> "RingMatrix":
        mul = self.ring.mul
        return RingMatrix(self.ring, self.rows, self.cols, tuple(mul(c, x) for x in self.entries))

    def scale_int(self, c: int) -> "RingMatrix":
        return RingMatrix(self.ring, self.rows, self.cols, tuple(self.ring.scale(x, c) for x in self.entries))

    def transpose(self) -> "RingMatrix":
        return RingMatrix(self.ring, self.cols, self.rows,
                          tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    def power(self, exponent: int) -> "RingMatrix":
        if exponent < 0:
            return self.inverse().power(-exponent)
        result, base = RingMatrix.identity(self.ring, self.rows), self
        while exponent:
            if exponent & 1:
                result = result @ base
            base = base @ base
            exponent >>= 1
        return result

    def conjugate(self, g: "RingMatrix", g_inverse: "RingMatrix | None" = None) -> "RingMatrix":
        """g * self * g^-1."""
        return g @ self @ (g.inverse() if g_inverse is None else g_inverse)

    # --- change of ring -------------------------------------------------------------------------

    def reduce(self, ring: GaloisRing | None = None) -> "RingMatrix":
        """Reduction to a lower precision ring with the same p and e (the residue field by default)."""
        ring = self.ring.residue_field() if ring is None else ring
        return RingMatrix(ring, self.rows, self.cols, tuple(ring.from_element(x) for x in self.entries))

    def lift(self, ring: GaloisRing) -> "RingMatrix":
        """Reads the entries (as representatives) in a higher precision ring."""
        return RingMatrix(ring, self.rows, self.cols, tuple(ring.from_element(x) for x in self.entries))

    def divide_by_p_power(self, v: int, ring: GaloisRing | None = None) -> "RingMatrix":
        """Entry-wise exact division by p^v, read in ring (defaults to the residue field)."""
        ring = self.ring.residue_field() if ring is None else ring
        return RingMatrix(ring, self.rows, self.cols,
                          tuple(ring.from_element(self.ring.divide_by_p_power(x, v)) for x in self.entries))

    def min_valuation(self) -> int:
        return min((self.ring.valuation(x) for x in self.entries), default=self.ring.k)

    # --- inversion and determinant --------------------------------------------------------------

    def is_invertible(self) -> bool:
        if not self.is_square:
            return False
        return rank(self.reduce()) == self.rows

    def inverse(self) -> "RingMatrix":
        """Gauss-Jordan inverse with unit pivots. Raises ValueError for singular matrices."""
        if not self.is_square:
            raise ValueError("Inverse of a non-square matrix")
        ring = self.ring
        n = self.rows
        a = [self.row(i) + [ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
        for t in range(n):
            pivot = next((i for i in range(t, n) if ring.is_unit(a[i][t])), None)
            if pivot is None:
                raise ValueError("Matrix is not invertible over the ring")
            a[t], a[pivot] = a[pivot], a[t]
            inv = ring.inverse(a[t][t])
            a[t] = [ring.mul(inv, x) for x in a[t]]
            for i in range(n):
                if i != t and any(a[i][t]):
                    f = a[i][t]
                    a[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(a[i], a[t])]
        return RingMatrix.from_rows(ring, [r[n:] for r in a], n)

    def determinant(self) -> RingElement:
        if not self.is_square:
            raise ValueError("Determinant of a non-square matrix")
        ring = self.ring
        a = self.to_rows()
        n = self.rows
        det = ring.one
        for t in range(n):
            pivot = next((i for i in range(t, n) if ring.is_unit(a[i][t])), None)
            if pivot is None:
                # No unit pivot left: expand the remaining (small) block directly
                return ring.mul(det, _cofactor_determinant(ring, [r[t:] for r in a[t:]]))
            if pivot != t:
                a[t], a[pivot] = a[pivot], a[t]
                det = ring.neg(det)
            det = ring.mul(det, a[t][t])
            inv = ring.inverse(a[t][t])
            for i in range(t + 1, n):
                if any(a[i][t]):
                    f = ring.mul(a[i][t], inv)
                    a[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(a[i], a[t])]
        return det

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RingMatrix":
        return RingMatrix(self.ring, len(rows), len(cols), tuple(self[i, j] for i in rows for j in cols))


def _cofactor_determinant(ring: GaloisRing, a: list[list[RingElement]]) -> RingElement:
    n = len(a)
    if n == 0:
        return ring.one
    if n == 1:
        return a[0][0]
    det = ring.zero
    for j in range(n):
        if any(a[0][j]):
            minor = [r[:j] + r[j + 1:] for r in a[1:]]
            term = ring.mul(a[0][j], _cofactor_determinant(ring, minor))
            det = ring.add(det, term) if j % 2 == 0 else ring.sub(det, term)
    return det


# --- linear systems ---------------------------------------------------------------------------------

@dataclass(frozen=True)
class KernelGenerator:
    """A generator of the homogeneous solution module together with its additive order p^exponent."""
    vector: tuple[RingElement, ...]
    exponent: int


@dataclass(frozen=True)
class SolveResult:
    """
    Solution set of a * x = b over a Galois ring.

    Args:
        solvable: False when b is not in the image of a
        particular: one solution (None when unsolvable)
        kernel: generators of {x : a * x = 0} with their orders
        pivot_valuations: valuations of the elementary divisors of a (the nonzero ones)
        precision: k of the ring
    """
    solvable: bool
    particular: tuple[RingElement, ...] | None
    kernel: tuple[KernelGenerator, ...]
    pivot_valuations: tuple[int, ...]
    precision: int

    @property
    def free_rank(self) -> int:
        return sum(1 for g in self.kernel if g.exponent == self.precision)

    @property
    def kernel_is_free(self) -> bool:
        return all(g.exponent == self.precision for g in self.kernel)

    @property
    def kernel_invariants(self) -> tuple[int, ...]:
        """Exponents of the cyclic factors of the homogeneous module, sorted."""
        return tuple(sorted(g.exponent for g in self.kernel))


@dataclass
class _Elimination:
    valuations: list[int]
    rhs: list[list[RingElement]]
    column_transform: list[list[RingElement]]


def _local_smith(ring: GaloisRing, a: list[list[RingElement]], ncols: int,
                 rhs: list[list[RingElement]] | None = None) -> _Elimination:
    """
    Diagonalizes a in place by row and column operations: afterwards a = diag(p^v_0, ..., p^v_{r-1}, 0, ...).
    Row operations are applied to rhs, column operations are accumulated in the returned column transform.
    """
    m = len(a)
    rhs = [list(r) for r in rhs] if rhs is not None else [[] for _ in range(m)]
    v = [[ring.one if i == j else ring.zero for j in range(ncols)] for i in range(ncols)]
    valuations = []
    t = 0
    while t < min(m, ncols):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, ncols):
                x = row[j]
                if not any(x):
                    continue
                val = ring.valuation(x)
                if best is None or val < best[0]:
                    best = (val, i, j)
                    if val == 0:
                        break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        val, pi, pj = best
        a[t], a[pi] = a[pi], a[t]
        rhs[t], rhs[pi] = rhs[pi], rhs[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
            for row in v:
                row[t], row[pj] = row[pj], row[t]
        # Normalize the pivot to p^val
        unit = ring.divide_by_p_power(a[t][t], val)
        inv = ring.inverse(unit)
        a[t] = [ring.mul(inv, x) for x in a[t]]
        rhs[t] = [ring.mul(inv, x) for x in rhs[t]]
        for i in range(m):
            if i != t and any(a[i][t]):
                f = ring.divide_by_p_power(a[i][t], val)
                a[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(a[i], a[t])]
                rhs[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(rhs[i], rhs[t])]
        for j in range(t + 1, ncols):
            if any(a[t][j]):
                f = ring.divide_by_p_power(a[t][j], val)
                a[t][j] = ring.zero
                for row in v:
                    row[j] = ring.sub(row[j], ring.mul(f, row[t]))
        valuations.append(val)
        t += 1
    return _Elimination(valuations=valuations, rhs=rhs, column_transform=v)


def _kernel_generators(ring: GaloisRing, elim: _Elimination, ncols: int) -> list[KernelGenerator]:
    v = elim.column_transform
    gens = []
    for i, val in enumerate(elim.valuations):
        if val > 0:
            scale = ring.p ** (ring.k - val)
            gens.append(KernelGenerator(tuple(ring.scale(v[r][i], scale) for r in range(ncols)), val))
    for j in range(len(elim.valuations), ncols):
        gens.append(KernelGenerator(tuple(v[r][j] for r in range(ncols)), ring.k))
    return gens


def linear_solve_mod(ring: GaloisRing, a: RingMatrix, b: RingMatrix) -> SolveResult:
    """
    Solves a * x = b over a Galois ring.

    Args:
        ring: coefficient ring (must be the ring of a and b)
        a: m x n coefficient matrix
        b: m x 1 right-hand side
    Returns:
        SolveResult; never raises for unsolvable systems
    """
    if a.ring != ring or b.ring != ring:
        raise ValueError("Operands are not matrices over the given ring")
    if b.rows != a.rows or b.cols != 1:
        raise ValueError(f"Right-hand side must be {a.rows}x1, got {b.rows}x{b.cols}")
    n = a.cols
    elim = _local_smith(ring, a.to_rows(), n, b.to_rows())
    kernel = tuple(_kernel_generators(ring, elim, n))
    valuations = tuple(elim.valuations)
    y = [ring.zero] * n
    for i, val in enumerate(elim.valuations):
        entry = elim.rhs[i][0]
        if ring.valuation(entry) < val:
            return SolveResult(False, None, kernel, valuations, ring.k)
        y[i] = ring.divide_by_p_power(entry, val)
    if any(any(elim.rhs[i][0]) for i in range(len(elim.valuations), a.rows)):
        return SolveResult(False, None, kernel, valuations, ring.k)
    v = elim.column_transform
    x = []
    for r in range(n):
        acc = ring.zero
        for i in range(len(elim.valuations)):
            if any(y[i]) and any(v[r][i]):
                acc = ring.add(acc, ring.mul(v[r][i], y[i]))
        x.append(acc)
    return SolveResult(True, tuple(x), kernel, valuations, ring.k)


def homogeneous_solutions(a: RingMatrix) -> SolveResult:
    """Solution module of a * x = 0."""
    return linear_solve_mod(a.ring, a, RingMatrix.zeros(a.ring, a.rows, 1))


def nullspace(a: RingMatrix) -> list[tuple[RingElement, ...]]:
    """Free generators of {x : a * x = 0}; over a field this is a basis of the kernel."""
    return [g.vector for g in homogeneous_solutions(a).kernel if g.exponent == a.ring.k]


def rank(a: RingMatrix) -> int:
    """Number of unit elementary divisors (the rank for matrices over a field)."""
    if a.rows == 0 or a.cols == 0:
        return 0
    elim = _local_smith(a.ring, a.to_rows(), a.cols)
    return sum(1 for val in elim.valuations if val == 0)


def elementary_valuations(a: RingMatrix) -> tuple[int, ...]:
    """Valuations of all min(rows, cols) elementary divisors of a, with zero divisors reported as k."""
    elim = _local_smith(a.ring, a.to_rows(), a.cols)
    size = min(a.rows, a.cols)
    return tuple(sorted(elim.valuations + [a.ring.k] * (size - len(elim.valuations))))


def free_image_rank(a: RingMatrix) -> tuple[int, bool]:
    """Rank of the image module of a and whether that image is a free module (all divisors units or zero)."""
    vals = elementary_valuations(a)
    k = a.ring.k
    return sum(1 for v in vals if v == 0), all(v in (0, k) for v in vals)


def column_basis(a: RingMatrix) -> list[int]:
    """Indices of a maximal set of columns that are independent over the residue field (pivot columns)."""
    field_matrix = a.reduce()
    ring = field_matrix.ring
    rows = field_matrix.to_rows()
    pivots = []
    t = 0
    for j in range(field_matrix.cols):
        pivot = next((i for i in range(t, len(rows)) if any(rows[i][j])), None)
        if pivot is None:
            continue
        rows[t], rows[pivot] = rows[pivot], rows[t]
        inv = ring.inverse(rows[t][j])
        rows[t] = [ring.mul(inv, x) for x in rows[t]]
        for i in range(len(rows)):
            if i != t and any(rows[i][j]):
                f = rows[i][j]
                rows[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(rows[i], rows[t])]
        pivots.append(j)
        t += 1
    return pivots


def intertwining_system(ring: GaloisRing, n: int, pairs: Iterable[tuple[RingMatrix, RingMatrix]]) -> RingMatrix:
    """
    Coefficient matrix of the conditions X * P = Q * X for (P, Q) in pairs, in the row-major
    unknowns vec(X) of an n x n matrix X. Commutants are the case P = Q.
    """
    equations = []
    for p_mat, q_mat in pairs:
        for i in range(n):
            for j in range(n):
                row = [ring.zero] * (n * n)
                for b in range(n):
                    # (X P)_{ij} = sum_b X_{ib} P_{bj}
                    row[i * n + b] = ring.add(row[i * n + b], p_mat[b, j])
                for a_ in range(n):
                    # (Q X)_{ij} = sum_a Q_{ia} X_{aj}
                    row[a_ * n + j] = ring.sub(row[a_ * n + j], q_mat[i, a_])
                equations.append(row)
    return RingMatrix(ring, len(equations), n * n, tuple(x for row in equations for x in row))


def matrix_from_vector(ring: GaloisRing, n: int, vector: Sequence[RingElement]) -> RingMatrix:
    return RingMatrix(ring, n, n, tuple(vector))


def span_dimension(matrices: Sequence[RingMatrix]) -> int:
    """Dimension over the (field) ring of the linear span of a list of square matrices."""
    if not matrices:
        return 0
    ring = matrices[0].ring
    stacked = RingMatrix(ring, len(matrices), len(matrices[0].entries), tuple(x for m in matrices for x in m.entries))
    return rank(stacked)


def hstack(ring: GaloisRing, blocks: Sequence[RingMatrix], rows: int) -> RingMatrix:
    """Side-by-side concatenation; an empty list gives a rows x 0 matrix."""
    columns = [b.column(j) for b in blocks for j in range(b.cols)]
    return RingMatrix.from_columns(ring, columns, rows)


def column_span(a: RingMatrix) -> RingMatrix:
    """The pivot columns of a: a basis of its column space when a is over a field."""
    return RingMatrix.from_columns(a.ring, [a.column(j) for j in column_basis(a)], a.rows) if a.cols \
        else a


def kernel_basis(a: RingMatrix) -> RingMatrix:
    """Free generators of {x : a * x = 0} as the columns of a matrix."""
    return RingMatrix.from_columns(a.ring, nullspace(a), a.cols)
