"""Exact dense linear algebra over a scalar field.

Everything is plain Gaussian elimination on field values; no pivoting
heuristics are needed because arithmetic is exact.
"""

from __future__ import annotations

from .errors import DimensionMismatch
from .fields import poly_trim

__all__ = [
    "Matrix",
    "rref",
    "kernel",
    "minimal_polynomial",
    "span_contains",
    "span_rank",
]


class Matrix:
    """Immutable-by-convention dense matrix with entries in one field."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field, rows):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise DimensionMismatch("ragged matrix rows")

    @classmethod
    def identity(cls, field, n):
        one, zero = field.one, field.zero
        return cls(field, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field, nrows, ncols):
        zero = field.zero
        return cls(field, [[zero] * ncols for _ in range(nrows)])

    @classmethod
    def from_columns(cls, field, cols):
        if not cols:
            return cls(field, [])
        return cls(field, [[c[i] for c in cols] for i in range(len(cols[0]))])

    def column(self, j):
        return [r[j] for r in self.rows]

    def transpose(self):
        return Matrix(self.field, [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)])

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and all(self.rows[i][j] == other.rows[i][j] for i in range(self.nrows) for j in range(self.ncols))
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field!r})"

    def is_zero(self):
        return all(not e for r in self.rows for e in r)

    def __add__(self, other):
        self._compat(other)
        return Matrix(self.field, [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._compat(other)
        return Matrix(self.field, [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix(self.field, [[-a for a in r] for r in self.rows])

    def scaled(self, c):
        return Matrix(self.field, [[c * a for a in r] for r in self.rows])

    def _compat(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise DimensionMismatch("matrix shapes differ")

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise DimensionMismatch("inner dimensions differ")
        zero = self.field.zero
        out = []
        for i in range(self.nrows):
            row = []
            ri = self.rows[i]
            for j in range(other.ncols):
                acc = zero
                for k in range(self.ncols):
                    a = ri[k]
                    if a:
                        acc = acc + a * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return Matrix(self.field, out)

    def apply(self, vec):
        """Matrix-vector product; vec is a sequence of field values."""
        if len(vec) != self.ncols:
            raise DimensionMismatch("vector length differs from column count")
        zero = self.field.zero
        out = []
        for r in self.rows:
            acc = zero
            for a, v in zip(r, vec):
                if a and v:
                    acc = acc + a * v
            out.append(acc)
        return out

    # -- elimination ------------------------------------------------------

    def rref(self):
        """Reduced row-echelon form: (matrix, pivot columns, rank)."""
        rows = [list(r) for r in self.rows]
        pivots = []
        pr = 0
        for pc in range(self.ncols):
            pivot_row = None
            for i in range(pr, self.nrows):
                if rows[i][pc]:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            rows[pr], rows[pivot_row] = rows[pivot_row], rows[pr]
            inv = self.field.one / rows[pr][pc]
            rows[pr] = [inv * b for b in rows[pr]]
            for i in range(self.nrows):
                if i != pr and rows[i][pc]:
                    f = rows[i][pc]
                    rows[i] = [b - f * c for b, c in zip(rows[i], rows[pr])]
            pivots.append(pc)
            pr += 1
            if pr == self.nrows:
                break
        return Matrix(self.field, rows), tuple(pivots), len(pivots)

    def kernel(self):
        """Basis of the right null space, one vector per free column."""
        red, pivots, rank = self.rref()
        free = [c for c in range(self.ncols) if c not in pivots]
        basis = []
        zero, one = self.field.zero, self.field.one
        for fc in free:
            v = [zero] * self.ncols
            v[fc] = one
            for i, pc in enumerate(pivots):
                v[pc] = -red.rows[i][fc]
            basis.append(v)
        return basis

    def solve(self, rhs):
        """One solution of self @ x = rhs, or None when inconsistent."""
        if len(rhs) != self.nrows:
            raise DimensionMismatch("rhs length differs from row count")
        aug = Matrix(self.field, [self.rows[i] + [rhs[i]] for i in range(self.nrows)])
        red, pivots, rank = aug.rref()
        if self.ncols in pivots:
            return None
        zero = self.field.zero
        x = [zero] * self.ncols
        for i, pc in enumerate(pivots):
            x[pc] = red.rows[i][self.ncols]
        return x

    def det(self):
        if self.nrows != self.ncols:
            raise DimensionMismatch("determinant of a non-square matrix")
        rows = [list(r) for r in self.rows]
        n = self.nrows
        det = self.field.one
        for c in range(n):
            pr = None
            for i in range(c, n):
                if rows[i][c]:
                    pr = i
                    break
            if pr is None:
                return self.field.zero
            if pr != c:
                rows[c], rows[pr] = rows[pr], rows[c]
                det = -det
            det = det * rows[c][c]
            inv = self.field.one / rows[c][c]
            for i in range(c + 1, n):
                if rows[i][c]:
                    f = rows[i][c] * inv
                    rows[i] = [b - f * p for b, p in zip(rows[i], rows[c])]
        return det

    def rank(self):
        return self.rref()[2]


def rref(m):
    """Module-level form of Matrix.rref, matching the operation contract."""
    return m.rref()


def kernel(m):
    return m.kernel()


def minimal_polynomial(m):
    """Monic minimal polynomial of a square matrix, low degree first.

    Computed as the first linear dependence among the flattened powers
    I, M, M^2, ...; the result annihilates M exactly.
    """
    if m.nrows != m.ncols:
        raise DimensionMismatch("minimal polynomial of a non-square matrix")
    field = m.field
    n = m.nrows
    if n == 0:
        return (field.one,)
    powers = [Matrix.identity(field, n)]
    flat = [[e for row in powers[0].rows for e in row]]
    while True:
        nxt = powers[-1] @ m
        target = [e for row in nxt.rows for e in row]
        coeff_matrix = Matrix.from_columns(field, flat)
        sol = coeff_matrix.solve(target)
        if sol is not None:
            # M^k = sum sol_i M^i  =>  minpoly = x^k - sum sol_i x^i
            coeffs = [-c for c in sol] + [field.one]
            return poly_trim(field, coeffs) or (field.one,)
        powers.append(nxt)
        flat.append(target)


def span_contains(field, span_vectors, target):
    """Is target in the linear span of span_vectors? Exact rref membership."""
    if all(not c for c in target):
        return True
    if not span_vectors:
        return False
    m = Matrix.from_columns(field, list(span_vectors))
    return m.solve(list(target)) is not None


def span_rank(field, vectors):
    if not vectors:
        return 0
    return Matrix(field, [list(v) for v in vectors]).rank()
