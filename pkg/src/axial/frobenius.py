"""Symmetric associative bilinear forms: solving, radicals, nilpotence audits.

A form is stored as its Gram matrix on the algebra basis.  Solving for a
form is one exact linear system in the n(n+1)/2 upper-triangle entries:
symmetry is built into the unknowns, associativity contributes one equation
per basis triple, and each normalization (x, x) = c contributes one more.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .errors import DimensionMismatch, FormInconsistent, SelfCheckFailed
from .linalg import Matrix, span_contains

__all__ = [
    "BilinearForm",
    "FormSolution",
    "solve_frobenius",
    "radical",
    "axial_radical",
    "is_4_nilpotent",
    "trace_admissibility_audit",
]


class BilinearForm:
    def __init__(self, algebra, gram, check=True):
        self.algebra = algebra
        self.gram = gram if isinstance(gram, Matrix) else Matrix(algebra.field, gram)
        if self.gram.nrows != algebra.dim or self.gram.ncols != algebra.dim:
            raise DimensionMismatch("Gram matrix does not match the algebra dimension")
        if check:
            self._check_symmetric()
            self._check_associative()

    def _check_symmetric(self):
        g = self.gram.rows
        for i in range(self.algebra.dim):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise SelfCheckFailed("Gram matrix is not symmetric")

    def _check_associative(self):
        A = self.algebra
        n = A.dim
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    lhs = self._form_of_product(A.structure[i][j], k)
                    rhs = self._form_of_product(A.structure[j][k], i)
                    if lhs != rhs:
                        raise SelfCheckFailed(
                            f"(b{i}b{j}, b{k}) != (b{i}, b{j}b{k}): form is not associative"
                        )

    def _form_of_product(self, coeffs, k):
        acc = self.algebra.field.zero
        for m, c in enumerate(coeffs):
            if c:
                acc = acc + c * self.gram.rows[m][k]
        return acc

    def value(self, x, y):
        acc = self.algebra.field.zero
        g = self.gram.rows
        for i, xi in enumerate(x.coeffs):
            if not xi:
                continue
            for j, yj in enumerate(y.coeffs):
                if yj:
                    acc = acc + xi * yj * g[i][j]
        return acc

    def __eq__(self, other):
        return isinstance(other, BilinearForm) and self.algebra == other.algebra and self.gram == other.gram

    def restrict(self, subalgebra):
        """Induced form on a subalgebra basis."""
        field = self.algebra.field
        rows = [
            [self.value(u, v) for v in subalgebra.basis]
            for u in subalgebra.basis
        ]
        return BilinearForm(subalgebra.induced, Matrix(field, rows))

    def __repr__(self):
        return f"BilinearForm(dim={self.algebra.dim})"


@dataclass
class FormSolution:
    particular: BilinearForm | None
    homogeneous_basis: list

    @property
    def unique(self):
        return self.particular is not None and not self.homogeneous_basis


def _upper_index(n):
    """Map (i, j) with i <= j to the flat unknown index."""
    idx = {}
    c = 0
    for i in range(n):
        for j in range(i, n):
            idx[(i, j)] = c
            c += 1
    return idx, c


def solve_frobenius(A, normalize_at=(), require=False):
    """All symmetric associative forms meeting the normalization constraints.

    Returns the affine family: a particular form (None when the constraints
    are inconsistent) plus a basis of the homogeneous solution space, each
    member packaged as a symmetric matrix.  With require=True an
    inconsistent system raises FormInconsistent instead.
    """
    field = A.field
    n = A.dim
    idx, nunk = _upper_index(n)

    def g_coeff(row, i, j, c):
        if not c:
            return
        key = idx[(i, j) if i <= j else (j, i)]
        row[key] = row[key] + c

    rows, rhs = [], []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                row = [field.zero] * nunk
                for m, c in enumerate(A.structure[i][j]):
                    g_coeff(row, m, k, c)
                for m, c in enumerate(A.structure[j][k]):
                    g_coeff(row, i, m, -c)
                if any(row):
                    rows.append(row)
                    rhs.append(field.zero)
    for x, target in normalize_at:
        row = [field.zero] * nunk
        for i, xi in enumerate(x.coeffs):
            if not xi:
                continue
            for j, xj in enumerate(x.coeffs):
                if xj:
                    g_coeff(row, i, j, xi * xj)
        rows.append(row)
        rhs.append(target)

    if rows:
        m = Matrix(field, rows)
        particular_vec = m.solve(rhs)
        hom_vecs = m.kernel()
    else:
        particular_vec = [field.zero] * nunk
        hom_vecs = Matrix.identity(field, nunk).kernel() if nunk == 0 else [
            [field.one if t == s else field.zero for t in range(nunk)] for s in range(nunk)
        ]

    def unflatten(vec):
        g = [[field.zero] * n for _ in range(n)]
        for (i, j), key in idx.items():
            g[i][j] = vec[key]
            g[j][i] = vec[key]
        return Matrix(field, g)

    if particular_vec is None:
        if require:
            raise FormInconsistent("no associative symmetric form satisfies the normalization")
        particular = None
    else:
        particular = BilinearForm(A, unflatten(particular_vec))
    homogeneous = [unflatten(v) for v in hom_vecs]
    return FormSolution(particular=particular, homogeneous_basis=homogeneous)


def radical(form):
    """Kernel of the Gram matrix, verified to be an ideal of the algebra."""
    A = form.algebra
    vecs = form.gram.kernel()
    rad = [A.element(v) for v in vecs]
    rad_coeffs = [r.coeffs for r in rad]
    for r in rad:
        for b in A.basis():
            if not span_contains(A.field, rad_coeffs, (r * b).coeffs):
                raise SelfCheckFailed("form kernel is not an ideal")  # impossible for associative forms
    return rad


def axial_radical(A, axes, lam):
    """Intersection over the given axes of ker(L_a - lam).

    An empty basis certifies nonsingularity with respect to the axis set.
    With no axes at all the intersection convention yields the whole space;
    a warning is emitted because that carries no information.
    """
    field = A.field
    if not axes:
        warnings.warn("axial radical of an empty axis set is the whole space", stacklevel=2)
        return A.basis()
    rows = []
    eye = Matrix.identity(field, A.dim)
    for a in axes:
        L = a.left_multiplication_matrix()
        rows.extend((L - eye.scaled(lam)).rows)
    stacked = Matrix(field, rows)
    return [A.element(v) for v in stacked.kernel()]


def is_4_nilpotent(y):
    """y^3*y = 0 and y^2*y^2 = 0, with y^3 = y^2*y."""
    y2 = y * y
    y3 = y2 * y
    return (y3 * y).is_zero() and (y2 * y2).is_zero()


@dataclass
class TraceAuditReport:
    checked_pairs: int
    nilpotent_products: int
    violations: list

    @property
    def passed(self):
        return not self.violations


def trace_admissibility_audit(A, form, pairs=None):
    """Weak trace-admissibility: whenever x*y is 4-nilpotent, (x, y) must be 0.

    With pairs omitted, audits all unordered basis pairs.
    """
    if pairs is None:
        basis = A.basis()
        pairs = [(basis[i], basis[j]) for i in range(A.dim) for j in range(i, A.dim)]
    violations = []
    nil = 0
    for x, y in pairs:
        if is_4_nilpotent(x * y):
            nil += 1
            if form.value(x, y):
                violations.append((x, y))
    return TraceAuditReport(checked_pairs=len(pairs), nilpotent_products=nil, violations=violations)
