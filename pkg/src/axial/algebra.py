"""Structure-constant commutative algebras and their elements.

An algebra is a field, a basis of named vectors, and the full symmetric grid
of structure constants: ``structure[i][j]`` is the coefficient tuple of
``b_i * b_j``.  Elements are coefficient tuples over the field and support
``+``, ``-``, scalar ``*`` and the (commutative, bilinear) algebra product.
"""

from __future__ import annotations

from .errors import AlgebraMismatch, AsymmetricStructure, DimensionMismatch
from .linalg import Matrix, span_contains

__all__ = ["Algebra", "Element", "Subalgebra", "make_algebra", "generate_subalgebra"]


class Algebra:
    def __init__(self, field, basis_names, structure):
        self.field = field
        self.basis_names = list(basis_names)
        self.dim = len(self.basis_names)
        if len(structure) != self.dim:
            raise DimensionMismatch("structure grid has wrong number of rows")
        struct = []
        for i, row in enumerate(structure):
            if len(row) != self.dim:
                raise DimensionMismatch(f"structure row {i} has wrong length")
            srow = []
            for j, coeffs in enumerate(row):
                if len(coeffs) != self.dim:
                    raise DimensionMismatch(f"structure[{i}][{j}] has wrong length")
                srow.append(tuple(coeffs))
            struct.append(srow)
        for i in range(self.dim):
            for j in range(i):
                if struct[i][j] != struct[j][i]:
                    raise AsymmetricStructure(
                        f"b_{i}*b_{j} != b_{j}*b_{i} "
                        f"({self.basis_names[i]}, {self.basis_names[j]})"
                    )
        self.structure = struct
        # sparse view of the grid; product loops only touch nonzero entries,
        # and coefficient-1 entries are kept separate to skip multiplications
        one = field.one
        self._sparse = [
            [
                (
                    tuple(k for k, c in enumerate(row) if c == one),
                    tuple((k, c) for k, c in enumerate(row) if c and c != one),
                )
                for row in srow
            ]
            for srow in struct
        ]

    def element(self, coeffs):
        return Element(self, coeffs)

    def basis_element(self, i):
        zero, one = self.field.zero, self.field.one
        return Element(self, [one if j == i else zero for j in range(self.dim)])

    def basis(self):
        return [self.basis_element(i) for i in range(self.dim)]

    def zero(self):
        return Element(self, [self.field.zero] * self.dim)

    def parse_element(self, texts):
        if len(texts) != self.dim:
            raise DimensionMismatch(f"expected {self.dim} coefficients, got {len(texts)}")
        return Element(self, [self.field.parse(t) for t in texts])

    def unit(self):
        """The identity element if one exists, else None (solved linearly)."""
        cols = []
        rhs = []
        n = self.dim
        for j in range(n):
            col = []
            for i in range(n):
                col.extend(self.structure[j][i])  # u = sum u_j b_j:  sum_j u_j (b_j b_i) = b_i
            cols.append(col)
        for i in range(n):
            for k in range(n):
                rhs.append(self.field.one if k == i else self.field.zero)
        sol = Matrix.from_columns(self.field, cols).solve(rhs)
        return None if sol is None else Element(self, sol)

    def __eq__(self, other):
        return (
            isinstance(other, Algebra)
            and self.field == other.field
            and self.basis_names == other.basis_names
            and self.structure == other.structure
        )

    def __hash__(self):
        return hash((tuple(self.basis_names), self.dim))

    def __repr__(self):
        return f"Algebra(dim={self.dim}, basis={self.basis_names}, field={self.field!r})"


def make_algebra(field, dim, basis_names, structure):
    """Validated constructor mirroring the external JSON layout."""
    if len(basis_names) != dim:
        raise DimensionMismatch("basis name count differs from dim")
    return Algebra(field, basis_names, structure)


class Element:
    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != algebra.dim:
            raise DimensionMismatch("coefficient tuple has wrong length")
        self.algebra = algebra
        self.coeffs = coeffs

    def _same(self, other):
        if not isinstance(other, Element) or other.algebra is not self.algebra:
            if isinstance(other, Element) and other.algebra == self.algebra:
                return  # structurally equal algebras are fine
            raise AlgebraMismatch("elements belong to different algebras")

    def __add__(self, other):
        self._same(other)
        return Element(self.algebra, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._same(other)
        return Element(self.algebra, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return Element(self.algebra, [-a for a in self.coeffs])

    def __rmul__(self, scalar):
        if isinstance(scalar, Element):
            return NotImplemented
        return Element(self.algebra, [scalar * a for a in self.coeffs])

    def __mul__(self, other):
        """The algebra product (bilinear extension of the structure grid)."""
        if not isinstance(other, Element):
            return Element(self.algebra, [a * other for a in self.coeffs])
        self._same(other)
        A = self.algebra
        out = [A.field.zero] * A.dim
        for i, xi in enumerate(self.coeffs):
            if not xi:
                continue
            row = A._sparse[i]
            for j, yj in enumerate(other.coeffs):
                if not yj:
                    continue
                c = xi * yj
                units, others = row[j]
                for k in units:
                    out[k] = out[k] + c
                for k, s in others:
                    out[k] = out[k] + c * s
        return Element(A, out)

    def __eq__(self, other):
        return isinstance(other, Element) and self.algebra == other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self):
        return not any(self.coeffs)

    def left_multiplication_matrix(self):
        """Matrix M with M @ coords(y) = coords(self * y)."""
        A = self.algebra
        cols = [(self * A.basis_element(j)).coeffs for j in range(A.dim)]
        return Matrix.from_columns(A.field, [list(c) for c in cols])

    def format(self):
        return [self.algebra.field.format(c) for c in self.coeffs]

    def __repr__(self):
        names = self.algebra.basis_names
        f = self.algebra.field
        parts = [f"{f.format(c)}*{n}" for c, n in zip(self.coeffs, names) if c]
        return "El(" + (" + ".join(parts) if parts else "0") + ")"


def multiply(x, y):
    """Operation-contract alias for the element product."""
    return x * y


def left_multiplication_matrix(a):
    return a.left_multiplication_matrix()


class Subalgebra:
    """A multiplicatively closed span inside a parent algebra.

    ``basis`` is a list of parent elements; ``words`` records, per basis
    member, the generator word that produced it; ``induced`` is the algebra
    the basis carries by restriction.
    """

    def __init__(self, parent, basis, words, induced):
        self.parent = parent
        self.basis = basis
        self.words = words
        self.induced = induced
        self.dim = len(basis)
        self._basis_matrix = Matrix.from_columns(parent.field, [list(b.coeffs) for b in basis])

    def coords(self, element):
        """Coordinates of a parent element in the subalgebra basis, or None."""
        sol = self._basis_matrix.solve(list(element.coeffs))
        return None if sol is None else self.induced.element(sol)

    def embed(self, element):
        """Map an induced-algebra element back into the parent."""
        acc = self.parent.zero()
        for c, b in zip(element.coeffs, self.basis):
            if c:
                acc = acc + c * b
        return acc

    def contains(self, element):
        return span_contains(self.parent.field, [b.coeffs for b in self.basis], element.coeffs)

    def __repr__(self):
        return f"Subalgebra(dim={self.dim}, words={[_word_str(w) for w in self.words]})"


def _word_str(word):
    if isinstance(word, int):
        return f"g{word}"
    l, r = word
    return f"({_word_str(l)}*{_word_str(r)})"


def _word_len(word):
    if isinstance(word, int):
        return 1
    return _word_len(word[0]) + _word_len(word[1])


def generate_subalgebra(gens):
    """Smallest multiplicatively closed subspace containing the generators.

    Iterates span <- span + span*span to a fixed point.  Basis ordering is
    breadth-first by word length with ties broken by first discovery, so the
    output is deterministic.  Zero or duplicate generators are simply
    absorbed by the span.
    """
    if not gens:
        raise ValueError("empty generator list")
    parent = gens[0].algebra
    field = parent.field
    basis = []
    words = []

    def try_add(elem, word):
        if elem.is_zero():
            return False
        if span_contains(field, [b.coeffs for b in basis], elem.coeffs):
            return False
        basis.append(elem)
        words.append(word)
        return True

    for i, g in enumerate(gens):
        if g.algebra != parent:
            raise AlgebraMismatch("generators belong to different algebras")
        try_add(g, i)

    # products of known basis members, breadth-first over word length
    frontier = list(range(len(basis)))
    while frontier:
        new_items = []
        pairs = [
            (i, j)
            for i in range(len(basis))
            for j in range(len(basis))
            if i <= j and (i in frontier or j in frontier)
        ]
        pairs.sort(key=lambda ij: (_word_len(words[ij[0]]) + _word_len(words[ij[1]]), ij))
        start = len(basis)
        for i, j in pairs:
            if try_add(basis[i] * basis[j], (words[i], words[j])):
                new_items.append(len(basis) - 1)
        frontier = list(range(start, len(basis)))

    # order final basis by (word length, discovery index); discovery already
    # respects it because products only grow word length
    induced = _induced_algebra(parent, basis, words)
    return Subalgebra(parent, basis, words, induced)


def _induced_algebra(parent, basis, words):
    field = parent.field
    m = Matrix.from_columns(field, [list(b.coeffs) for b in basis])
    n = len(basis)
    structure = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = basis[i] * basis[j]
            sol = m.solve(list(prod.coeffs))
            if sol is None:
                raise AsymmetricStructure("span is not multiplicatively closed")  # unreachable
            row.append(tuple(sol))
        structure.append(row)
    names = [_word_str(w) for w in words]
    return Algebra(field, names, structure)
