"""Certification machinery for a single idempotent.

The central object is the left-multiplication operator L_a of a candidate
idempotent a.  An axis of type lam is an idempotent whose L_a is annihilated
by x(x-1)(x-lam), equivalently whose eigenspaces for {0, 1, lam} decompose
the algebra.  On top of the decomposition sit the fusion-rule verdicts, the
component-recovery closed forms, and the eigenvalue-flip involution
tau_a = 1 - 2*(projection onto the lam-eigenspace).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield

from .algebra import Algebra, Element
from .errors import (
    BadLambda,
    IncompleteDecomposition,
    NotAnAxis,
    NotIdempotent,
    OrbitOverflow,
    SingularVandermonde,
)
from .linalg import Matrix, minimal_polynomial, span_contains
from .fields import poly_divides, poly_is_squarefree, poly_trim

__all__ = [
    "EigenData",
    "FusionVerdicts",
    "AxisReport",
    "MiyamotoMap",
    "is_idempotent",
    "eigen_decompose",
    "check_axis",
    "check_fusion",
    "component_recovery",
    "miyamoto",
    "axis_orbit",
    "seress_check",
    "infer_lambda",
]


def is_idempotent(x):
    return x * x == x


@dataclass
class EigenData:
    axis: Element
    eigenvalues: list
    eigenspaces: dict
    complete: bool

    def space(self, mu):
        return self.eigenspaces.get(mu, [])

    def space_01(self):
        field = self.axis.algebra.field
        return self.space(field.zero) + self.space(field.one)

    def dim_of(self, mu):
        return len(self.eigenspaces.get(mu, []))


def eigen_decompose(a):
    """Eigenvalues of L_a lying in the field, with exact eigenspace bases.

    The eigenvalues are the in-field roots of the minimal polynomial of L_a;
    complete is set when the eigenspace dimensions sum to dim A.
    """
    if not is_idempotent(a):
        raise NotIdempotent("eigen decomposition requires an idempotent")
    A = a.algebra
    field = A.field
    L = a.left_multiplication_matrix()
    mp = minimal_polynomial(L)
    roots = field.poly_roots(list(mp))
    roots.sort(key=field.format)
    spaces = {}
    total = 0
    eye = Matrix.identity(field, A.dim)
    for mu in roots:
        vecs = (L - eye.scaled(mu)).kernel()
        basis = [A.element(v) for v in vecs]
        spaces[mu] = basis
        total += len(basis)
    return EigenData(axis=a, eigenvalues=roots, eigenspaces=spaces, complete=(total == A.dim))


@dataclass
class FusionVerdicts:
    a01_subalgebra: bool
    module_rule: bool
    pre_jordan: bool
    jordan_a0: bool

    @property
    def all_jordan(self):
        return self.a01_subalgebra and self.module_rule and self.pre_jordan and self.jordan_a0

    @property
    def all_pre_jordan(self):
        return self.a01_subalgebra and self.module_rule and self.pre_jordan


@dataclass
class AxisReport:
    element: Element
    lam: object
    is_idempotent: bool
    spectrum: tuple
    semisimple: bool
    is_axis: bool
    primitive: bool
    ax1_holds: bool
    fusion: FusionVerdicts | None
    miyamoto_is_automorphism: bool | None
    eigen: EigenData | None = dfield(default=None, repr=False)

    @property
    def is_jordan_axis(self):
        return self.is_axis and self.fusion is not None and self.fusion.all_jordan

    @property
    def is_primitive_jordan_axis(self):
        return self.is_jordan_axis and self.primitive


def _axis_cubic(field, lam):
    """Coefficients of x(x-1)(x-lam) = lam*x - (1+lam)*x^2 + x^3."""
    one = field.one
    return (field.zero, lam, -(one + lam), one)


def check_axis(a, lam):
    """Full certification record for the candidate a at target eigenvalue lam.

    The annihilator route (L^3 = (lam+1)L^2 - lam L, the composed form of the
    recovery identities) and the semisimplicity route (squarefree minimal
    polynomial dividing x(x-1)(x-lam) with complete eigenspaces) must agree;
    this is asserted, not assumed.
    """
    A = a.algebra
    field = A.field
    if lam == field.zero or lam == field.one:
        raise BadLambda("the axis eigenvalue must avoid 0 and 1")
    if not is_idempotent(a):
        return AxisReport(
            element=a, lam=lam, is_idempotent=False, spectrum=(), semisimple=False,
            is_axis=False, primitive=False, ax1_holds=False, fusion=None,
            miyamoto_is_automorphism=None, eigen=None,
        )
    L = a.left_multiplication_matrix()
    mp = minimal_polynomial(L)
    semisimple = poly_is_squarefree(field, mp)
    cubic = _axis_cubic(field, lam)
    divides = poly_divides(field, mp, cubic)

    # L^3 - (1+lam) L^2 + lam L = 0 as matrices
    L2 = L @ L
    L3 = L2 @ L
    ax1 = (L3 - L2.scaled(field.one + lam) + L.scaled(lam)).is_zero()
    assert ax1 == divides, "annihilator and minimal-polynomial routes disagree"

    eigen = eigen_decompose(a)
    is_axis = divides and eigen.complete
    primitive = is_axis and eigen.dim_of(field.one) == 1
    fusion = None
    miy_auto = None
    if is_axis:
        fusion = check_fusion(a, lam, eigen)
        miy_auto = miyamoto(a, lam, _eigen=eigen).is_automorphism
    return AxisReport(
        element=a, lam=lam, is_idempotent=True,
        spectrum=tuple(eigen.eigenvalues), semisimple=semisimple,
        is_axis=is_axis, primitive=primitive, ax1_holds=ax1,
        fusion=fusion, miyamoto_is_automorphism=miy_auto, eigen=eigen,
    )


def check_fusion(a, lam, eigen=None):
    """Fusion verdicts by exhaustive multiplication of eigenspace bases.

    (a) A01 closed, (b) A01 * A_lam in A_lam, (c) A_lam * A_lam in A01,
    (d) A0 * A0 in A0.  Membership is an exact rref solve.
    """
    A = a.algebra
    field = A.field
    if eigen is None:
        eigen = eigen_decompose(a)
    allowed = {field.zero, field.one, lam}
    if not eigen.complete or any(mu not in allowed for mu in eigen.eigenvalues):
        raise IncompleteDecomposition(
            "fusion check requires a complete decomposition with spectrum in {0, 1, lam}"
        )
    a01 = eigen.space_01()
    alam = eigen.space(lam)
    a0 = eigen.space(field.zero)

    def contained(products, span):
        span_coeffs = [v.coeffs for v in span]
        return all(span_contains(field, span_coeffs, p.coeffs) for p in products)

    closed_01 = contained([u * v for i, u in enumerate(a01) for v in a01[i:]], a01)
    module_rule = contained([u * w for u in a01 for w in alam], alam)
    pre_jordan = contained([w * x for i, w in enumerate(alam) for x in alam[i:]], a01)
    jordan_a0 = contained([u * v for i, u in enumerate(a0) for v in a0[i:]], a0)
    return FusionVerdicts(closed_01, module_rule, pre_jordan, jordan_a0)


def _require_axis(a, eigenvalues_s):
    """a must be idempotent with minimal polynomial dividing x(x-1)*prod(x-mu)."""
    field = a.algebra.field
    if not is_idempotent(a):
        raise NotAnAxis("not an idempotent")
    L = a.left_multiplication_matrix()
    mp = minimal_polynomial(L)
    poly = (field.zero, field.one)  # x
    poly = _poly_mul_linear(field, poly, field.one)  # x(x-1)
    for mu in eigenvalues_s:
        poly = _poly_mul_linear(field, poly, mu)
    if not poly_divides(field, mp, poly):
        raise NotAnAxis("operator is not annihilated by the expected spectrum polynomial")


def _poly_mul_linear(field, p, root):
    """p(x) * (x - root)."""
    out = [field.zero] * (len(p) + 1)
    for i, c in enumerate(p):
        out[i + 1] = out[i + 1] + c
        out[i] = out[i] - root * c
    return poly_trim(field, out)


@dataclass
class Components:
    y1: Element
    y0: Element
    by_eigenvalue: dict

    def part(self, mu):
        return self.by_eigenvalue[mu]


def component_recovery(a, y, eigenvalues_s):
    """Recover y_1, y_0 and the y_mu for mu in S from powers of L_a.

    For S = {lam} this is the pair of closed forms
        y_1   = (a(ay) - lam*ay) / (1 - lam)
        y_lam = (a(ay) - ay) / (lam*(lam - 1))
    and in general the (t+1) x (t+1) power system in L_a^j y, j = 1..t+1,
    with matrix (mu_i^j) over mu in {1} + S, inverted exactly; y_0 is the
    remainder y - y_1 - sum y_mu.
    """
    field = a.algebra.field
    S = list(eigenvalues_s)
    seen = set()
    for mu in S:
        if mu == field.zero or mu == field.one:
            raise SingularVandermonde("S must avoid the special eigenvalues 0 and 1")
        if mu in seen:
            raise SingularVandermonde("repeated eigenvalue in S")
        seen.add(mu)
    _require_axis(a, S)

    one = field.one
    if len(S) == 1:
        lam = S[0]
        ay = a * y
        aay = a * ay
        y1 = (one / (one - lam)) * (aay - lam * ay)
        ylam = (one / (lam * (lam - one))) * (aay - ay)
        y0 = y - y1 - ylam
        return Components(y1=y1, y0=y0, by_eigenvalue={lam: ylam})

    mus = [one] + S
    t = len(mus)
    rows = []
    for j in range(1, t + 1):
        rows.append([_scalar_pow(field, mu, j) for mu in mus])
    V = Matrix(field, rows)
    powers = []
    cur = y
    for _ in range(t):
        cur = a * cur
        powers.append(cur)
    # solve V * (y_1, y_mu...) = (Ly, L^2 y, ...) coordinatewise
    n = a.algebra.dim
    comps = [a.algebra.zero() for _ in range(t)]
    for k in range(n):
        rhs = [p.coeffs[k] for p in powers]
        sol = V.solve(rhs)
        if sol is None:
            raise SingularVandermonde("power system is singular")
        for i in range(t):
            vec = list(comps[i].coeffs)
            vec[k] = sol[i]
            comps[i] = a.algebra.element(vec)
    y1 = comps[0]
    by_mu = {mu: comps[i + 1] for i, mu in enumerate(S)}
    y0 = y - y1
    for c in by_mu.values():
        y0 = y0 - c
    return Components(y1=y1, y0=y0, by_eigenvalue=by_mu)


def _scalar_pow(field, mu, j):
    acc = field.one
    for _ in range(j):
        acc = acc * mu
    return acc


@dataclass
class MiyamotoMap:
    matrix: Matrix
    axis: Element
    lam: object
    is_automorphism: bool

    def apply(self, y):
        return y.algebra.element(self.matrix.apply(list(y.coeffs)))

    def __call__(self, y):
        return self.apply(y)


def miyamoto(a, lam, _eigen=None):
    """The involution fixing A_{0,1}(a) pointwise and negating A_lam(a).

    Constructed as 1 - 2*p(L_a) with p the Lagrange projector onto lam inside
    the certified spectrum, so it is exact and basis-free.  The automorphism
    flag is decided on basis pairs (bilinearity makes that sufficient).
    """
    A = a.algebra
    field = A.field
    if lam == field.zero or lam == field.one:
        raise BadLambda("the flipped eigenvalue must avoid 0 and 1")
    _require_axis(a, [lam])
    eigen = _eigen if _eigen is not None else eigen_decompose(a)
    if not eigen.complete:
        raise NotAnAxis("decomposition is not complete")
    eye = Matrix.identity(field, A.dim)
    if lam not in eigen.eigenvalues:
        T = eye  # empty lam-eigenspace: tau is the identity
    else:
        L = a.left_multiplication_matrix()
        proj = eye
        denom = field.one
        for mu in eigen.eigenvalues:
            if mu == lam:
                continue
            proj = proj @ (L - eye.scaled(mu))
            denom = denom * (lam - mu)
        proj = proj.scaled(field.one / denom)
        T = eye - proj.scaled(field.from_int(2))
    assert (T @ T) == eye, "Miyamoto map is not an involution"
    is_auto = _is_algebra_automorphism(A, T)
    return MiyamotoMap(matrix=T, axis=a, lam=lam, is_automorphism=is_auto)


def _is_algebra_automorphism(A, T):
    n = A.dim
    images = [A.element(T.column(j)) for j in range(n)]
    for i in range(n):
        bi = A.basis_element(i)
        for j in range(i, n):
            lhs = A.element(T.apply(list((bi * A.basis_element(j)).coeffs)))
            if lhs != images[i] * images[j]:
                return False
    return True


def axis_orbit(axes, lam, max_size=1000):
    """Closure of the given axes under every member's Miyamoto map.

    Every input must be a certified lam-axis whose Miyamoto map is an
    automorphism; closure members are automorphism images of axes and are
    re-certified as their maps are built.  Raises OrbitOverflow with the
    partial orbit attached once the closure needs more than max_size members.
    """
    if not axes:
        raise ValueError("empty axis list")
    members = []
    keys = set()
    for a in axes:
        if not miyamoto(a, lam).is_automorphism:
            raise NotAnAxis("input Miyamoto map is not an automorphism")
        if a.coeffs not in keys:
            keys.add(a.coeffs)
            members.append(a)
    if len(members) > max_size:
        raise OrbitOverflow(f"more inputs than the cap {max_size}", partial=members)
    maps = {}
    changed = True
    while changed:
        changed = False
        for src in list(members):
            if src.coeffs not in maps:
                maps[src.coeffs] = miyamoto(src, lam)
            tau = maps[src.coeffs]
            for y in list(members):
                im = tau.apply(y)
                if im.coeffs not in keys:
                    if len(members) + 1 > max_size:
                        raise OrbitOverflow(
                            f"Miyamoto closure exceeds cap {max_size}; orbit may be infinite",
                            partial=list(members),
                        )
                    keys.add(im.coeffs)
                    members.append(im)
                    changed = True
    return members


def seress_check(a, lam):
    """a(yz) = (ay)z + a(y0 z0) for all basis y and all z in A_{0,1}(a)."""
    A = a.algebra
    _require_axis(a, [lam])
    eigen = eigen_decompose(a)
    if not eigen.complete:
        raise NotAnAxis("decomposition is not complete")
    z01 = eigen.space_01()
    for y in A.basis():
        cy = component_recovery(a, y, [lam])
        for z in z01:
            cz = component_recovery(a, z, [lam])
            lhs = a * (y * z)
            rhs = (a * y) * z + a * (cy.y0 * cz.y0)
            if lhs != rhs:
                return False
    return True


def infer_lambda(a):
    """The unique non-{0,1} root of the minimal polynomial of L_a, if any."""
    field = a.algebra.field
    if not is_idempotent(a):
        raise NotIdempotent("lambda inference requires an idempotent")
    mp = minimal_polynomial(a.left_multiplication_matrix())
    extra = [mu for mu in field.poly_roots(list(mp)) if mu != field.zero and mu != field.one]
    if len(extra) == 1:
        return extra[0]
    return None
