"""Acceptance suite.

One test per criterion, each printing a single pass/fail line.  All
arithmetic is exact; the per-criterion runtime budgets are asserted.

C11a records a corrected classical expectation: the involution orbit of a
2-generated toric pair over Q is infinite for most pair values, but at pair
value 1/2 the involution product has order 2 and the closure is exactly
{a, b, -b-4s, -a-4s}.  The naive overflow assertion at 1/2 is kept, marked
strict-xfail; C11 demonstrates overflow on genuinely infinite orbits.
"""

import time
from fractions import Fraction

import pytest

from axial import (
    QQ,
    axis_orbit,
    builtin_identity,
    check_axis,
    component_recovery,
    eigen_decompose,
    evaluate,
    full_linearize,
    generate_subalgebra,
    hardness_probe,
    holds_as_identity,
    is_4_nilpotent,
    is_idempotent,
    make_algebra,
    miyamoto,
    radical,
    sample_identity,
    seress_check,
    solve_frobenius,
    trace_admissibility_audit,
    universal_2gen,
)
from axial.errors import OrbitOverflow
from axial.frobenius import BilinearForm
from axial.identities import BUILTIN_NAMES
from axial.linalg import Matrix

HALF = Fraction(1, 2)
EPS_SAMPLES = (Fraction(1), Fraction(2), Fraction(3), Fraction(-1), Fraction(5, 7))


def _line(tag, label, ok, elapsed):
    status = "PASS" if ok else "FAIL"
    print(f"[acceptance] {tag} {label}: {status} ({elapsed:.2f}s)")


class _Criterion:
    def __init__(self, tag, label, budget):
        self.tag, self.label, self.budget = tag, label, budget

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        _line(self.tag, self.label, exc_type is None, elapsed)
        if exc_type is None and self.budget is not None:
            assert elapsed < self.budget, f"{self.tag} exceeded {self.budget}s budget ({elapsed:.2f}s)"
        return False


def corpus(mats3c, toric, h3):
    """(name, algebra, certified primitive half-axes, form) for the test algebras."""
    tg = universal_2gen(HALF, Fraction(1, 8))
    h3_alg, h3_form = h3
    h3_b = h3_alg.element([HALF, HALF, 0, HALF, 0, 0])
    return [
        ("3C", mats3c.algebra, list(mats3c.axes), mats3c.form),
        ("toric", toric.algebra, [toric.idempotent(e) for e in EPS_SAMPLES], toric.form),
        ("two-gen(1/8)", tg.algebra, list(tg.axes), tg.form),
        ("H3", h3_alg, [h3_alg.basis_element(i) for i in range(3)] + [h3_b], h3_form),
    ]


def test_c01_toric_solidity(toric):
    with _Criterion("C01", "toric family solidity (sampled and symbolic)", 1.0):
        for eps in EPS_SAMPLES:
            x = toric.idempotent(eps)
            assert is_idempotent(x)
            rep = check_axis(x, HALF)
            assert rep.is_axis and rep.primitive
            assert rep.fusion.all_jordan
        tor_eps, generic = toric.symbolic_family()
        lam = tor_eps.algebra.field.from_fraction(HALF)
        assert is_idempotent(generic)
        rep = check_axis(generic, lam)
        assert rep.is_axis and rep.primitive and rep.fusion.all_jordan


def test_c02_matsuo_3c(mats3c):
    with _Criterion("C02", "3C(1/2) form, radical, involution, Seress", 1.0):
        A = mats3c.algebra
        a, b, c = mats3c.axes
        sol = solve_frobenius(A, [(p, QQ.one) for p in mats3c.axes])
        assert sol.unique
        g = sol.particular.gram.rows
        for i in range(3):
            for j in range(3):
                assert g[i][j] == (1 if i == j else Fraction(1, 4))
        assert sol.particular.gram.det() == Fraction(27, 32)
        assert radical(sol.particular) == []
        tau = miyamoto(a, HALF)
        assert tau.apply(b) == c and tau.apply(c) == b
        for p in mats3c.axes:
            assert seress_check(p, HALF)


def test_c03_two_generated_jordan(toric):
    with _Criterion("C03", "Jordan identity on 2-generated algebras", 5.0):
        jordan = builtin_identity("jordan", QQ)
        for pi in (Fraction(0), Fraction(1, 8), Fraction(1, 3), Fraction(2)):
            tg = universal_2gen(HALF, pi)
            assert holds_as_identity(jordan, tg.algebra).holds, f"pi={pi}"
        assert holds_as_identity(jordan, toric.algebra).holds


def test_c04_component_recovery(mats3c, toric, h3):
    with _Criterion("C04", "closed-form components equal eigenprojections", 10.0):
        for name, A, axes, _form in corpus(mats3c, toric, h3):
            for a in axes:
                ed = eigen_decompose(a)
                cols, tags = [], []
                for mu in ed.eigenvalues:
                    for v in ed.space(mu):
                        cols.append(list(v.coeffs))
                        tags.append(mu)
                basis_matrix = Matrix.from_columns(A.field, cols)
                for y in A.basis():
                    comp = component_recovery(a, y, [HALF])
                    # independent oracle: project by solving in the eigenbasis
                    sol = basis_matrix.solve(list(y.coeffs))
                    assert sol is not None
                    proj = {}
                    for coeff, mu, col in zip(sol, tags, cols):
                        acc = proj.setdefault(mu, A.zero())
                        proj[mu] = acc + coeff * A.element(col)
                    assert comp.y1 == proj.get(QQ.one, A.zero()), name
                    assert comp.y0 == proj.get(QQ.zero, A.zero()), name
                    assert comp.part(HALF) == proj.get(HALF, A.zero()), name


def test_c05_linearization_oracle(h3):
    with _Criterion("C05", "full linearization of 4-power associativity = 2h", 10.0):
        fl, _fresh = full_linearize(builtin_identity("fourPowerAssoc", QQ), 1)
        two_h = QQ.from_int(2) * builtin_identity("linearizedPA", QQ)
        assert fl == two_h
        A, _ = h3
        basis = A.basis()
        for x in basis:
            for y in basis:
                for z in basis:
                    for w in basis:
                        assign = {1: x, 2: y, 3: z, 4: w}
                        assert evaluate(fl, assign, {}) == evaluate(two_h, assign, {})


def test_c06_frobenius_structure(mats3c, toric, h3):
    with _Criterion("C06", "eigenspace orthogonality and y1 = (a,y)a", 10.0):
        for name, A, axes, form in corpus(mats3c, toric, h3):
            for a in axes:
                ed = eigen_decompose(a)
                mus = ed.eigenvalues
                for i, m1 in enumerate(mus):
                    for m2 in mus[i + 1:]:
                        for v in ed.space(m1):
                            for w in ed.space(m2):
                                assert not form.value(v, w), name
                rep = check_axis(a, HALF)
                if rep.primitive:
                    for y in A.basis():
                        comp = component_recovery(a, y, [HALF])
                        assert comp.y1 == form.value(a, y) * a, name


def test_c07_non_matsuo_detection(mats3c, h3):
    with _Criterion("C07", "Matsuo criterion separates H3 from 3C", 10.0):
        A, form = h3
        a = A.basis_element(0)
        b = A.element([HALF, HALF, 0, HALF, 0, 0])
        # independent trace oracle: rebuild the matrices and trace a o b
        def as_matrix(x):
            m = [[Fraction(0)] * 3 for _ in range(3)]
            idx = {"E11": (0, 0), "E22": (1, 1), "E33": (2, 2),
                   "F12": (0, 1), "F13": (0, 2), "F23": (1, 2)}
            for name, c in zip(A.basis_names, x.coeffs):
                i, j = idx[name]
                m[i][j] += c
                if i != j:
                    m[j][i] += c
            return m

        am, bm = as_matrix(a), as_matrix(b)
        prod = [[sum(am[i][k] * bm[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
        trace = sum(prod[i][i] for i in range(3))
        assert trace == HALF
        assert form.value(a, b) == HALF  # not in {0, lam/2} = {0, 1/4}

        crit = builtin_identity("matsuoCriterion", QQ, HALF)
        assert not evaluate(crit, {}, {1: a, 2: b}, form=form).is_zero()
        v = holds_as_identity(crit, A, idempotent_pool=[a, b], form=form, distinct_slots=True)
        assert not v.holds

        for name in ("matsuoCriterion", "matsuoPairA", "matsuoPairB"):
            f = builtin_identity(name, QQ, HALF)
            v3 = holds_as_identity(f, mats3c.algebra, idempotent_pool=list(mats3c.axes),
                                   form=mats3c.form, distinct_slots=True)
            assert v3.holds, name


def test_c08_miyamoto_closure(mats3c, toric):
    with _Criterion("C08", "Miyamoto-closure identity vanishes on 3C and toric", 10.0):
        d1 = builtin_identity("miyamotoClosure", QQ, HALF)
        for A, axes, form in (
            (mats3c.algebra, list(mats3c.axes), mats3c.form),
            (toric.algebra, [toric.idempotent(e) for e in EPS_SAMPLES], toric.form),
        ):
            for a in axes:
                for y in A.basis():
                    for z in A.basis():
                        assert evaluate(d1, {1: y, 2: z}, {1: a}, form=form).is_zero()


def test_c09_hardness_probe(toric):
    with _Criterion("C09", "toric family at three parameters spans; probe hard", 5.0):
        B = generate_subalgebra([toric.idempotent(1), toric.idempotent(2)])
        members = [toric.idempotent(e) for e in (1, 2, 3)]
        vectors = [list(B.coords(x).coeffs) for x in members]
        assert Matrix(QQ, vectors).rank() == 3
        probe = hardness_probe(B, members, members)
        assert probe.is_hard


def test_c10_oracle_equivalence(mats3c, toric, h3):
    with _Criterion("C10", "engine verdict agrees with 500-sample oracle", 20.0):
        matsuo_only = {"matsuoPairA", "matsuoPairB", "matsuoCriterion"}
        for name, A, pool, form in corpus(mats3c, toric, h3):
            for ident in BUILTIN_NAMES:
                f = builtin_identity(ident, QQ, HALF)
                distinct = ident in matsuo_only
                engine = holds_as_identity(f, A, idempotent_pool=pool, form=form,
                                           distinct_slots=distinct)
                sampled = sample_identity(f, A, idempotent_pool=pool, form=form,
                                          samples=500, distinct_slots=distinct, seed=17)
                assert engine.holds == sampled.holds, (name, ident)


@pytest.mark.xfail(
    strict=True,
    reason="at pair value 1/2 the involution product has order 2 and the "
    "closure is exactly {a, b, -b-4s, -a-4s} (size 4, verified by an "
    "independent symbolic computation); no overflow can occur there",
)
def test_c11_orbit_overflow_literal():
    tg = universal_2gen(HALF, HALF)
    t0 = time.perf_counter()
    try:
        with pytest.raises(OrbitOverflow):
            axis_orbit(list(tg.axes), HALF, max_size=50)
    except BaseException:
        _line("C11a", "orbit overflow at pair value 1/2 (as stated)", False, time.perf_counter() - t0)
        raise
    _line("C11a", "orbit overflow at pair value 1/2 (as stated)", True, time.perf_counter() - t0)


def test_c11_orbit_behavior(mats3c, toric):
    with _Criterion("C11", "orbit overflow on infinite orbits; 3C closes at 3 points", 5.0):
        # genuinely infinite orbits do overflow the cap
        with pytest.raises(OrbitOverflow):
            axis_orbit([toric.idempotent(1), toric.idempotent(2)], HALF, max_size=50)
        tg = universal_2gen(HALF, Fraction(2))
        with pytest.raises(OrbitOverflow):
            axis_orbit(list(tg.axes), HALF, max_size=50)
        # 3C(1/2) closes at exactly the three points
        orbit = axis_orbit(list(mats3c.axes[:2]), HALF, max_size=50)
        assert sorted(x.coeffs for x in orbit) == sorted(x.coeffs for x in mats3c.axes)


def test_c12_trace_audit(toric):
    with _Criterion("C12", "4-nilpotence and weak trace-admissibility audit", 5.0):
        assert is_4_nilpotent(toric.e)
        audit = trace_admissibility_audit(toric.algebra, toric.form)
        assert audit.passed
        # synthetic violation: zero-product plane with (x, y) = 1
        z, o = Fraction(0), Fraction(1)
        A = make_algebra(QQ, 2, ["x", "y"], [[[z, z], [z, z]], [[z, z], [z, z]]])
        form = BilinearForm(A, Matrix(QQ, [[z, o], [o, z]]))
        bad = trace_admissibility_audit(A, form)
        assert not bad.passed
        assert (A.basis_element(0), A.basis_element(1)) in bad.violations
