"""Nonassociative identity calculus.

Polynomials live in the free commutative nonassociative algebra on variables
x1, x2, ... and idempotent slots E1, E2, ..., enriched with scalar bracket
factors B(s, t) that evaluate through a bilinear form.  Trees are nested
tuples; each product node keeps its children in a canonical order so that
commutatively equal monomials merge.

A polynomial is a mapping {(bracket multiset, body tree) -> coefficient};
the body may be None for scalar-valued intermediates (a bare bracket
product), but evaluation demands element-valued monomials throughout.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    FieldTooSmall,
    FreshCollision,
    MissingForm,
    NotIdempotent,
    PolyParseError,
    UnboundVariable,
    UnknownIdentity,
)

__all__ = [
    "GenPoly",
    "IdentityVerdict",
    "x_var",
    "e_slot",
    "bracket",
    "parse_poly",
    "format_poly",
    "linearize_step",
    "full_linearize",
    "specialize_idempotent_slot",
    "evaluate",
    "holds_as_identity",
    "sample_identity",
    "builtin_identity",
    "BUILTIN_NAMES",
]


# ---------------------------------------------------------------------------
# trees
# ---------------------------------------------------------------------------


def _tkey(t):
    if t[0] == "E":
        return (0, 0, t[1])
    if t[0] == "X":
        return (0, 1, t[1])
    return (1, _tkey(t[1]), _tkey(t[2]))


def _node(l, r):
    # the slots are free *idempotents*: E_i * E_i reduces to E_i
    if l == r and l[0] == "E":
        return l
    return ("*", l, r) if _tkey(l) <= _tkey(r) else ("*", r, l)


def _leaves(t):
    if t[0] in ("E", "X"):
        yield t
    else:
        yield from _leaves(t[1])
        yield from _leaves(t[2])


def _count_leaf(t, leaf):
    return sum(1 for lv in _leaves(t) if lv == leaf)


def _tree_str(t):
    if t[0] == "X":
        return f"x{t[1]}"
    if t[0] == "E":
        return f"E{t[1]}"
    return f"({_tree_str(t[1])}*{_tree_str(t[2])})"


def _rebuild_with(t, leaf, feed):
    """Copy of t with each occurrence of leaf replaced by next(feed)."""
    if t == leaf:
        return next(feed)
    if t[0] in ("E", "X"):
        return t
    return _node(_rebuild_with(t[1], leaf, feed), _rebuild_with(t[2], leaf, feed))


def _bracket_key(t1, t2):
    return (t1, t2) if _tkey(t1) <= _tkey(t2) else (t2, t1)


# monomial key = (brackets, body); brackets a sorted tuple of bracket pairs,
# body a tree or None


def _mono_trees(key):
    brackets, body = key
    for b in brackets:
        yield b[0]
        yield b[1]
    if body is not None:
        yield body


def _mono_degree(key, leaf):
    return sum(_count_leaf(t, leaf) for t in _mono_trees(key))


def _mono_str(key, coeff, field):
    brackets, body = key
    parts = []
    c = field.format(coeff)
    parts.extend(f"B({_tree_str(a)},{_tree_str(b)})" for a, b in brackets)
    if body is not None:
        parts.append(_tree_str(body))
    if not parts:
        return c
    if coeff == field.one:
        return "*".join(parts)
    if coeff == -field.one:
        return "-" + "*".join(parts)
    return "*".join([c] + parts)


class GenPoly:
    """Formal sum of generalized monomials over one scalar field."""

    __slots__ = ("field", "terms", "_xidx", "_eidx")

    def __init__(self, field, terms=None):
        self.field = field
        self.terms = {}
        self._xidx = None
        self._eidx = None
        if terms:
            for key, coeff in terms.items():
                if coeff:
                    self.terms[key] = coeff

    # -- construction helpers

    @classmethod
    def zero(cls, field):
        return cls(field)

    @classmethod
    def monomial(cls, field, coeff, brackets, body):
        if not coeff:
            return cls(field)
        return cls(field, {(tuple(sorted(brackets, key=lambda b: (_tkey(b[0]), _tkey(b[1])))), body): coeff})

    def is_zero(self):
        return not self.terms

    # -- ring operations

    def __add__(self, other):
        self._compat(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, self.field.zero) + c
            if s:
                out[key] = s
            elif key in out:
                del out[key]
        return GenPoly(self.field, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return GenPoly(self.field, {k: -c for k, c in self.terms.items()})

    def __rmul__(self, scalar):
        if isinstance(scalar, GenPoly):
            return NotImplemented
        if not scalar:
            return GenPoly(self.field)
        return GenPoly(self.field, {k: scalar * c for k, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, GenPoly):
            return GenPoly(self.field, {k: c * other for k, c in self.terms.items()})
        self._compat(other)
        out = GenPoly(self.field)
        acc = {}
        for (br1, b1), c1 in self.terms.items():
            for (br2, b2), c2 in other.terms.items():
                if b1 is None:
                    body = b2
                elif b2 is None:
                    body = b1
                else:
                    body = _node(b1, b2)
                brackets = tuple(sorted(br1 + br2, key=lambda b: (_tkey(b[0]), _tkey(b[1]))))
                key = (brackets, body)
                s = acc.get(key, self.field.zero) + c1 * c2
                acc[key] = s
        return GenPoly(self.field, acc)

    def _compat(self, other):
        if other.field != self.field:
            raise ValueError("polynomials over different fields")

    def __eq__(self, other):
        return isinstance(other, GenPoly) and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- inspection

    def _scan_leaves(self):
        xs, es = set(), set()
        for key in self.terms:
            for t in _mono_trees(key):
                for leaf in _leaves(t):
                    if leaf[0] == "X":
                        xs.add(leaf[1])
                    else:
                        es.add(leaf[1])
        self._xidx = sorted(xs)
        self._eidx = sorted(es)

    def x_indices(self):
        if self._xidx is None:
            self._scan_leaves()
        return self._xidx

    def e_indices(self):
        if self._eidx is None:
            self._scan_leaves()
        return self._eidx

    def degree_in_x(self, j):
        leaf = ("X", j)
        return max((_mono_degree(k, leaf) for k in self.terms), default=0)

    def degree_in_e(self, i):
        leaf = ("E", i)
        return max((_mono_degree(k, leaf) for k in self.terms), default=0)

    def has_brackets(self):
        return any(br for br, _body in self.terms)

    def monomial_count(self):
        return len(self.terms)

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (
                len(kv[0][0]),
                tuple((_tkey(a), _tkey(b)) for a, b in kv[0][0]),
                (0,) if kv[0][1] is None else (1, _tkey(kv[0][1])),
            ),
        )

    def __repr__(self):
        return f"GenPoly({format_poly(self)!r})"


def x_var(field, j):
    return GenPoly.monomial(field, field.one, (), ("X", j))


def e_slot(field, i):
    return GenPoly.monomial(field, field.one, (), ("E", i))


def bracket(f, g):
    """Scalar bracket factor B(f, g), bilinear in both element arguments."""
    f._compat(g)
    field = f.field
    out = GenPoly(field)
    for (br1, b1), c1 in f.terms.items():
        for (br2, b2), c2 in g.terms.items():
            if b1 is None or b2 is None:
                raise ValueError("bracket arguments must be element-valued")
            key = (tuple(sorted(br1 + br2 + (_bracket_key(b1, b2),),
                                key=lambda b: (_tkey(b[0]), _tkey(b[1])))), None)
            out = out + GenPoly(field, {key: c1 * c2})
    return out


def format_poly(f):
    """Canonical text; parse(format(f)) == f."""
    if f.is_zero():
        return "0"
    parts = []
    for key, coeff in f.sorted_terms():
        s = _mono_str(key, coeff, f.field)
        if not parts:
            parts.append(s)
        elif s.startswith("-"):
            parts.append("- " + s[1:])
        else:
            parts.append("+ " + s)
    return " ".join(parts)


# ---------------------------------------------------------------------------
# substitution and linearization
# ---------------------------------------------------------------------------


def _substitute_choices(poly, leaf, alternatives):
    """Replace each occurrence of leaf independently by every alternative.

    alternatives is a list of (coeff, replacement_leaf); the result is the
    multilinear expansion of substituting their formal sum.
    """
    field = poly.field
    out = GenPoly(field)
    for key, coeff in poly.terms.items():
        d = _mono_degree(key, leaf)
        if d == 0:
            out = out + GenPoly(field, {key: coeff})
            continue
        for choice in itertools.product(range(len(alternatives)), repeat=d):
            feed = iter([alternatives[c][1] for c in choice])
            brackets, body = key
            new_brs = tuple(
                _bracket_key(_rebuild_with(a, leaf, feed), _rebuild_with(b, leaf, feed))
                for a, b in brackets
            )
            new_body = None if body is None else _rebuild_with(body, leaf, feed)
            c = coeff
            for ci in choice:
                c = alternatives[ci][0] * c
            out = out + GenPoly.monomial(field, c, new_brs, new_body)
    return out


def linearize_step(f, j, fresh):
    """One polarization step in X_j with a fresh variable index.

    f[X_j -> X_j + X_fresh] - f - f[X_j -> X_fresh], expanded and merged.
    Additive in f, and zero exactly on polynomials linear in X_j.
    """
    if fresh in f.x_indices():
        raise FreshCollision(f"x{fresh} already occurs")
    leaf = ("X", j)
    one = f.field.one
    both = _substitute_choices(f, leaf, [(one, leaf), (one, ("X", fresh))])
    swapped = _substitute_choices(f, leaf, [(one, ("X", fresh))])
    return both - f - swapped


def full_linearize(f, j, fresh_start=None):
    """Iterate the X_j step until every monomial is linear in X_j.

    Intended for polynomials homogeneous in X_j (each catalog identity is);
    the fresh indices used are returned alongside the result.
    """
    used = f.x_indices()
    nxt = fresh_start if fresh_start is not None else (max(used, default=0) + 1)
    introduced = []
    cur = f
    leaf = ("X", j)
    while any(_mono_degree(k, leaf) > 1 for k in cur.terms):
        while nxt in cur.x_indices():
            nxt += 1
        cur = linearize_step(cur, j, nxt)
        introduced.append(nxt)
        nxt += 1
    return cur, introduced


def specialize_idempotent_slot(f, i, fresh_x):
    """Substitute X_fresh for E_i throughout and renormalize."""
    if fresh_x in f.x_indices():
        raise FreshCollision(f"x{fresh_x} already occurs")
    if i not in f.e_indices():
        raise ValueError(f"E{i} does not occur")
    return _substitute_choices(f, ("E", i), [(f.field.one, ("X", fresh_x))])


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def evaluate(f, assign_x, assign_e, form=None, algebra=None, check_idempotents=True):
    """Evaluate an element-valued polynomial at concrete elements.

    assign_x / assign_e map variable indices to elements; every E-slot value
    must be idempotent; bracket factors require a bilinear form.
    """
    A = algebra
    for v in list(assign_x.values()) + list(assign_e.values()):
        A = v.algebra
        break
    if A is None:
        raise UnboundVariable("no assignments and no algebra supplied")
    if check_idempotents:
        for i, v in assign_e.items():
            if not (v * v == v):
                raise NotIdempotent(f"E{i} assigned a non-idempotent")
    for j in f.x_indices():
        if j not in assign_x:
            raise UnboundVariable(f"x{j} unassigned")
    for i in f.e_indices():
        if i not in assign_e:
            raise UnboundVariable(f"E{i} unassigned")
    if f.has_brackets() and form is None:
        raise MissingForm("polynomial contains bracket factors but no form was given")

    # hot path: work on raw coefficient tuples with subtree and bracket caches
    field = A.field
    zero = field.zero
    n = A.dim
    sparse = A._sparse
    cache = {}
    for j, v in assign_x.items():
        cache[("X", j)] = v.coeffs
    for i, v in assign_e.items():
        cache[("E", i)] = v.coeffs

    def ev(t):
        val = cache.get(t)
        if val is not None:
            return val
        x, y = ev(t[1]), ev(t[2])
        out = [zero] * n
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = sparse[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                units, others = row[j]
                for k in units:
                    out[k] = out[k] + c
                for k, s in others:
                    out[k] = out[k] + c * s
        val = tuple(out)
        cache[t] = val
        return val

    gram = form.gram.rows if form is not None else None
    bcache = {}

    def brval(t1, t2):
        key = (t1, t2)
        val = bcache.get(key)
        if val is not None:
            return val
        x, y = ev(t1), ev(t2)
        acc = zero
        for i, xi in enumerate(x):
            if not xi:
                continue
            gi = gram[i]
            for j, yj in enumerate(y):
                if yj:
                    acc = acc + xi * yj * gi[j]
        bcache[key] = acc
        return acc

    total = [zero] * n
    for (brackets, body), coeff in f.terms.items():
        if body is None:
            raise MissingForm("monomial has no element-valued body")
        c = coeff
        for t1, t2 in brackets:
            c = c * brval(t1, t2)
            if not c:
                break
        if c:
            bv = ev(body)
            for k in range(n):
                if bv[k]:
                    total[k] = total[k] + c * bv[k]
    return A.element(total)


@dataclass
class IdentityVerdict:
    holds: bool
    witness: dict | None
    method: str


def _multideg(key, xvars):
    return tuple(_mono_degree(key, ("X", j)) for j in xvars)


def holds_as_identity(f, A, idempotent_pool=(), form=None, exhaustive_budget=200000,
                      distinct_slots=False, _rng_seed=0):
    """Decide whether f vanishes for all elements (X) and pool idempotents (E).

    Over an infinite field (and over F_p with p larger than every variable
    degree) the polynomial is split into multihomogeneous components, each
    component fully linearized, and the resulting multilinear polynomials
    evaluated on all basis tuples; that is exact.  Over too-small prime
    fields falls back to exhaustive enumeration within the budget.

    distinct_slots restricts the E-assignments to pairwise distinct pool
    members, for criteria stated only for distinct axes (the Matsuo pair
    test is the one catalog entry that needs it).
    """
    field = A.field
    evars = f.e_indices()
    if evars and not idempotent_pool:
        raise UnboundVariable("polynomial has E-slots but the idempotent pool is empty")
    for p in idempotent_pool:
        if not (p * p == p):
            raise NotIdempotent("pool contains a non-idempotent")
    xvars = f.x_indices()
    maxdeg = max((f.degree_in_x(j) for j in xvars), default=0)

    if field.size is not None and field.size <= maxdeg:
        n_assign = len(xvars) * A.dim
        cost = (field.size ** n_assign) * max(1, len(idempotent_pool)) ** len(evars)
        if cost > exhaustive_budget:
            raise FieldTooSmall(
                f"degree {maxdeg} >= |F| = {field.size} and exhaustion costs {cost} > {exhaustive_budget}"
            )
        return _exhaustive_check(f, A, idempotent_pool, form, distinct_slots)

    # split into multihomogeneous components in the X variables
    components = {}
    for key, coeff in f.terms.items():
        components.setdefault(_multideg(key, xvars), GenPoly(field))
    for key, coeff in f.terms.items():
        deg = _multideg(key, xvars)
        components[deg] = components[deg] + GenPoly(field, {key: coeff})

    basis = A.basis()
    for comp in components.values():
        g = comp
        for j in xvars:
            if g.degree_in_x(j) > 1:
                g, _ = full_linearize(g, j)
        gvars = g.x_indices()
        for e_assign in _slot_assignments(idempotent_pool, len(evars), distinct_slots):
            amap = dict(zip(evars, e_assign))
            for tup in itertools.product(basis, repeat=len(gvars)):
                xmap = dict(zip(gvars, tup))
                val = evaluate(g, xmap, amap, form=form, algebra=A, check_idempotents=False)
                if not val.is_zero():
                    witness = _find_witness(f, A, idempotent_pool, form, _rng_seed, distinct_slots)
                    return IdentityVerdict(holds=False, witness=witness, method="multilinear-basis")
    return IdentityVerdict(holds=True, witness=None, method="multilinear-basis")


def _slot_assignments(pool, n, distinct):
    if distinct:
        return itertools.permutations(pool, n)
    return itertools.product(pool, repeat=n)


def _exhaustive_check(f, A, pool, form, distinct_slots=False):
    field = A.field
    xvars = f.x_indices()
    evars = f.e_indices()
    scalars = list(field.elements())
    vectors = [A.element(v) for v in itertools.product(scalars, repeat=A.dim)]
    for e_assign in _slot_assignments(pool, len(evars), distinct_slots):
        amap = dict(zip(evars, e_assign))
        for tup in itertools.product(vectors, repeat=len(xvars)):
            xmap = dict(zip(xvars, tup))
            val = evaluate(f, xmap, amap, form=form, algebra=A, check_idempotents=False)
            if not val.is_zero():
                return IdentityVerdict(
                    holds=False,
                    witness={"x": xmap, "e": amap},
                    method="exhaustive-field",
                )
    return IdentityVerdict(holds=True, witness=None, method="exhaustive-field")


def _find_witness(f, A, pool, form, seed, distinct_slots=False):
    """A concrete falsifying assignment for f itself (not its components)."""
    field = A.field
    xvars = f.x_indices()
    evars = f.e_indices()
    basis = A.basis()
    pools = list(pool)
    for e_assign in _slot_assignments(pools, len(evars), distinct_slots):
        amap = dict(zip(evars, e_assign))
        for tup in itertools.product(basis, repeat=len(xvars)):
            xmap = dict(zip(xvars, tup))
            val = evaluate(f, xmap, amap, form=form, algebra=A, check_idempotents=False)
            if not val.is_zero():
                return {"x": xmap, "e": amap}
    rng = random.Random(seed)
    e_options = list(_slot_assignments(pools, len(evars), distinct_slots))
    for attempt in range(5000):
        bound = 3 + attempt // 500
        xmap = {
            j: A.element([field.from_int(rng.randint(-bound, bound)) for _ in range(A.dim)])
            for j in xvars
        }
        amap = dict(zip(evars, e_options[rng.randrange(len(e_options))])) if evars else {}
        val = evaluate(f, xmap, amap, form=form, algebra=A, check_idempotents=False)
        if not val.is_zero():
            return {"x": xmap, "e": amap}
    return None


def sample_identity(f, A, idempotent_pool=(), form=None, samples=500, seed=0, coeff_range=3,
                    distinct_slots=False):
    """Monte-Carlo identity check with exact arithmetic; the test oracle.

    Substitutes elements with integer coefficients in [-coeff_range,
    coeff_range] for the X variables and pool members for the E slots.
    """
    field = A.field
    xvars = f.x_indices()
    evars = f.e_indices()
    if evars and not idempotent_pool:
        raise UnboundVariable("polynomial has E-slots but the idempotent pool is empty")
    e_options = list(_slot_assignments(list(idempotent_pool), len(evars), distinct_slots))
    rng = random.Random(seed)
    for _ in range(samples):
        xmap = {
            j: A.element([field.from_int(rng.randint(-coeff_range, coeff_range)) for _ in range(A.dim)])
            for j in xvars
        }
        amap = dict(zip(evars, e_options[rng.randrange(len(e_options))])) if evars else {}
        val = evaluate(f, xmap, amap, form=form, algebra=A, check_idempotents=False)
        if not val.is_zero():
            return IdentityVerdict(holds=False, witness={"x": xmap, "e": amap}, method="sampled")
    return IdentityVerdict(holds=True, witness=None, method="sampled")


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

_SCALAR = "scalar"


def parse_poly(text, field, lam=None):
    """Parse the identity grammar.

    Variables x1.., slots E1.., product * with explicit parentheses for
    nested products, bracket factors B(s,t), rational coefficients, and
    ``lam`` for the bound eigenvalue symbol (required to be supplied).
    """
    toks = _lex(text)
    val, pos = _parse_sum(toks, 0, field, lam)
    if pos != len(toks):
        raise PolyParseError("trailing input", toks[pos][2])
    if isinstance(val, tuple) and val[0] == _SCALAR:
        if val[1]:
            raise PolyParseError("polynomial must be element-valued, got a bare scalar", 0)
        return GenPoly.zero(field)
    return val


def _lex(text):
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*(),":
            toks.append((ch, None, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            if j < len(text) and text[j] == "/":
                k = j + 1
                while k < len(text) and text[k].isdigit():
                    k += 1
                if k > j + 1:
                    toks.append(("num", Fraction(int(text[i:j]), int(text[j + 1:k])), i))
                    i = k
                    continue
            toks.append(("num", Fraction(int(text[i:j])), i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("name", text[i:j], i))
            i = j
            continue
        raise PolyParseError(f"bad character {ch!r}", i)
    return toks


def _parse_sum(toks, pos, field, lam):
    val, pos = _parse_term(toks, pos, field, lam)
    while pos < len(toks) and toks[pos][0] in "+-":
        op = toks[pos][0]
        rhs, pos = _parse_term(toks, pos + 1, field, lam)
        val = _combine_add(val, rhs, negate=(op == "-"), field=field, at=toks[pos - 1][2])
    return val, pos


def _parse_term(toks, pos, field, lam):
    val, pos = _parse_factor(toks, pos, field, lam)
    while pos < len(toks) and toks[pos][0] == "*":
        rhs, pos = _parse_factor(toks, pos + 1, field, lam)
        val = _combine_mul(val, rhs, field)
    return val, pos


def _parse_factor(toks, pos, field, lam):
    if pos >= len(toks):
        raise PolyParseError("unexpected end of input", toks[-1][2] if toks else 0)
    kind, payload, at = toks[pos]
    if kind == "-":
        val, pos = _parse_factor(toks, pos + 1, field, lam)
        return _combine_mul((_SCALAR, -field.one), val, field), pos
    if kind == "+":
        return _parse_factor(toks, pos + 1, field, lam)
    if kind == "(":
        val, pos = _parse_sum(toks, pos + 1, field, lam)
        if pos >= len(toks) or toks[pos][0] != ")":
            raise PolyParseError("missing ')'", at)
        return val, pos + 1
    if kind == "num":
        return (_SCALAR, field.from_fraction(payload)), pos + 1
    if kind == "name":
        name = payload
        if name == "lam":
            if lam is None:
                raise PolyParseError("'lam' used but no lambda binding supplied", at)
            return (_SCALAR, lam), pos + 1
        if name == "B":
            if pos + 1 >= len(toks) or toks[pos + 1][0] != "(":
                raise PolyParseError("B requires '('", at)
            arg1, pos = _parse_sum(toks, pos + 2, field, lam)
            if pos >= len(toks) or toks[pos][0] != ",":
                raise PolyParseError("B requires two arguments", at)
            arg2, pos = _parse_sum(toks, pos + 1, field, lam)
            if pos >= len(toks) or toks[pos][0] != ")":
                raise PolyParseError("missing ')' after B arguments", at)
            for a in (arg1, arg2):
                if isinstance(a, tuple) and a[0] == _SCALAR:
                    raise PolyParseError("bracket arguments must be element-valued", at)
            try:
                return bracket(arg1, arg2), pos + 1
            except ValueError as exc:
                raise PolyParseError(str(exc), at) from exc
        if name.startswith("x") and name[1:].isdigit():
            return x_var(field, int(name[1:])), pos + 1
        if name.startswith("E") and name[1:].isdigit():
            return e_slot(field, int(name[1:])), pos + 1
        raise PolyParseError(f"unknown name {name!r}", at)
    raise PolyParseError(f"unexpected token {kind!r}", at)


def _combine_add(a, b, negate, field, at):
    a_sc = isinstance(a, tuple) and a[0] == _SCALAR
    b_sc = isinstance(b, tuple) and b[0] == _SCALAR
    if a_sc and b_sc:
        return (_SCALAR, a[1] - b[1] if negate else a[1] + b[1])
    if a_sc or b_sc:
        sc, poly = (a, b) if a_sc else (b, a)
        if sc[1]:
            raise PolyParseError("cannot add a nonzero scalar to an element-valued term", at)
        if a_sc:  # 0 +- poly
            return (-field.one) * poly if negate else poly
        return poly  # poly +- 0
    return a - b if negate else a + b


def _combine_mul(a, b, field):
    a_sc = isinstance(a, tuple) and a[0] == _SCALAR
    b_sc = isinstance(b, tuple) and b[0] == _SCALAR
    if a_sc and b_sc:
        return (_SCALAR, a[1] * b[1])
    if a_sc:
        return a[1] * b
    if b_sc:
        return b[1] * a
    return a * b


# ---------------------------------------------------------------------------
# builtin catalog
# ---------------------------------------------------------------------------

BUILTIN_NAMES = (
    "jordan",
    "almostJordan",
    "fourPowerAssoc",
    "linearizedPA",
    "linearizedPA-partial",
    "ax1",
    "semisimpleSpectrum",
    "primitivityFrobenius",
    "fusionLambdaLambda",
    "miyamotoClosure",
    "matsuoPairA",
    "matsuoPairB",
    "matsuoCriterion",
    "seress",
)

_LAM_FREE = {"jordan", "almostJordan", "fourPowerAssoc", "linearizedPA", "linearizedPA-partial"}


def builtin_identity(name, field, lam=None):
    """A catalog polynomial with the eigenvalue symbol bound to lam.

    Every entry is written as lhs - rhs of the source equation, so "holds"
    always means "evaluates to zero".
    """
    if name not in BUILTIN_NAMES:
        raise UnknownIdentity(f"no catalog identity named {name!r}")
    if name not in _LAM_FREE:
        if lam is None:
            raise UnknownIdentity(f"{name!r} requires a lambda binding")
        if lam == field.zero or lam == field.one:
            raise UnknownIdentity(f"{name!r} requires lambda outside {{0, 1}}")
    one = field.one
    x1, x2 = x_var(field, 1), x_var(field, 2)
    E1, E2 = e_slot(field, 1), e_slot(field, 2)

    if name == "jordan":
        # ((x1*x1)*x2)*x1 = (x1*x1)*(x2*x1)
        return ((x1 * x1) * x2) * x1 - (x1 * x1) * (x2 * x1)
    if name == "almostJordan":
        # 2((x2 x1)x1)x1 + x2((x1 x1)x1) = 3(x2(x1 x1))x1
        two, three = field.from_int(2), field.from_int(3)
        return two * (((x2 * x1) * x1) * x1) + x2 * ((x1 * x1) * x1) - three * ((x2 * (x1 * x1)) * x1)
    if name == "fourPowerAssoc":
        return ((x1 * x1) * x1) * x1 - (x1 * x1) * (x1 * x1)
    if name == "linearizedPA":
        return _linearized_pa(field)
    if name == "linearizedPA-partial":
        # 4(x1 x2)x1^2 = 2((x1 x2)x1)x1 + (x1^2 x2)x1 + x1^3 x2, with x1^3 = (x1 x1)x1
        four, two = field.from_int(4), field.from_int(2)
        sq = x1 * x1
        cube = sq * x1
        return (
            four * ((x1 * x2) * sq)
            - two * (((x1 * x2) * x1) * x1)
            - (sq * x2) * x1
            - cube * x2
        )
    if name == "ax1":
        # E1(E1(E1 x1)) = (lam+1) E1(E1 x1) - lam E1 x1; composed recovery form
        return E1 * (E1 * (E1 * x1)) - (lam + one) * (E1 * (E1 * x1)) + lam * (E1 * x1)
    if name == "semisimpleSpectrum":
        # L(L-1)(L-lam) x1 = 0, expanded
        return (
            E1 * (E1 * (E1 * x1))
            - (one + lam) * (E1 * (E1 * x1))
            + lam * (E1 * x1)
        )
    if name == "primitivityFrobenius":
        # lam E1 x1 + (1-lam) B(E1,x1) E1 - E1(E1 x1)
        return lam * (E1 * x1) + (one - lam) * (bracket(E1, x1) * E1) - E1 * (E1 * x1)
    if name == "fusionLambdaLambda":
        l2 = lam * lam
        return (
            E1 * ((E1 * x1) * (E1 * x2))
            - l2 * (bracket(E1, x2) * (E1 * x1))
            - l2 * (bracket(E1, x1) * (E1 * x2))
            - l2 * (bracket(E1 * x1, x2) * E1)
            - (one - field.from_int(3) * l2) * (bracket(E1, x1) * bracket(E1, x2) * E1)
        )
    if name == "miyamotoClosure":
        return _miyamoto_closure(field, lam)
    if name in ("matsuoPairA", "matsuoPairB", "matsuoCriterion"):
        half = lam * (one - lam) / field.from_int(2)
        ab = E1 * E2
        if name == "matsuoPairA":
            inner = E1 * ab - E2 * ab - half * E1 + half * E2
            return inner * ab
        inner = E1 * ab - lam * ab - half * E1
        if name == "matsuoPairB":
            return inner * (ab - E2)
        return inner * ab
    if name == "seress":
        return _seress_identity(field, lam)
    raise AssertionError("unreachable")


def _linearized_pa(field):
    """h(x,y,z,w): the full multilinearization shape of 4-power associativity."""
    four = field.from_int(4)
    x, y, z, w = (x_var(field, j) for j in (1, 2, 3, 4))
    pairings = [(x, y, z, w), (x, z, y, w), (x, w, y, z)]
    acc = GenPoly.zero(field)
    for p, q, r, s in pairings:
        acc = acc - four * ((p * q) * (r * s))
    groups = [
        (x, [(y, z, w), (z, w, y), (w, y, z)]),
        (y, [(x, z, w), (z, w, x), (w, x, z)]),
        (z, [(x, y, w), (y, w, x), (w, x, y)]),
        (w, [(x, y, z), (y, z, x), (z, x, y)]),
    ]
    for lead, triples in groups:
        for p, q, r in triples:
            acc = acc + lead * (p * (q * r))
    return acc


def _miyamoto_closure(field, lam):
    """tau_a multiplicativity as a bracket identity.

    Derived by expanding (x1 x2)^tau - x1^tau x2^tau with
    y^tau = y + (2/lam) B(E1,y) E1 - (2/lam) E1 y; the expansion is kept in
    its two-level form (coefficients 2/lam and 4/lam^2).
    """
    one = field.one
    c2 = field.from_int(2) / lam
    c4 = field.from_int(4) / (lam * lam)
    E1 = e_slot(field, 1)
    x1, x2 = x_var(field, 1), x_var(field, 2)
    e1x1 = E1 * x1
    e1x2 = E1 * x2
    return (
        c2 * (bracket(E1, x1 * x2) * E1)
        - c2 * (E1 * (x1 * x2))
        - c2 * (bracket(E1, x1) * e1x2)
        - c2 * (bracket(E1, x2) * e1x1)
        + c2 * (e1x1 * x2)
        + c2 * (e1x2 * x1)
        - c4 * (bracket(E1, x1) * bracket(E1, x2) * E1)
        - c4 * (e1x1 * e1x2)
        + c4 * (bracket(E1, x1) * (E1 * e1x2))
        + c4 * (bracket(E1, x2) * (E1 * e1x1))
    )


def _seress_identity(field, lam):
    """E1(x1 * p01(x2)) - (E1 x1) * p01(x2) - E1(p0(x1) * p0(x2)).

    p01 projects onto the 0/1 eigenspaces and p0 onto the 0-eigenspace of a
    primitive axis under a normal form, so this vanishes identically for
    primitive axes of Jordan type.
    """
    one = field.one
    E1 = e_slot(field, 1)

    def p01(xp):
        return xp - (one / lam) * (E1 * xp) + (one / lam) * (bracket(E1, xp) * E1)

    def p0(xp):
        return xp - (one / lam) * (E1 * xp) + ((one - lam) / lam) * (bracket(E1, xp) * E1)

    x1, x2 = x_var(field, 1), x_var(field, 2)
    z = p01(x2)
    return E1 * (x1 * z) - (E1 * x1) * z - E1 * (p0(x1) * p0(x2))
