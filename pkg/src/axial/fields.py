"""Exact scalar fields.

Three coefficient domains, all with canonical unique representations so that
equality is plain ``==``:

* ``Rationals`` -- values are ``fractions.Fraction``;
* ``PrimeField(p)`` -- values are ``Fp`` wrappers holding the least residue;
* ``RationalFunctions(var)`` -- values are ``RatFunc``: reduced fractions of
  univariate polynomials over Q with monic denominator.

All value types support the usual arithmetic operators, ``bool`` (nonzero
test), ``==`` and ``hash``, so the linear algebra and algebra layers never
need to consult the field for arithmetic.  The field objects own parsing,
formatting, square roots and polynomial root extraction.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import ScalarParseError

try:  # exact rationals backed by GMP when available; plain Fraction otherwise
    from gmpy2 import mpq as _rational
except ImportError:  # pragma: no cover
    _rational = Fraction

# ---------------------------------------------------------------------------
# dense univariate polynomials over Fraction (low degree first, no trailing 0)
# ---------------------------------------------------------------------------


def _ptrim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(p, q):
    n = max(len(p), len(q))
    return _ptrim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def _pneg(p):
    return tuple(-a for a in p)


def _pmul(p, q):
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] += a * b
    return _ptrim(out)


def _pscale(c, p):
    if not c:
        return ()
    return tuple(c * a for a in p)


def _pdivmod(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(_ptrim(p))
    d = len(q) - 1
    quo = [Fraction(0)] * max(0, len(r) - d)
    while r and len(r) - 1 >= d:
        c = r[-1] / q[-1]
        k = len(r) - 1 - d
        quo[k] = c
        for i in range(len(q)):
            r[k + i] -= c * q[i]
        while r and r[-1] == 0:
            r.pop()
    return _ptrim(quo), tuple(r)


def _pgcd(p, q):
    """Monic gcd over Q."""
    a, b = _ptrim(p), _ptrim(q)
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if not a:
        return ()
    return _pscale(1 / a[-1], a)


def _pderiv(p):
    return _ptrim([i * p[i] for i in range(1, len(p))])


def _peval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _pcontent_int(p):
    """Write p = (a/b) * prim with prim integral primitive; return (Fraction(a,b), prim int tuple)."""
    if not p:
        return Fraction(0), ()
    den = math.lcm(*[c.denominator for c in p])
    ints = [int(c * den) for c in p]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    if ints[-1] < 0:
        g = -g
    return Fraction(g, den), tuple(v // g for v in ints)


def _psqrt(p):
    """Exact square root of a Q-polynomial, or None."""
    if not p:
        return ()
    if (len(p) - 1) % 2 == 1:
        return None
    lead = _fraction_sqrt(p[-1])
    if lead is None:
        return None
    half = (len(p) - 1) // 2
    q = [Fraction(0)] * (half + 1)
    q[half] = lead
    # match coefficients from the top down
    for k in range(half - 1, -1, -1):
        s = Fraction(0)
        for i in range(k + 1, half + 1):
            j = k + half - i
            if 0 <= j <= half:
                s += q[i] * q[j]
        q[k] = (p[k + half] - s) / (2 * lead)
    return _ptrim(q) if _pmul(tuple(q), tuple(q)) == _ptrim(p) else None


def _fraction_sqrt(x):
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _rational_poly_roots(p):
    """All rational roots of a Q-polynomial, by the rational root theorem."""
    p = _ptrim(p)
    roots = []
    if not p:
        return roots
    if p[0] == 0:
        roots.append(Fraction(0))
        while p and p[0] == 0:
            p = p[1:]
    if len(p) <= 1:
        return roots
    _, ip = _pcontent_int(p)
    a0, an = abs(ip[0]), abs(ip[-1])
    for r in _divisors(a0):
        for s in _divisors(an):
            for cand in (Fraction(r, s), Fraction(-r, s)):
                if cand not in roots and _peval(p, cand) == 0:
                    roots.append(cand)
    return roots


def _divisors(n):
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


# ---------------------------------------------------------------------------
# prime-field values
# ---------------------------------------------------------------------------


class Fp:
    """Least-residue value in F_p.  Immutable, canonical, operator-complete."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("mixed prime fields")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {other} vanishes mod {self.p}")
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        if self.v == 0:
            raise ZeroDivisionError("division by zero in prime field")
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else Fp(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pow__(self, n):
        return Fp(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"Fp({self.v}, p={self.p})"


# ---------------------------------------------------------------------------
# rational-function values
# ---------------------------------------------------------------------------


class RatFunc:
    """Reduced fraction of Q-polynomials with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(Fraction(1),), _reduced=False):
        num, den = _ptrim(num), _ptrim(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            g = _pgcd(num, den)
            if len(g) > 1:
                num = _pdivmod(num, g)[0]
                den = _pdivmod(den, g)[0]
            lead = den[-1]
            if lead != 1:
                num = _pscale(1 / lead, num)
                den = _pscale(1 / lead, den)
        self.num = num
        self.den = den

    @staticmethod
    def const(c):
        c = Fraction(c)
        return RatFunc((c,) if c else (), (Fraction(1),), _reduced=True)

    @staticmethod
    def var():
        return RatFunc((Fraction(0), Fraction(1)), (Fraction(1),), _reduced=True)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(_padd(_pmul(self.num, o.den), _pmul(o.num, self.den)), _pmul(self.den, o.den))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(_padd(_pmul(self.num, o.den), _pneg(_pmul(o.num, self.den))), _pmul(self.den, o.den))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else o / self

    def __neg__(self):
        return RatFunc(_pneg(self.num), self.den, _reduced=True)

    def __pow__(self, n):
        if n < 0:
            return RatFunc.const(1) / self ** (-n)
        out = RatFunc.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"

    def is_constant(self):
        return len(self.num) <= 1 and self.den == (Fraction(1),)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant rational function")
        return self.num[0] if self.num else Fraction(0)

    def eval_at(self, x):
        """Evaluate at a Fraction point; raises ZeroDivisionError on a pole."""
        d = _peval(self.den, Fraction(x))
        if d == 0:
            raise ZeroDivisionError("pole of rational function")
        return _peval(self.num, Fraction(x)) / d


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------

_INT_RE = re.compile(r"^[+-]?\d+$")
_FRAC_RE = re.compile(r"^([+-]?\d+)\s*/\s*([+-]?\d+)$")


class Field:
    """Common interface; concrete fields are singletons per parameter."""

    kind = None
    char = 0
    size = None  # None = infinite

    def parse(self, text):
        raise NotImplementedError

    def format(self, a):
        raise NotImplementedError

    def from_int(self, n):
        raise NotImplementedError

    def from_fraction(self, q):
        raise NotImplementedError

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def sqrt(self, a):
        """A square root of a in the field, or None."""
        raise NotImplementedError

    def poly_roots(self, coeffs):
        """Distinct roots, in this field, of the polynomial with the given
        coefficients (low degree first, field values)."""
        raise NotImplementedError

    def elements(self):
        raise NotImplementedError(f"{self.kind} is infinite")

    def to_json(self):
        raise NotImplementedError

    def __ne__(self, other):
        return not self.__eq__(other)


class Rationals(Field):
    kind = "Q"
    char = 0

    def parse(self, text):
        text = text.strip()
        if _INT_RE.match(text):
            return _rational(int(text))
        m = _FRAC_RE.match(text)
        if m:
            den = int(m.group(2))
            if den == 0:
                raise ScalarParseError(f"zero denominator in {text!r}")
            return _rational(int(m.group(1)), den)
        raise ScalarParseError(f"not a rational literal: {text!r}")

    def format(self, a):
        return str(Fraction(a))

    def from_int(self, n):
        return _rational(n)

    def from_fraction(self, q):
        return _rational(q)

    def sqrt(self, a):
        r = _fraction_sqrt(Fraction(a))
        return None if r is None else _rational(r)

    def poly_roots(self, coeffs):
        return [_rational(r) for r in _rational_poly_roots(tuple(Fraction(c) for c in coeffs))]

    def to_json(self):
        return {"kind": "Q"}

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Rationals()"


_PRIME_SCAN_LIMIT = 1 << 20


class PrimeField(Field):
    """F_p for an odd prime p.  p > 5 unless allow_small=True, so the usual
    small-characteristic caveats cannot apply silently."""

    kind = "Fp"

    def __init__(self, p, allow_small=False):
        if p < 2 or not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p == 2:
            raise ValueError("characteristic 2 is excluded (the base ring must contain 1/2)")
        if p <= 5 and not allow_small:
            raise ValueError(f"p = {p} <= 5 requires allow_small=True")
        self.p = p
        self.char = p
        self.size = p

    def parse(self, text):
        text = text.strip()
        if _INT_RE.match(text):
            return Fp(int(text), self.p)
        m = _FRAC_RE.match(text)
        if m:
            den = int(m.group(2))
            if den % self.p == 0:
                raise ScalarParseError(f"denominator of {text!r} vanishes mod {self.p}")
            return Fp(int(m.group(1)) * pow(den, -1, self.p), self.p)
        raise ScalarParseError(f"not a residue literal: {text!r}")

    def format(self, a):
        return str(a.v)

    def from_int(self, n):
        return Fp(n, self.p)

    def from_fraction(self, q):
        q = Fraction(q)
        if q.denominator % self.p == 0:
            raise ZeroDivisionError(f"denominator of {q} vanishes mod {self.p}")
        return Fp(q.numerator * pow(q.denominator, -1, self.p), self.p)

    def sqrt(self, a):
        for t in range(self.p):
            if (t * t - a.v) % self.p == 0:
                return Fp(t, self.p)
        return None

    def poly_roots(self, coeffs):
        if self.p > _PRIME_SCAN_LIMIT:
            raise NotImplementedError(f"root scan over F_{self.p} exceeds the field-size limit")
        roots = []
        for t in range(self.p):
            acc = 0
            for c in reversed(coeffs):
                acc = (acc * t + c.v) % self.p
            if acc == 0:
                roots.append(Fp(t, self.p))
        return roots

    def elements(self):
        return (Fp(i, self.p) for i in range(self.p))

    def to_json(self):
        return {"kind": "Fp", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


def _is_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


_VAR_RE = re.compile(r"^[a-zA-Z_][a-zA-Z_0-9]*$")


class RationalFunctions(Field):
    """Q(var): univariate rational functions over the rationals."""

    kind = "Qt"
    char = 0

    def __init__(self, var):
        if not _VAR_RE.match(var):
            raise ValueError(f"bad variable name {var!r}")
        self.var = var

    # -- parsing: +, -, *, /, ^, parentheses, integer literals, the variable
    def parse(self, text):
        toks = _tokenize(text, self.var)
        val, pos = _parse_sum(toks, 0, self.var)
        if pos != len(toks):
            raise ScalarParseError(f"trailing input in {text!r}")
        return val

    def format(self, a):
        num = _poly_str(a.num, self.var)
        if a.den == (Fraction(1),):
            return num
        return f"({num})/({_poly_str(a.den, self.var)})"

    def from_int(self, n):
        return RatFunc.const(n)

    def from_fraction(self, q):
        return RatFunc.const(q)

    def variable(self):
        return RatFunc.var()

    def sqrt(self, a):
        if not a.num:
            return RatFunc.const(0)
        ns = _psqrt(a.num)
        ds = _psqrt(a.den)
        if ns is None or ds is None:
            return None
        return RatFunc(ns, ds)

    def poly_roots(self, coeffs):
        """Roots in Q(var) via exact bivariate factorization (sympy)."""
        import sympy as sp

        x = sp.Symbol("__rootvar__")
        t = sp.Symbol(self.var)
        expr = sp.Integer(0)
        # clear denominators: multiply by the polynomial lcm of coefficient denominators
        lcm = (Fraction(1),)
        for c in coeffs:
            g = _pgcd(lcm, c.den)
            lcm = _pdivmod(_pmul(lcm, c.den), g)[0]
        for i, c in enumerate(coeffs):
            mult = _pdivmod(lcm, c.den)[0]
            poly_t = _pmul(c.num, mult)
            term = sum(sp.Rational(a) * t**k for k, a in enumerate(poly_t))
            expr += term * x**i
        if expr == 0:
            raise ValueError("zero polynomial has every root")
        roots = []
        for fac, _mult in sp.factor_list(sp.expand(expr), x, t)[1]:
            pf = sp.Poly(fac, x)
            if pf.degree() == 1:
                a1, a0 = pf.all_coeffs()
                root = sp.together(-a0 / a1)
                n, d = sp.fraction(root)
                roots.append(self._from_sympy_pair(sp.Poly(n, t), sp.Poly(d, t)))
        # dedupe, preserve discovery order
        out = []
        for r in roots:
            if r not in out:
                out.append(r)
        return out

    def _from_sympy_pair(self, num, den):
        nc = [Fraction(c.p, c.q) for c in reversed(num.all_coeffs())]
        dc = [Fraction(c.p, c.q) for c in reversed(den.all_coeffs())]
        return RatFunc(tuple(nc), tuple(dc))

    def to_json(self):
        return {"kind": "Qt", "var": self.var}

    def __eq__(self, other):
        return isinstance(other, RationalFunctions) and other.var == self.var

    def __hash__(self):
        return hash(("Qt", self.var))

    def __repr__(self):
        return f"RationalFunctions({self.var!r})"


# -- tiny recursive-descent parser for the rational-function grammar


def _tokenize(text, var):
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*/^()":
            toks.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(int(text[i:j]))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            name = text[i:j]
            if name != var:
                raise ScalarParseError(f"unknown symbol {name!r} (variable is {var!r})")
            toks.append(name)
            i = j
        else:
            raise ScalarParseError(f"bad character {ch!r} in scalar text")
    return toks


def _parse_sum(toks, pos, var):
    val, pos = _parse_product(toks, pos, var)
    while pos < len(toks) and toks[pos] in ("+", "-"):
        op = toks[pos]
        rhs, pos = _parse_product(toks, pos + 1, var)
        val = val + rhs if op == "+" else val - rhs
    return val, pos


def _parse_product(toks, pos, var):
    val, pos = _parse_atom(toks, pos, var)
    while pos < len(toks) and toks[pos] in ("*", "/"):
        op = toks[pos]
        rhs, pos = _parse_atom(toks, pos + 1, var)
        val = val * rhs if op == "*" else val / rhs
    return val, pos


def _parse_atom(toks, pos, var):
    if pos >= len(toks):
        raise ScalarParseError("unexpected end of scalar text")
    tok = toks[pos]
    if tok == "-":
        val, pos = _parse_atom(toks, pos + 1, var)
        return -val, pos
    if tok == "+":
        return _parse_atom(toks, pos + 1, var)
    if tok == "(":
        val, pos = _parse_sum(toks, pos + 1, var)
        if pos >= len(toks) or toks[pos] != ")":
            raise ScalarParseError("missing closing parenthesis")
        pos += 1
    elif isinstance(tok, int):
        val = RatFunc.const(tok)
        pos += 1
    elif tok == var:
        val = RatFunc.var()
        pos += 1
    else:
        raise ScalarParseError(f"unexpected token {tok!r}")
    if pos < len(toks) and toks[pos] == "^":
        if pos + 1 >= len(toks) or not isinstance(toks[pos + 1], int):
            raise ScalarParseError("exponent must be a nonnegative integer")
        val = val ** toks[pos + 1]
        pos += 2
    return val, pos


def _poly_str(p, var):
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if not c:
            continue
        if k == 0:
            mon = str(c)
        else:
            v = var if k == 1 else f"{var}^{k}"
            if c == 1:
                mon = v
            elif c == -1:
                mon = f"-{v}"
            else:
                mon = f"{c}*{v}"
        parts.append(mon)
    out = parts[0]
    for mon in parts[1:]:
        out += f" - {mon[1:]}" if mon.startswith("-") else f" + {mon}"
    return out


# ---------------------------------------------------------------------------
# field-generic polynomial helpers (coefficients are field values)
# ---------------------------------------------------------------------------


def poly_trim(field, p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def poly_divmod(field, p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(poly_trim(field, p))
    d = len(q) - 1
    quo = [field.zero for _ in range(max(0, len(r) - d))]
    while r and len(r) - 1 >= d:
        c = r[-1] / q[-1]
        k = len(r) - 1 - d
        quo[k] = c
        for i in range(len(q)):
            r[k + i] = r[k + i] - c * q[i]
        while r and not r[-1]:
            r.pop()
    return poly_trim(field, quo), tuple(r)


def poly_gcd(field, p, q):
    a, b = poly_trim(field, p), poly_trim(field, q)
    while b:
        a, b = b, poly_divmod(field, a, b)[1]
    if not a:
        return ()
    inv = field.one / a[-1]
    return tuple(inv * c for c in a)


def poly_deriv(field, p):
    return poly_trim(field, [field.from_int(i) * p[i] for i in range(1, len(p))])


def poly_is_squarefree(field, p):
    return len(poly_gcd(field, p, poly_deriv(field, p))) <= 1


def poly_divides(field, p, q):
    """True when p divides q."""
    if not p:
        return not q
    return not poly_divmod(field, q, p)[1]


# ---------------------------------------------------------------------------
# module-level conveniences
# ---------------------------------------------------------------------------

QQ = Rationals()


def parse_scalar(text, field):
    """Parse exact-scalar text in the given field (canonical value)."""
    return field.parse(text)


def format_scalar(value, field):
    return field.format(value)


def field_from_json(doc):
    from .errors import SchemaError

    if not isinstance(doc, dict) or "kind" not in doc:
        raise SchemaError(f"bad field document: {doc!r}")
    kind = doc["kind"]
    if kind == "Q":
        return QQ
    if kind == "Fp":
        try:
            return PrimeField(int(doc["p"]), allow_small=bool(doc.get("allow_small", False)))
        except (KeyError, ValueError) as exc:
            raise SchemaError(str(exc)) from exc
    if kind == "Qt":
        try:
            return RationalFunctions(doc["var"])
        except (KeyError, ValueError) as exc:
            raise SchemaError(str(exc)) from exc
    raise SchemaError(f"unknown field kind {kind!r}")
