"""Exact coefficient arithmetic.

``QtRational`` is an element of the field Q(q, t, u, v); ``ZLaurent`` is a
Laurent polynomial in ``z`` over that field.  Polynomials are backed by
``flint.fmpq_mpoly``; every value is stored in a canonical reduced form so
that equality is a structural comparison.

Monomials are ordered graded-lexicographically with q < t < u < v.
"""

from __future__ import annotations

import re
from fractions import Fraction

import flint

VARS = ("q", "t", "u", "v")

# flint's deglex compares its first generator first, so list v before q to
# get q < t < u < v.
_CTX = flint.fmpq_mpoly_ctx.get(("v", "u", "t", "q"), "deglex")
_GENS = dict(zip(("v", "u", "t", "q"), _CTX.gens()))
_ZERO = _CTX.constant(0)
_ONE = _CTX.constant(1)


class PoleError(ZeroDivisionError):
    """Raised when a substitution hits a pole of a rational function."""


def _monomial_key(exps):
    # exps is in flint order (v, u, t, q)
    return (sum(exps), exps)


def _poly_terms(p):
    """Terms of ``p`` as ((eq, et, eu, ev), Fraction), ascending."""
    d = p.to_dict()
    out = []
    for exps in sorted(d, key=_monomial_key):
        c = d[exps]
        out.append(((exps[3], exps[2], exps[1], exps[0]), Fraction(int(c.p), int(c.q))))
    return out


def _format_monomial(exps):
    parts = []
    for name, e in zip(VARS, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p, compact=False) -> str:
    """Canonical text of a polynomial, e.g. ``1 - q*t + q^2*t``."""
    terms = _poly_terms(p)
    if not terms:
        return "0"
    plus, minus = ("+", "-") if compact else (" + ", " - ")
    out = []
    for idx, (exps, c) in enumerate(terms):
        mono = _format_monomial(exps)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if idx == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((minus if neg else plus) + body)
    return "".join(out)


def _to_poly(x):
    if isinstance(x, flint.fmpq_mpoly):
        return x
    if isinstance(x, Fraction):
        return _CTX.constant(flint.fmpq(x.numerator, x.denominator))
    if isinstance(x, (int, flint.fmpz, flint.fmpq)):
        return _CTX.constant(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a polynomial")


class QtRational:
    """An element of Q(q, t, u, v) in reduced form.

    Numerator and denominator are coprime and the denominator is monic
    under the global monomial order.  Textual output rescales the
    denominator to a primitive integer polynomial with positive leading
    coefficient.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None, _canonical=False):
        if isinstance(num, QtRational):
            if den is not None:
                num = num / QtRational(den)
            self.num, self.den, self._hash = num.num, num.den, None
            return
        num = _to_poly(num)
        den = _ONE if den is None else _to_poly(den)
        if not _canonical:
            num, den = _canonicalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __bool__(self):
        return not self.num.is_zero()

    def free_of(self, var: str) -> bool:
        i = ("v", "u", "t", "q").index(var)
        return self.num.degrees()[i] <= 0 and self.den.degrees()[i] <= 0

    # -- arithmetic -------------------------------------------------------
    def __neg__(self):
        return QtRational._raw(-self.num, self.den)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if n1.is_zero():
            return other
        if n2.is_zero():
            return self
        if d1.is_one() and d2.is_one():
            return QtRational._raw(n1 + n2, _ONE)
        g = d1.gcd(d2)
        if g.is_one():
            return _monic(n1 * d2 + n2 * d1, d1 * d2)
        d1g = d1 / g
        d2g = d2 / g
        n = n1 * d2g + n2 * d1g
        if n.is_zero():
            return QtRational._raw(_ZERO, _ONE)
        h = n.gcd(g)
        if not h.is_one():
            return _monic(n / h, d1g * (d2 / h))
        return _monic(n, d1g * d2)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if n1.is_zero() or n2.is_zero():
            return QtRational._raw(_ZERO, _ONE)
        if d1.is_one() and d2.is_one():
            return QtRational._raw(n1 * n2, _ONE)
        if not d2.is_one():
            g = n1.gcd(d2)
            if not g.is_one():
                n1, d2 = n1 / g, d2 / g
        if not d1.is_one():
            g = n2.gcd(d1)
            if not g.is_one():
                n2, d1 = n2 / g, d1 / g
        return _monic(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def scale(self, c) -> "QtRational":
        """Multiply by a rational number (int, Fraction or fmpq)."""
        if isinstance(c, Fraction):
            c = flint.fmpq(c.numerator, c.denominator)
        if c == 0:
            return ZERO
        return QtRational._raw(self.num * c, self.den)

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return _monic(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return QtRational._raw(self.num ** e, self.den ** e)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(sorted(self.num.to_dict().items())),
                               tuple(sorted(self.den.to_dict().items()))))
        return self._hash

    # -- substitution -----------------------------------------------------
    def substitute(self, var: str, value) -> "QtRational":
        return substitute(self, var, value)

    # -- text -------------------------------------------------------------
    def integer_parts(self):
        """(num, den) scaled so den is a primitive integer polynomial."""
        if self.den.is_one():
            return self.num, self.den
        scale = _primitive_scale(self.den)
        return self.num * scale, self.den * scale

    def __str__(self):
        num, den = self.integer_parts()
        if den.is_one():
            return format_poly(num)
        return f"({format_poly(num)})/({format_poly(den)})"

    def __repr__(self):
        return f"QtRational({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "QtRational":
        return parse_qt(text)


def _primitive_scale(p):
    """Rational c with c*p integral, primitive, positive leading coefficient."""
    from math import gcd, lcm

    coeffs = [Fraction(int(c.p), int(c.q)) for c in p.coeffs()]
    den_l = 1
    for c in coeffs:
        den_l = lcm(den_l, c.denominator)
    ints = [int(c * den_l) for c in coeffs]
    g = 0
    for i in ints:
        g = gcd(g, i)
    lead = Fraction(int(p.leading_coefficient().p), int(p.leading_coefficient().q))
    sign = 1 if lead > 0 else -1
    s = Fraction(den_l * sign, g)
    return flint.fmpq(s.numerator, s.denominator)


def _monic(num, den):
    if num.is_zero():
        return QtRational._raw(_ZERO, _ONE)
    lc = den.leading_coefficient()
    if lc != 1:
        inv = 1 / lc
        num = num * inv
        den = den * inv
    return QtRational._raw(num, den)


def _canonicalize(num, den):
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return _ZERO, _ONE
    if not den.is_constant():
        g = num.gcd(den)
        if not g.is_one():
            num, den = num / g, den / g
    x = _monic(num, den)
    return x.num, x.den


def _coerce(x):
    if isinstance(x, QtRational):
        return x
    if isinstance(x, (int, Fraction, flint.fmpz, flint.fmpq, flint.fmpq_mpoly)):
        return QtRational(x)
    return NotImplemented


def reduce(num, den=1) -> QtRational:
    """Canonical form of ``num/den``; raises ZeroDivisionError on ``den == 0``."""
    n = _coerce(num)
    d = _coerce(den)
    if n is NotImplemented or d is NotImplemented:
        raise TypeError("reduce expects polynomial or rational inputs")
    if d.is_zero():
        raise ZeroDivisionError("zero denominator")
    return n / d


def _subs_poly(p, var, value: QtRational) -> QtRational:
    idx = ("v", "u", "t", "q").index(var)
    d = p.to_dict()
    if not d:
        return ZERO
    buckets: dict[int, dict] = {}
    for exps, c in d.items():
        e = exps[idx]
        rest = exps[:idx] + (0,) + exps[idx + 1:]
        buckets.setdefault(e, {})[rest] = c
    if value.is_polynomial() and value.num.is_constant():
        c = value.num.leading_coefficient() if not value.is_zero() else flint.fmpq(0)
        return QtRational(p.subs({var: c}))
    # Horner over the exponents of var
    top = max(buckets)
    acc = ZERO
    for e in range(top, -1, -1):
        acc = acc * value
        if e in buckets:
            acc = acc + QtRational(_CTX.from_dict(buckets[e]))
    return acc


def substitute(x: QtRational, var: str, value) -> QtRational:
    """Replace ``var`` (one of q, t, u, v) by ``value``.

    Raises PoleError if the reduced denominator vanishes at the point.
    """
    if var not in VARS:
        raise ValueError(f"unknown variable {var!r}")
    value = _coerce(value)
    if value is NotImplemented:
        raise TypeError("substitution value must be rational")
    if x.free_of(var):
        return x
    den = _subs_poly(x.den, var, value)
    if den.is_zero():
        raise PoleError(f"pole at {var} = {value}")
    return _subs_poly(x.num, var, value) / den


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR_RE = re.compile(r"^(q|t|u|v)(?:\^(\d+))?$")


def _parse_poly(text: str):
    text = text.strip()
    if text == "0":
        return _ZERO
    acc = _ZERO
    # split on top-level +/- that are not exponent signs
    tokens = re.findall(r"[+-]?[^+-]+", text.replace(" ", ""))
    if "".join(tokens) != text.replace(" ", ""):
        raise ValueError(f"malformed polynomial {text!r}")
    for tok in tokens:
        sign = -1 if tok.startswith("-") else 1
        tok = tok.lstrip("+-")
        coeff = Fraction(1)
        mono = _ONE
        for f in tok.split("*"):
            m = _FACTOR_RE.match(f)
            if m:
                mono = mono * _GENS[m.group(1)] ** int(m.group(2) or 1)
            else:
                try:
                    coeff *= Fraction(f)
                except ValueError:
                    raise ValueError(f"malformed term {tok!r} in {text!r}") from None
        acc = acc + mono * flint.fmpq(sign * coeff.numerator, coeff.denominator)
    return acc


def parse_qt(text: str) -> QtRational:
    """Inverse of ``str(QtRational)``."""
    text = text.strip()
    m = re.fullmatch(r"\((.*)\)/\((.*)\)", text)
    if m:
        return QtRational(_parse_poly(m.group(1)), _parse_poly(m.group(2)))
    return QtRational(_parse_poly(text))


ZERO = QtRational._raw(_ZERO, _ONE)
ONE = QtRational._raw(_ONE, _ONE)
q = QtRational._raw(_GENS["q"], _ONE)
t = QtRational._raw(_GENS["t"], _ONE)
u = QtRational._raw(_GENS["u"], _ONE)
v = QtRational._raw(_GENS["v"], _ONE)
M = (1 - q) * (1 - t)


def gen(name: str) -> QtRational:
    return {"q": q, "t": t, "u": u, "v": v}[name]


def monomial(eq=0, et=0, eu=0, ev=0) -> QtRational:
    """q^eq t^et u^eu v^ev; negative exponents give a rational value."""
    pos = _ONE
    neg = _ONE
    for g, e in ((_GENS["q"], eq), (_GENS["t"], et), (_GENS["u"], eu), (_GENS["v"], ev)):
        if e > 0:
            pos = pos * g ** e
        elif e < 0:
            neg = neg * g ** (-e)
    return QtRational._raw(pos, neg) if neg.is_one() else QtRational(pos, neg)


def swap_qt(x: QtRational) -> QtRational:
    """Exchange q and t."""
    g = _GENS
    num = x.num.compose(g["v"], g["u"], g["q"], g["t"])
    den = x.den.compose(g["v"], g["u"], g["q"], g["t"])
    return QtRational(num, den)


def _invert_poly(p, idx):
    """(p(var -> 1/var) * var^d, d) where d is p's degree in var."""
    d = p.to_dict()
    top = max(e[idx] for e in d) if d else 0
    out = {}
    for exps, c in d.items():
        e = list(exps)
        e[idx] = top - e[idx]
        out[tuple(e)] = c
    return _CTX.from_dict(out), top


def invert_var(x: QtRational, var: str) -> QtRational:
    """x with ``var`` replaced by ``1/var``."""
    idx = ("v", "u", "t", "q").index(var)
    num, dn = _invert_poly(x.num, idx)
    den, dd = _invert_poly(x.den, idx)
    shift = dd - dn
    g = _GENS[var]
    if shift > 0:
        num = num * g ** shift
    elif shift < 0:
        den = den * g ** (-shift)
    return QtRational(num, den)


def factored_parts(x: QtRational):
    """(numerator polynomial, factored denominator text or None).

    The denominator is split into primitive irreducible factors with a
    positive lowest term; display only, arithmetic never factors.
    """
    num, den = x.num, x.den
    if den.is_one():
        return num, None
    content, factors = den.factor()
    parts = []
    for f, e in sorted(factors, key=lambda fe: _factor_sort_key(fe[0])):
        scale = _primitive_scale(f)
        if _poly_terms(f * scale)[0][1] < 0:
            scale = -scale
        content = content / scale ** e
        f = f * scale
        body = format_poly(f, compact=True)
        if len(f.to_dict()) > 1:
            body = f"({body})"
        parts.append(body if e == 1 else f"{body}^{e}")
    num = num / content
    den_txt = "*".join(parts)
    if len(parts) > 1 or "^" in den_txt:
        den_txt = f"({den_txt})"
    return num, den_txt


def factor_text(x: QtRational) -> str:
    """Compact text with a factored denominator, e.g. ``1/((1-q)*(1-t))``."""
    num, den_txt = factored_parts(x)
    num_txt = format_poly(num, compact=True)
    if den_txt is None:
        return num_txt
    if len(num.to_dict()) > 1:
        num_txt = f"({num_txt})"
    return f"{num_txt}/{den_txt}"


def _factor_sort_key(f):
    return [(_monomial_key(e), c) for e, c in sorted(f.to_dict().items(), key=lambda kv: _monomial_key(kv[0]))]


class ZLaurent:
    """Laurent polynomial in z with QtRational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = {0: terms}
        clean = {}
        for k, c in terms.items():
            c = _coerce(c)
            if not c.is_zero():
                clean[int(k)] = c
        self.terms = clean

    @classmethod
    def z(cls, k=1):
        return cls({k: ONE})

    def coefficient(self, k: int) -> QtRational:
        return self.terms.get(k, ZERO)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def exponents(self):
        return sorted(self.terms)

    def __add__(self, other):
        other = _zl(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return ZLaurent(out)

    __radd__ = __add__

    def __neg__(self):
        return ZLaurent({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_zl(other))

    def __rsub__(self, other):
        return _zl(other) + (-self)

    def __mul__(self, other):
        other = _zl(other)
        out: dict[int, QtRational] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                p = ca * cb
                out[a + b] = out[a + b] + p if a + b in out else p
        return ZLaurent(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if len(self.terms) != 1:
                raise ZeroDivisionError("only monomials in z are invertible")
            (k, c), = self.terms.items()
            return ZLaurent({-k * (-e): c ** e})
        out = ZLaurent({0: ONE})
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        other = _zl(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def map(self, fn):
        return ZLaurent({k: fn(c) for k, c in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = str(self.terms[k])
            if k == 0:
                parts.append(c)
            else:
                zk = "z" if k == 1 else f"z^{k}"
                parts.append(zk if c == "1" else f"({c})*{zk}")
        return " + ".join(parts)

    def __repr__(self):
        return f"ZLaurent({str(self)!r})"


def _zl(x):
    if isinstance(x, ZLaurent):
        return x
    c = _coerce(x)
    if c is NotImplemented:
        return NotImplemented
    return ZLaurent({0: c})


def z_coefficient(x, k: int) -> QtRational:
    """Coefficient of z^k; zero when absent."""
    return _zl(x).coefficient(k)
