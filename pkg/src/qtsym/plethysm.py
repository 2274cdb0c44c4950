"""Plethystic alphabets, substitution f[A], and the plethystic exponential.

An ``Alphabet`` is a finite signed sum of terms ``c * mono * (X or 1) /
prod(1 - m)``, where ``mono`` is a Laurent monomial in q, t, z, u, v and the
denominator monomials ``m`` are free of z.  This covers every alphabet the
operator calculus needs: ``X``, ``-z*X``, ``X + M/z``, ``X/M``, ``z*v*X/M``.

Coefficients of a symmetric function are constants under plethysm; only
the power sums are substituted.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .coeffring import ONE, QtRational, ZLaurent, monomial
from .symfunc import SymFunc, _acc, _clean, _h_n, p_expansion

# exponent order inside a monomial
MONO_VARS = ("q", "t", "z", "u", "v")
_UNIT = (0, 0, 0, 0, 0)


def _mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _mono_pow(a, k):
    return tuple(x * k for x in a)


@dataclass(frozen=True)
class Term:
    coeff: int
    mono: tuple = _UNIT
    has_x: bool = False
    denoms: tuple = ()

    def shape(self):
        return (self.mono, self.has_x, self.denoms)


def _normalize(terms) -> tuple:
    acc: dict = {}
    for tm in terms:
        if tm.denoms and any(d[2] for d in tm.denoms):
            raise ValueError("denominator monomials must not involve z")
        if any(d == _UNIT for d in tm.denoms):
            raise ZeroDivisionError("denominator factor 1 - 1")
        key = (tm.mono, tm.has_x, tuple(sorted(tm.denoms)))
        acc[key] = acc.get(key, 0) + tm.coeff
    out = [Term(c, mono, hx, den) for (mono, hx, den), c in acc.items() if c]
    out.sort(key=lambda tm: (not tm.has_x, len(tm.denoms), tm.denoms, sum(tm.mono), tm.mono, tm.coeff))
    return tuple(out)


@dataclass(frozen=True)
class Alphabet:
    """Formal signed sum of monomial terms; immutable and hashable."""

    terms: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", _normalize(self.terms))

    # -- constructors -----------------------------------------------------
    @classmethod
    def x(cls):
        return cls((Term(1, _UNIT, True),))

    @classmethod
    def mono(cls, coeff=1, **exps):
        mono = tuple(exps.get(n, 0) for n in MONO_VARS)
        return cls((Term(coeff, mono),))

    @classmethod
    def m(cls):
        """M = (1-q)(1-t) as four signed monomials."""
        return cls((Term(1), Term(-1, (1, 0, 0, 0, 0)), Term(-1, (0, 1, 0, 0, 0)),
                    Term(1, (1, 1, 0, 0, 0))))

    # -- structure --------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def has_x(self):
        return any(tm.has_x for tm in self.terms)

    def pure_x(self):
        return bool(self.terms) and all(tm.has_x for tm in self.terms)

    def constant_part(self):
        return Alphabet(tuple(tm for tm in self.terms if not tm.has_x))

    def x_part(self):
        return Alphabet(tuple(tm for tm in self.terms if tm.has_x))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        return Alphabet(self.terms + _alpha(other).terms)

    __radd__ = __add__

    def __neg__(self):
        return Alphabet(tuple(Term(-tm.coeff, tm.mono, tm.has_x, tm.denoms) for tm in self.terms))

    def __sub__(self, other):
        return self + (-_alpha(other))

    def __rsub__(self, other):
        return _alpha(other) + (-self)

    def __mul__(self, other):
        other = _alpha(other)
        out = []
        for a in self.terms:
            for b in other.terms:
                if a.has_x and b.has_x:
                    raise ValueError("alphabets are linear in X; X*X is not allowed")
                out.append(Term(a.coeff * b.coeff, _mono_mul(a.mono, b.mono),
                                a.has_x or b.has_x, a.denoms + b.denoms))
        return Alphabet(tuple(out))

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a monomial, by M, or by 1 - monomial."""
        other = _alpha(other)
        if other == Alphabet.m():
            return self._with_denoms(((1, 0, 0, 0), (0, 1, 0, 0)))
        if len(other.terms) == 1:
            tm = other.terms[0]
            if tm.has_x or tm.denoms or abs(tm.coeff) != 1:
                raise ValueError(f"cannot divide by {other}")
            inv = tuple(-x for x in tm.mono)
            return Alphabet(tuple(Term(a.coeff * tm.coeff, _mono_mul(a.mono, inv), a.has_x, a.denoms)
                                  for a in self.terms))
        if len(other.terms) == 2:
            one = [tm for tm in other.terms if tm.mono == _UNIT and tm.coeff == 1]
            rest = [tm for tm in other.terms if tm not in one]
            if one and rest and rest[0].coeff == -1 and not rest[0].has_x and not rest[0].denoms:
                mono = rest[0].mono
                if mono[2]:
                    raise ValueError("denominator monomials must not involve z")
                return self._with_denoms(((mono[0], mono[1], mono[3], mono[4]),))
        raise ValueError(f"cannot divide by {other}")

    def _with_denoms(self, extra):
        return Alphabet(tuple(Term(tm.coeff, tm.mono, tm.has_x, tm.denoms + extra) for tm in self.terms))

    def __str__(self):
        return format_alphabet(self)

    def __repr__(self):
        return f"Alphabet({format_alphabet(self)!r})"


def _alpha(x):
    if isinstance(x, Alphabet):
        return x
    if isinstance(x, int):
        return Alphabet((Term(x),)) if x else Alphabet()
    raise TypeError(f"cannot use {type(x).__name__} as an alphabet")


def _mono_text(mono):
    parts = []
    for name, e in zip(MONO_VARS, mono):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_alphabet(a: Alphabet) -> str:
    """Compact DSL text, e.g. ``X+z^-1-q*z^-1``; re-parses to ``a``."""
    if not a.terms:
        return "0"
    out = []
    for i, tm in enumerate(a.terms):
        factors = []
        c = abs(tm.coeff)
        if c != 1:
            factors.append(str(c))
        mt = _mono_text(tm.mono)
        if mt:
            factors.append(mt)
        if tm.has_x:
            factors.append("X")
        body = "*".join(factors) or "1"
        denoms = list(tm.denoms)
        if (1, 0, 0, 0) in denoms and (0, 1, 0, 0) in denoms:
            denoms.remove((1, 0, 0, 0))
            denoms.remove((0, 1, 0, 0))
            body += "/M"
        for d in denoms:
            dm = _mono_text((d[0], d[1], 0, d[2], d[3]))
            body += f"/(1-{dm})"
        sign = "-" if tm.coeff < 0 else ("+" if i else "")
        out.append(sign + body)
    return "".join(out)


def _scalar_mono(mono) -> tuple:
    """(z exponent, QtRational) for a monomial in q,t,z,u,v."""
    eq, et, ez, eu, ev = mono
    return ez, monomial(eq, et, eu, ev)


@lru_cache(maxsize=4096)
def pk_parts(k: int, a: Alphabet) -> tuple:
    """p_k[A] split as (X coefficient, constant part), both ZLaurent."""
    if k < 1:
        raise ValueError("k must be positive")
    xs: dict = {}
    cs: dict = {}
    for tm in a.terms:
        ez, c = _scalar_mono(_mono_pow(tm.mono, k))
        c = c.scale(tm.coeff)
        for d in tm.denoms:
            c = c / (1 - monomial(d[0] * k, d[1] * k, d[2] * k, d[3] * k))
        _acc(xs if tm.has_x else cs, ez, c)
    return ZLaurent(xs), ZLaurent(cs)


def pk_of_alphabet(k: int, a: Alphabet) -> SymFunc:
    """p_k[A] as a SymFunc."""
    xc, cc = pk_parts(k, a)
    terms = {}
    for e, c in xc.terms.items():
        terms[((k,), e)] = c
    for e, c in cc.terms.items():
        terms[((), e)] = c
    return SymFunc._raw(terms)


def _zl_scale(zl: ZLaurent, c: QtRational, shift: int, into: dict, rho: tuple):
    for e, ce in zl.terms.items():
        _acc(into, (rho, e + shift), ce * c)


@lru_cache(maxsize=None)
def _pleth_monomial(lam: tuple, a: Alphabet) -> tuple:
    """p_lam[A] as a tuple of ((rho, z), QtRational)."""
    from collections import Counter

    acc: dict = {((), 0): ONE}
    for k, mult in sorted(Counter(lam).items()):
        xc, cc = pk_parts(k, a)
        # (x p_k + c)^mult = sum_j C(mult, j) x^j c^(mult-j) p_k^j
        xpow = [ZLaurent({0: ONE})]
        cpow = [ZLaurent({0: ONE})]
        for _ in range(mult):
            xpow.append(xpow[-1] * xc)
            cpow.append(cpow[-1] * cc)
        factor: dict = {}
        for j in range(mult + 1):
            coef = (xpow[j] * cpow[mult - j]) * comb(mult, j)
            for e, c in coef.terms.items():
                _acc(factor, ((k,) * j, e), c)
        new: dict = {}
        for (r1, e1), c1 in acc.items():
            for (r2, e2), c2 in factor.items():
                if c2.is_zero():
                    continue
                rho = tuple(sorted(r1 + r2, reverse=True))
                _acc(new, (rho, e1 + e2), c1 * c2)
        acc = {k_: c for k_, c in new.items() if not c.is_zero()}
    return tuple(acc.items())


def plethysm(f: SymFunc, a: Alphabet) -> SymFunc:
    """f[A]: replace every p_k by p_k[A]."""
    if f.prec is not None and a.constant_part().terms:
        raise WindowError("translation of a truncated symmetric function is not exact in any degree")
    if f.prec is not None and not a.has_x():
        raise WindowError("evaluation of a truncated symmetric function at a constant alphabet")
    acc: dict = {}
    for (lam, e), c in f.terms.items():
        for (rho, e2), c2 in _pleth_monomial(lam, a):
            _acc(acc, (rho, e + e2), c * c2)
    return SymFunc._raw(_clean(acc), f.prec)


class WindowError(ArithmeticError):
    """Raised when truncation leaves no degree on which a result is exact."""


def h_n_of_alphabet(n: int, a: Alphabet) -> SymFunc:
    """h_n[A] = sum_rho p_rho[A] / z_rho."""
    acc = SymFunc.zero()
    for rho, c in _h_n(n).items():
        acc = acc + plethysm(SymFunc._raw({(rho, 0): ONE}), a) * QtRational(c)
    return acc


def e_n_of_alphabet(n: int, a: Alphabet) -> SymFunc:
    acc = SymFunc.zero()
    for rho, c in p_expansion("e", (n,) if n else ()).items():
        acc = acc + plethysm(SymFunc._raw({(rho, 0): ONE}), a) * QtRational(c)
    return acc


@lru_cache(maxsize=256)
def _pleth_exp_cached(a: Alphabet, max_degree: int) -> SymFunc:
    acc = SymFunc.zero()
    for n in range(max_degree + 1):
        acc = acc + h_n_of_alphabet(n, a)
    if a.pure_x():
        acc.prec = max_degree
    return acc


def pleth_exp(a: Alphabet, max_degree: int) -> SymFunc:
    """E[A] = sum_{n <= max_degree} h_n[A].

    For an alphabet whose every term carries X the result is exact in
    X-degree up to ``max_degree``.  A constant alphabet yields the partial
    sum of the scalar series; mixed alphabets are rejected.
    """
    if a.has_x() and not a.pure_x():
        raise ValueError("pleth_exp needs an alphabet that is either all-X or X-free")
    out = _pleth_exp_cached(a, max_degree)
    return SymFunc._raw(dict(out.terms), out.prec)


X = Alphabet.x()
M_ALPHA = Alphabet.m()
Z = Alphabet.mono(z=1)
