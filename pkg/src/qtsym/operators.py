"""Linear operators on symmetric functions and their evaluation.

Operators are small immutable ASTs (``Compose`` applies right to left, as
juxtaposition does in operator notation).  ``apply`` evaluates an AST on a SymFunc;
degree-raising series such as ``P`` are truncated at ``max_degree`` and
the result's ``prec`` records which degrees are exact.

The internal variable of D_k is a private dummy: a ``z`` already present in
the input is treated as a scalar, so P_{-z/M} D_r P_{z/M} is well defined.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from . import _mutation
from . import macdonald as mac
from .coeffring import ONE, ZLaurent, monomial
from .plethysm import M_ALPHA, X, Z, Alphabet, WindowError, plethysm, pleth_exp
from .symfunc import SymFunc, _acc, _e_n, _min_prec


class OperatorExpr:
    """Base class for operator AST nodes."""

    def __call__(self, f, max_degree=None):
        return apply(self, f, max_degree)

    def __str__(self):
        from .dsl import format_operator

        return format_operator(self)


@dataclass(frozen=True)
class Identity(OperatorExpr):
    pass


@dataclass(frozen=True)
class Mul(OperatorExpr):
    """Multiplication by a symmetric function (a SymFunc or a DSL expression)."""

    f: object


@dataclass(frozen=True)
class MulStar(OperatorExpr):
    """Multiplication by f[X/M]."""

    f: object


@dataclass(frozen=True)
class T(OperatorExpr):
    """Translation F[X] -> F[X + Y]."""

    alphabet: Alphabet


@dataclass(frozen=True)
class Pexp(OperatorExpr):
    """Multiplication by E[Z X]."""

    alphabet: Alphabet


@dataclass(frozen=True)
class DeltaF(OperatorExpr):
    F: object


@dataclass(frozen=True)
class DeltaU(OperatorExpr):
    """Delta_u (var='u') or Delta_v (var='v'), or their inverses."""

    var: str = "u"
    sign: int = 1


@dataclass(frozen=True)
class Nabla(OperatorExpr):
    sign: int = 1


@dataclass(frozen=True)
class Pi(OperatorExpr):
    sign: int = 1


@dataclass(frozen=True)
class Theta(OperatorExpr):
    k: int


@dataclass(frozen=True)
class D(OperatorExpr):
    k: int


@dataclass(frozen=True)
class Compose(OperatorExpr):
    ops: tuple

    def __post_init__(self):
        if not self.ops:
            raise ValueError("Compose needs at least one operator")
        object.__setattr__(self, "ops", tuple(self.ops))


@dataclass(frozen=True)
class LinComb(OperatorExpr):
    """sum of scalar * operator; scalars are ZLaurent (may contain z)."""

    terms: tuple = field(default=())

    def __post_init__(self):
        clean = []
        for c, op in self.terms:
            if not isinstance(c, ZLaurent):
                c = ZLaurent({0: c})
            if c.is_zero():
                raise ValueError("LinComb scalars must be nonzero")
            clean.append((c, op))
        object.__setattr__(self, "terms", tuple(clean))


@dataclass(frozen=True)
class ZCoeff(OperatorExpr):
    expr: OperatorExpr
    k: int


def _value(x) -> SymFunc:
    if isinstance(x, SymFunc):
        return x
    if hasattr(x, "evaluate"):
        return x.evaluate()
    raise TypeError(f"cannot evaluate {x!r} as a symmetric function")


# ---------------------------------------------------------------------------
# D_k


@lru_cache(maxsize=None)
def _dk_power_sum(k: int, lam: tuple, muts: tuple) -> tuple:
    """D_k p_lam in the power-sum basis (z-free), as a tuple of items."""
    sign = 1 if "exp-sign" in muts else -1
    mult = sorted(Counter(lam).items())
    acc: dict = {}

    def rec(idx, removed, keep, coeff):
        if idx == len(mult):
            n = k + removed
            if n < 0:
                return
            c = coeff.scale(sign ** n)
            for rho, r in _e_n(n).items():
                key = tuple(sorted(keep + rho, reverse=True))
                _acc(acc, key, c.scale(r))
            return
        part, m = mult[idx]
        mj = (1 - monomial(part)) * (1 - monomial(0, part))
        for i in range(m + 1):
            rec(idx + 1, removed + i * part, keep + (part,) * (m - i),
                coeff * mj ** i * comb(m, i))

    rec(0, 0, (), ONE)
    return tuple((rho, c) for rho, c in acc.items() if not c.is_zero())


def d_k(k: int, f: SymFunc) -> SymFunc:
    """D_k F = F[X + M/z] E[-zX] |_{z^k}; raises degree by exactly k."""
    muts = _mutation.signature()
    acc: dict = {}
    for (lam, e), c in f.terms.items():
        for rho, r in _dk_power_sum(k, lam, muts):
            _acc(acc, (rho, e), c * r)
    prec = None if f.prec is None else f.prec + k
    return SymFunc._raw({kk: c for kk, c in acc.items() if not c.is_zero()}, prec)


def d_series(f: SymFunc, k_range) -> dict:
    """{k: z^k coefficient of P_{-z} T_{M/z} f}, evaluated generically."""
    if not f.is_z_free():
        raise ValueError("d_series needs a z-free input")
    if f.prec is not None:
        raise WindowError("d_series needs an exact input")
    ks = list(k_range)
    if not ks:
        return {}
    top = max(ks)
    deg = max(f.max_degree(), 0)
    shifted = plethysm(f, X + M_ALPHA / Z)
    order = top + deg
    if order < 0:
        return {k: SymFunc.zero() for k in ks}
    series = shifted * pleth_exp(-(Z * X), order)
    return {k: series.z_coefficient(k).as_exact() for k in ks}


# ---------------------------------------------------------------------------
# evaluation


class _Evaluator:
    def __init__(self, max_degree):
        self.max_degree = max_degree

    def run(self, op, f: SymFunc) -> SymFunc:
        meth = getattr(self, "_" + type(op).__name__)
        out = meth(op, f)
        if self.max_degree is not None and out.max_degree() > self.max_degree:
            out = out.truncate(self.max_degree)
        return out

    def _Identity(self, op, f):
        return f

    def _Mul(self, op, f):
        return f * _value(op.f)

    def _MulStar(self, op, f):
        return f * plethysm(_value(op.f), X / M_ALPHA)

    def _T(self, op, f):
        if op.alphabet.has_x():
            raise ValueError("T expects an X-free alphabet")
        return plethysm(f, X + op.alphabet)

    def _Pexp(self, op, f):
        if op.alphabet.has_x():
            raise ValueError("P expects an X-free alphabet")
        if self.max_degree is None:
            raise WindowError("P needs a truncation degree (max_degree)")
        if f.is_zero():
            return SymFunc.zero(_min_prec(f.prec, self.max_degree))
        low = f.min_degree()
        order = self.max_degree - low
        if order < 0:
            raise WindowError("max_degree lies below the input degree")
        out = f * pleth_exp(op.alphabet * X, order)
        out = out.truncate(self.max_degree)
        out.prec = _min_prec(f.prec, self.max_degree)
        return out

    def _DeltaF(self, op, f):
        return mac.apply_delta_F(_value(op.F), f)

    def _DeltaU(self, op, f):
        return mac.apply_delta_u(f, op.sign, op.var)

    def _Nabla(self, op, f):
        return mac.apply_nabla(f, op.sign)

    def _Pi(self, op, f):
        return mac.apply_pi(f, op.sign)

    def _Theta(self, op, f):
        return mac.apply_theta(op.k, f)

    def _D(self, op, f):
        return d_k(op.k, f)

    def _Compose(self, op, f):
        for inner in reversed(op.ops):
            f = self.run(inner, f)
        return f

    def _LinComb(self, op, f):
        acc = SymFunc.zero()
        for c, inner in op.terms:
            acc = acc + self.run(inner, f) * c
        return acc

    def _ZCoeff(self, op, f):
        return self.run(op.expr, f).z_coefficient(op.k)


def apply(op: OperatorExpr, f: SymFunc, max_degree=None) -> SymFunc:
    """Evaluate ``op`` on ``f``; series are truncated at ``max_degree``."""
    return _Evaluator(max_degree).run(op, f)


# ---------------------------------------------------------------------------
# named operator families

P_PLUS = Pexp(Z / M_ALPHA)          # P_{z/M}
P_MINUS = Pexp(-(Z / M_ALPHA))      # P_{-z/M}


def conjugate_by_P_series(r: int, k_max: int, f: SymFunc) -> dict:
    """{k: [z^k] P_{-z/M} D_r P_{z/M} f} for 0 <= k <= k_max."""
    n = max(f.max_degree(), 0)
    bound = n + k_max + max(r, 0)
    series = apply(Compose((P_MINUS, D(r), P_PLUS)), f, bound)
    return {k: series.z_coefficient(k) for k in range(k_max + 1)}


def conjugate_by_P(r: int, k: int, f: SymFunc) -> SymFunc:
    """[z^k] P_{-z/M} D_r P_{z/M} f, truncated so the coefficient is exact."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return conjugate_by_P_series(r, k, f)[k]


def theta_bar(k: int, f: SymFunc) -> SymFunc:
    """(-1)^k Theta_k f."""
    out = mac.apply_theta(k, f)
    return -out if k % 2 else out


def theta_tilde(k: int, f: SymFunc) -> SymFunc:
    """Delta_v (-1)^k e_k^* Delta_v^{-1} f with v a formal variable."""
    g = mac.apply_delta_u(f, -1, "v") * mac.estar(k)
    if k % 2:
        g = -g
    return mac.apply_delta_u(g, 1, "v")


def theta_bar_u(k: int, f: SymFunc) -> SymFunc:
    """Delta_u (-1)^k e_k^* Delta_u^{-1} f, specialised at u = 1.

    Agrees with the Pi form in positive degree; on constants it gives 0 for
    k >= 1, whereas the Pi form uses Pi_() = 1.
    """
    g = mac.apply_delta_u(f, -1, "u") * mac.estar(k)
    if k % 2:
        g = -g
    if g.prec is not None:
        g.prec = f.prec + k
    return mac.apply_delta_u(g, 1, "u").substitute("u", 1)


def theta_bar_series(k: int, f: SymFunc, form: str = "pi") -> SymFunc:
    """T-bar_k f via Pi ('pi'), the u-specialised form ('u') or the v-form ('v')."""
    if form == "pi":
        return theta_bar(k, f)
    if form == "u":
        return theta_bar_u(k, f)
    if form == "v":
        return theta_tilde(k, f)
    raise ValueError(f"unknown form {form!r}")


def commutation_sides(Y: Alphabet, Zalpha: Alphabet, f: SymFunc, order: int):
    """Both sides of T_Y P_Z = E[YZ] P_Z T_Y as {z-exponent: SymFunc}.

    Every term of Z must carry exactly z^1 and Y must be free of z, so the
    series are graded by the power of z and each coefficient is exact.
    """
    if any(tm.mono[2] != 1 for tm in Zalpha.terms) or any(tm.mono[2] for tm in Y.terms):
        raise ValueError("commutation_check needs Z linear in z and Y free of z")
    if Y.has_x() or Zalpha.has_x():
        raise ValueError("Y and Z must be X-free")
    n = max(f.max_degree(), 0)
    bound = n + order

    def upto(g):
        return {e: g.z_coefficient(e).as_exact() for e in range(order + 1)}

    pz = apply(Pexp(Zalpha), f, bound)
    lhs = {e: plethysm(c, X + Y) for e, c in upto(pz).items()}
    ty = plethysm(f, X + Y)
    rhs_series = apply(Pexp(Zalpha), ty, max(ty.max_degree(), 0) + order)
    eyz = pleth_exp(Y * Zalpha, order)
    rhs_full = {e: SymFunc.zero() for e in range(order + 1)}
    rz = upto(rhs_series)
    for a in range(order + 1):
        ca = eyz.z_coefficient(a).as_exact()
        if ca.is_zero():
            continue
        for b in range(order + 1 - a):
            rhs_full[a + b] = rhs_full[a + b] + rz[b] * ca
    return lhs, rhs_full


def commutation_check(Y: Alphabet, Zalpha: Alphabet, f: SymFunc, order: int = 3) -> bool:
    lhs, rhs = commutation_sides(Y, Zalpha, f, order)
    return all(lhs[e] == rhs[e] for e in lhs)


def d_plus_series(f: SymFunc, k_max: int) -> dict:
    """{k: D_k f} for 1 <= k <= k_max: the z-coefficients of D_+(z) f."""
    return {k: d_k(k, f) for k in range(1, k_max + 1)}
