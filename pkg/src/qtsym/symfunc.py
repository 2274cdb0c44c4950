"""Graded symmetric functions over Q(q,t,u,v)[z, 1/z].

Every ``SymFunc`` is stored in the power-sum basis as a map
``(rho, z_exponent) -> QtRational``.  The other classical bases (m, e, h, s)
are produced on demand from cached rational transition data.

A ``SymFunc`` also carries ``prec``: homogeneous components of degree
above ``prec`` are unknown (truncated).  ``prec=None`` means the value is
exact in every degree.  Operations propagate ``prec`` so a truncated input
can never silently produce a wrong low-degree output.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache

import flint

from . import partition as P
from .coeffring import ONE, ZERO, QtRational, ZLaurent, factored_parts, format_poly

BASES = ("m", "e", "h", "p", "s")
BASIS_ALIASES = {
    "m": "m", "monomial": "m",
    "e": "e", "elementary": "e",
    "h": "h", "homogeneous": "h", "complete": "h",
    "p": "p", "powersum": "p", "power": "p",
    "s": "s", "schur": "s",
}


def basis_tag(name: str) -> str:
    try:
        return BASIS_ALIASES[name]
    except KeyError:
        raise ValueError(f"unknown basis {name!r}") from None


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class SymFunc:
    """A symmetric function with Laurent-in-z coefficients."""

    __slots__ = ("terms", "prec")

    def __init__(self, terms=None, prec=None):
        self.terms = {}
        if terms:
            for key, c in terms.items():
                if prec is not None and P.size(key[0]) > prec:
                    continue
                if not isinstance(c, QtRational):
                    c = QtRational(c)
                if not c.is_zero():
                    self.terms[key] = c
        self.prec = prec

    @classmethod
    def _raw(cls, terms, prec=None):
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.prec = prec
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, prec=None):
        return cls._raw({}, prec)

    @classmethod
    def one(cls):
        return cls._raw({((), 0): ONE})

    @classmethod
    def scalar(cls, c):
        if isinstance(c, ZLaurent):
            return cls({((), k): v for k, v in c.terms.items()})
        return cls({((), 0): c})

    @classmethod
    def from_basis(cls, basis: str, coeffs: dict, prec=None):
        """Build from ``{partition: coefficient}`` in ``basis``."""
        basis = basis_tag(basis)
        acc: dict = {}
        for lam, c in coeffs.items():
            lam = P.make(lam)
            if prec is not None and P.size(lam) > prec:
                continue
            zl = c if isinstance(c, ZLaurent) else ZLaurent({0: c})
            for rho, r in p_expansion(basis, lam).items():
                for k, ck in zl.terms.items():
                    _acc(acc, (rho, k), ck.scale(r))
        return cls._raw(_clean(acc), prec)

    # -- structure --------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degrees(self):
        return sorted({P.size(rho) for rho, _ in self.terms})

    def max_degree(self):
        d = self.degrees()
        return d[-1] if d else -1

    def min_degree(self):
        d = self.degrees()
        return d[0] if d else None

    def z_exponents(self):
        return sorted({k for _, k in self.terms})

    def is_z_free(self):
        return all(k == 0 for _, k in self.terms)

    def homogeneous(self, n: int) -> "SymFunc":
        if self.prec is not None and n > self.prec:
            raise ValueError(f"degree {n} lies outside the exactness window (<= {self.prec})")
        return SymFunc._raw({k: c for k, c in self.terms.items() if P.size(k[0]) == n})

    def truncate(self, prec) -> "SymFunc":
        if prec is None:
            return self
        prec = _min_prec(prec, self.prec)
        return SymFunc._raw({k: c for k, c in self.terms.items() if P.size(k[0]) <= prec}, prec)

    def as_exact(self) -> "SymFunc":
        """Drop the truncation flag; callers assert the kept terms are complete."""
        return SymFunc._raw(dict(self.terms))

    def z_coefficient(self, k: int) -> "SymFunc":
        return SymFunc._raw({(rho, 0): c for (rho, e), c in self.terms.items() if e == k}, self.prec)

    def z_split(self) -> dict:
        out: dict = {}
        for (rho, e), c in self.terms.items():
            out.setdefault(e, {})[(rho, 0)] = c
        return {e: SymFunc._raw(d, self.prec) for e, d in out.items()}

    def times_z(self, k: int) -> "SymFunc":
        return SymFunc._raw({(rho, e + k): c for (rho, e), c in self.terms.items()}, self.prec)

    def map_coefficients(self, fn) -> "SymFunc":
        acc = {}
        for key, c in self.terms.items():
            c = fn(c)
            if not c.is_zero():
                acc[key] = c
        return SymFunc._raw(acc, self.prec)

    def substitute(self, var, value) -> "SymFunc":
        return self.map_coefficients(lambda c: c.substitute(var, value))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _as_symfunc(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for key, c in other.terms.items():
            _acc(acc, key, c)
        prec = _min_prec(self.prec, other.prec)
        return SymFunc._raw(_clean(acc, prec), prec)

    __radd__ = __add__

    def __neg__(self):
        return SymFunc._raw({k: -c for k, c in self.terms.items()}, self.prec)

    def __sub__(self, other):
        other = _as_symfunc(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _as_symfunc(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            return multiply(self, other)
        if isinstance(other, ZLaurent):
            return multiply(self, SymFunc.scalar(other))
        if isinstance(other, (int, Fraction, QtRational)):
            c = other if isinstance(other, QtRational) else QtRational(other)
            if c.is_zero():
                return SymFunc.zero(self.prec)
            return SymFunc._raw({k: v * c for k, v in self.terms.items()}, self.prec)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, QtRational)):
            return self * (1 / QtRational(other))
        return NotImplemented

    def __pow__(self, e: int):
        out = SymFunc.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        """Exact equality on the common exactness window."""
        other = _as_symfunc(other)
        if other is NotImplemented:
            return False
        return not difference_witness(self, other)

    __hash__ = None

    # -- views ------------------------------------------------------------
    def coefficient(self, basis: str, lam) -> ZLaurent:
        return coefficient_of(self, basis, lam)

    def to_basis(self, basis: str) -> dict:
        return change_basis(self, basis)

    def format(self, basis: str = "p") -> str:
        return format_symfunc(self, basis)

    def __str__(self):
        return self.format("p")

    def __repr__(self):
        return f"SymFunc({self.format('p')!r})"

    def to_json(self, basis: str = "s") -> dict:
        return symfunc_to_json(self, basis)


def _acc(acc, key, c):
    if key in acc:
        acc[key] = acc[key] + c
    else:
        acc[key] = c


def _clean(acc, prec=None):
    if prec is None:
        return {k: c for k, c in acc.items() if not c.is_zero()}
    return {k: c for k, c in acc.items() if not c.is_zero() and P.size(k[0]) <= prec}


def _as_symfunc(x):
    if isinstance(x, SymFunc):
        return x
    if isinstance(x, (int, Fraction, QtRational, ZLaurent)):
        return SymFunc.scalar(x)
    return NotImplemented


def _merge(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, reverse=True))


def multiply(f: SymFunc, g: SymFunc) -> SymFunc:
    """Product; exact up to the degree both truncations allow."""
    prec = None
    if f.prec is not None:
        gm = g.min_degree()
        prec = f.prec + (gm if gm is not None else 0)
    if g.prec is not None:
        fm = f.min_degree()
        prec = _min_prec(prec, g.prec + (fm if fm is not None else 0))
    acc: dict = {}
    for (a, ea), ca in f.terms.items():
        for (b, eb), cb in g.terms.items():
            lam = _merge(a, b)
            if prec is not None and P.size(lam) > prec:
                continue
            _acc(acc, (lam, ea + eb), ca * cb)
    return SymFunc._raw(_clean(acc), prec)


# ---------------------------------------------------------------------------
# rational transition data (p-expansions of the classical bases)

_lock = threading.Lock()


def _rat_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for x, cx in a.items():
        for y, cy in b.items():
            key = _merge(x, y)
            out[key] = out.get(key, 0) + cx * cy
    return {k: c for k, c in out.items() if c != 0}


@lru_cache(maxsize=None)
def _h_n(n: int) -> dict:
    return {rho: flint.fmpq(1, P.z_lambda(rho)) for rho in P.partitions_of(n)}


@lru_cache(maxsize=None)
def _e_n(n: int) -> dict:
    return {rho: flint.fmpq((-1) ** (n - len(rho)), P.z_lambda(rho)) for rho in P.partitions_of(n)}


@lru_cache(maxsize=None)
def _product(kind: str, lam: tuple) -> dict:
    if not lam:
        return {(): flint.fmpq(1)}
    single = _h_n if kind == "h" else _e_n
    return _rat_mul(_product(kind, lam[:-1]), single(lam[-1]))


def _jacobi_trudi(lam: tuple) -> dict:
    """s_lam as {h-partition: integer} via det(h_{lam_i - i + j})."""
    ell = len(lam)
    if ell == 0:
        return {(): 1}

    @lru_cache(maxsize=None)
    def expand(row: int, used: int) -> tuple:
        if row == ell:
            return (((), 1),)
        out: dict = {}
        free = [j for j in range(ell) if not used & (1 << j)]
        for pos, j in enumerate(free):
            idx = lam[row] - row + j
            if idx < 0:
                continue
            sign = -1 if pos % 2 else 1
            for mono, c in expand(row + 1, used | (1 << j)):
                key = mono if idx == 0 else tuple(sorted(mono + (idx,), reverse=True))
                out[key] = out.get(key, 0) + sign * c
        return tuple((k, c) for k, c in out.items() if c)

    return dict(expand(0, 0))


@lru_cache(maxsize=None)
def _schur(lam: tuple) -> dict:
    out: dict = {}
    for mu, c in _jacobi_trudi(lam).items():
        for rho, r in _product("h", mu).items():
            out[rho] = out.get(rho, 0) + c * r
    return {k: c for k, c in out.items() if c != 0}


@lru_cache(maxsize=None)
def _monomial_table(n: int) -> dict:
    # m is the Hall dual of h:  sum_rho h_mu[rho] z_rho m_lam[rho] = delta
    parts = P.partitions_of(n)
    N = len(parts)
    A = flint.fmpq_mat(N, N)
    for i, mu in enumerate(parts):
        hm = _product("h", mu)
        for j, rho in enumerate(parts):
            c = hm.get(rho)
            if c:
                A[i, j] = c * P.z_lambda(rho)
    C = A.inv().transpose()
    out = {}
    for i, lam in enumerate(parts):
        out[lam] = {rho: C[i, j] for j, rho in enumerate(parts) if C[i, j] != 0}
    return out


@lru_cache(maxsize=None)
def _forgotten(lam: tuple) -> dict:
    n = P.size(lam)
    return {rho: c * (-1) ** (n - len(rho)) for rho, c in p_expansion("m", lam).items()}


def p_expansion(basis: str, lam: tuple) -> dict:
    """Rational power-sum coefficients of a basis element."""
    lam = tuple(lam)
    if basis == "p":
        return {lam: flint.fmpq(1)}
    if basis in ("h", "e"):
        return _product(basis, lam)
    if basis == "s":
        return _schur(lam)
    if basis == "m":
        return _monomial_table(P.size(lam))[lam]
    if basis == "f":
        return _forgotten(lam)
    raise ValueError(f"unknown basis {basis!r}")


_DUAL = {"s": "s", "h": "m", "m": "h", "e": "f"}


def warm(n: int) -> None:
    """Fill transition caches for every degree <= n."""
    with _lock:
        for k in range(n + 1):
            for lam in P.partitions_of(k):
                for b in ("s", "m", "h", "e"):
                    p_expansion(b, lam)


# ---------------------------------------------------------------------------
# inner products and basis changes


def hall_inner(f: SymFunc, g: SymFunc) -> ZLaurent:
    """Bilinear Hall pairing <p_lam, p_mu> = delta z_lam."""
    acc: dict = {}
    gt = g.terms
    byrho: dict = {}
    for (rho, e), c in gt.items():
        byrho.setdefault(rho, []).append((e, c))
    for (rho, e), c in f.terms.items():
        for e2, c2 in byrho.get(rho, ()):
            _acc(acc, e + e2, (c * c2).scale(P.z_lambda(rho)))
    return ZLaurent(acc)


@lru_cache(maxsize=None)
def qt_weight(rho: tuple) -> QtRational:
    from .coeffring import monomial

    w = QtRational(P.z_lambda(rho))
    for r in rho:
        w = w * (1 - monomial(r)) / (1 - monomial(0, r))
    return w


def qt_inner(f: SymFunc, g: SymFunc) -> QtRational:
    """Macdonald's pairing <p_lam, p_lam>_{q,t} = z_lam prod (1-q^l)/(1-t^l)."""
    if not (f.is_z_free() and g.is_z_free()):
        raise ValueError("qt_inner requires z-free arguments")
    acc = ZERO
    for (rho, _), c in f.terms.items():
        c2 = g.terms.get((rho, 0))
        if c2 is not None:
            acc = acc + c * c2 * qt_weight(rho)
    return acc


def _pair_rational(f_by_deg: dict, basis: str, lam: tuple) -> ZLaurent:
    """<f, b_lam^dual> using rational p-data, grouped by z exponent."""
    n = P.size(lam)
    acc: dict = {}
    for rho, r in p_expansion(_DUAL[basis], lam).items():
        for e, c in f_by_deg.get(n, {}).get(rho, ()):
            _acc(acc, e, c.scale(r * P.z_lambda(rho)))
    return ZLaurent(acc)


def _index(f: SymFunc) -> dict:
    idx: dict = {}
    for (rho, e), c in f.terms.items():
        idx.setdefault(P.size(rho), {}).setdefault(rho, []).append((e, c))
    return idx


def change_basis(f: SymFunc, target: str) -> dict:
    """Expansion ``{partition: ZLaurent}`` of ``f`` in ``target``."""
    target = basis_tag(target)
    if target == "p":
        out: dict = {}
        for (rho, e), c in f.terms.items():
            out.setdefault(rho, {})[e] = c
        return {rho: ZLaurent(d) for rho, d in sorted(out.items(), key=lambda kv: P.sort_key(kv[0]))}
    idx = _index(f)
    out = {}
    for n in sorted(idx):
        for lam in P.partitions_of(n):
            c = _pair_rational(idx, target, lam)
            if not c.is_zero():
                out[lam] = c
    return out


def coefficient_of(f: SymFunc, basis: str, lam) -> ZLaurent:
    basis = basis_tag(basis)
    lam = P.make(lam)
    if basis == "p":
        return ZLaurent({e: c for (rho, e), c in f.terms.items() if rho == lam})
    return _pair_rational(_index(f), basis, lam)


# ---------------------------------------------------------------------------
# convenience constructors


def _basis_fn(tag):
    def make(*parts):
        if len(parts) == 1 and isinstance(parts[0], (tuple, list)):
            parts = tuple(parts[0])
        parts = tuple(sorted(parts, reverse=True)) if tag in ("e", "h", "p") else parts
        return SymFunc.from_basis(tag, {P.make(parts): ONE})

    make.__name__ = tag
    make.__doc__ = f"The basis element {tag}_lambda as a SymFunc."
    return make


s = _basis_fn("s")
m = _basis_fn("m")
e = _basis_fn("e")
h = _basis_fn("h")
p = _basis_fn("p")


# ---------------------------------------------------------------------------
# text and JSON


def _z_text(k):
    if k == 0:
        return ""
    return "z" if k == 1 else f"z^{k}"


def _term_text(c: QtRational, zk: int, basis: str, lam: tuple):
    """(negative, body) for one term of the rendered expansion."""
    atom = f"{basis}[{','.join(map(str, lam))}]" if lam else ""
    tail = "*".join(x for x in (_z_text(zk), atom) if x)
    num, den_txt = factored_parts(c)
    neg = False
    if len(num.to_dict()) == 1:
        ntxt = format_poly(num, compact=True)
        if ntxt.startswith("-"):
            neg, ntxt = True, ntxt[1:]
        if ntxt == "1":
            ntxt = ""
    else:
        ntxt = f"({format_poly(num, compact=True)})"
    body = "*".join(x for x in (ntxt, tail) if x) or "1"
    if den_txt:
        body = f"{body}/{den_txt}"
    return neg, body


def format_symfunc(f: SymFunc, basis: str = "p") -> str:
    """DSL-compatible text such as ``s[2] + q*s[1,1]``."""
    basis = basis_tag(basis)
    expansion = change_basis(f, basis)
    rows = []
    for lam in sorted(expansion, key=P.sort_key):
        for k, c in sorted(expansion[lam].terms.items()):
            rows.append(_term_text(c, k, basis, lam))
    if not rows:
        return "0"
    out = []
    for i, (neg, body) in enumerate(rows):
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def symfunc_to_json(f: SymFunc, basis: str = "s") -> dict:
    basis = basis_tag(basis)
    terms = []
    expansion = change_basis(f, basis)
    for lam in sorted(expansion, key=P.sort_key):
        for k, c in sorted(expansion[lam].terms.items()):
            row = {"lambda": list(lam), "coeff": str(c)}
            if k:
                row["z"] = k
            terms.append(row)
    out = {"basis": basis, "terms": terms}
    if f.prec is not None:
        out["prec"] = f.prec
    return out


def symfunc_from_json(data: dict) -> SymFunc:
    from .coeffring import parse_qt

    basis = basis_tag(data["basis"])
    acc = SymFunc.zero()
    coeffs: dict = {}
    for row in data["terms"]:
        lam = tuple(row["lambda"])
        coeffs.setdefault(lam, {})[row.get("z", 0)] = parse_qt(row["coeff"])
    acc = SymFunc.from_basis(basis, {lam: ZLaurent(d) for lam, d in coeffs.items()},
                             prec=data.get("prec"))
    return acc


def difference_witness(f: SymFunc, g: SymFunc, basis: str = "p"):
    """First mismatching (partition, z-exponent, f-coeff, g-coeff), or None.

    Only degrees inside both exactness windows are compared.
    """
    prec = _min_prec(f.prec, g.prec)
    keys = set(f.terms) | set(g.terms)
    for key in sorted(keys, key=lambda k: (P.sort_key(k[0]), k[1])):
        if prec is not None and P.size(key[0]) > prec:
            continue
        a = f.terms.get(key, ZERO)
        b = g.terms.get(key, ZERO)
        if a != b:
            return key[0], key[1], a, b
    return None
