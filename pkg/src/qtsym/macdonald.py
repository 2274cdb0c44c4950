"""Modified Macdonald polynomials and the operators diagonal on them.

Construction: Gram-Schmidt on the monomial basis under the q,t pairing
gives P_mu; J_mu = c_mu(q,t) P_mu; then

    Ht_mu = t^{n(mu)} J_mu[X / (1 - 1/t); q, 1/t].

Coordinates in the Ht basis come from the star pairing, under which the
Ht_mu are orthogonal:

    <p_lam, p_mu>_* = delta (-1)^{|mu| - l(mu)} z_mu prod_i (1 - q^mu_i)(1 - t^mu_i).
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
from pathlib import Path

from . import _mutation
from . import partition as P
from .coeffring import ONE, ZERO, QtRational, ZLaurent, invert_var, monomial, parse_qt, u, v
from .symfunc import SymFunc, _acc, change_basis, p_expansion, qt_weight

CACHE_VERSION = 1
HARD_CAP = 9


class CacheLimitError(RuntimeError):
    """A degree beyond the allowed H~ cache range was requested."""


# ---------------------------------------------------------------------------
# Gram-Schmidt


def gram_schmidt(n: int, order=None) -> dict:
    """Macdonald P_mu for mu |- n, as {mu: {lam: coeff}} in the m basis.

    ``order`` is a linear extension of dominance listed from the smallest
    partition upward; the default is the reverse of enumerate_partitions.
    """
    parts = list(order) if order is not None else list(reversed(P.partitions_of(n)))
    mexp = {lam: p_expansion("m", lam) for lam in parts}

    def pair(a: dict, b: dict) -> QtRational:
        # <sum a_lam m_lam, sum b_lam m_lam>_{q,t}
        fa: dict = {}
        for lam, c in a.items():
            for rho, r in mexp[lam].items():
                _acc(fa, rho, c.scale(r))
        fb: dict = {}
        for lam, c in b.items():
            for rho, r in mexp[lam].items():
                _acc(fb, rho, c.scale(r))
        acc = ZERO
        for rho, c in fa.items():
            if rho in fb:
                acc = acc + c * fb[rho] * qt_weight(rho)
        return acc

    done: list = []
    out: dict = {}
    for mu in parts:
        vec = {mu: ONE}
        seed = {mu: ONE}
        for lam, plam, norm in done:
            c = pair(seed, plam) / norm
            if not c.is_zero():
                for nu, cn in plam.items():
                    _acc(vec, nu, -(c * cn))
        vec = {k: c for k, c in vec.items() if not c.is_zero()}
        done.append((mu, vec, pair(vec, vec)))
        out[mu] = vec
    return out


def macdonald_P(mu) -> SymFunc:
    mu = P.make(mu)
    data = gram_schmidt(P.size(mu))[mu]
    return SymFunc.from_basis("m", data)


def macdonald_J(mu) -> SymFunc:
    mu = P.make(mu)
    return macdonald_P(mu) * P.c_mu(mu)


def _ht_from_P(mu: tuple, pm: dict) -> SymFunc:
    """Ht_mu from the m-expansion of P_mu."""
    cm = P.c_mu(mu)
    pcoef: dict = {}
    for lam, c in pm.items():
        for rho, r in p_expansion("m", lam).items():
            _acc(pcoef, rho, (c * cm).scale(r))
    tn = monomial(0, P.n_stat(mu))
    terms = {}
    for rho, c in pcoef.items():
        c = invert_var(c, "t") * tn
        for r in rho:
            # p_r[X / (1 - 1/t)] = p_r * (-t^r) / (1 - t^r)
            c = c * (-monomial(0, r)) / (1 - monomial(0, r))
        if not c.is_zero():
            terms[(rho, 0)] = c
    return SymFunc._raw(terms)


def build_degree(n: int) -> dict:
    """{mu: Ht_mu} for every mu |- n, computed from scratch."""
    if n == 0:
        return {(): SymFunc.one()}
    ps = gram_schmidt(n)
    return {mu: _ht_from_P(mu, ps[mu]) for mu in P.partitions_of(n)}


# ---------------------------------------------------------------------------
# per-degree data and cache


def star_weight(rho: tuple) -> QtRational:
    return _star_weight(rho)


_star_cache: dict = {}


def _star_weight(rho):
    w = _star_cache.get(rho)
    if w is None:
        w = QtRational((-1) ** (P.size(rho) - len(rho)) * P.z_lambda(rho))
        for r in rho:
            w = w * (1 - monomial(r)) * (1 - monomial(0, r))
        _star_cache[rho] = w
    return w


class HtDegree:
    """Immutable Ht data for one degree."""

    def __init__(self, n: int, ht: dict):
        self.n = n
        self.parts = P.partitions_of(n)
        self.ht = ht
        self.pairing = {}
        self.norm = {}
        for mu in self.parts:
            vec = {}
            for (rho, _), c in ht[mu].terms.items():
                vec[rho] = c * _star_weight(rho)
            self.pairing[mu] = vec
            acc = ZERO
            for (rho, _), c in ht[mu].terms.items():
                acc = acc + c * vec[rho]
            self.norm[mu] = acc

    def coordinates(self, f_deg: dict) -> dict:
        """{mu: {z: coeff}} for a degree-n piece given as {(rho, z): c}."""
        out = {}
        for mu in self.parts:
            vec = self.pairing[mu]
            acc: dict = {}
            for (rho, e), c in f_deg.items():
                w = vec.get(rho)
                if w is not None:
                    _acc(acc, e, c * w)
            norm = self.norm[mu]
            acc = {e: c / norm for e, c in acc.items() if not c.is_zero()}
            if acc:
                out[mu] = acc
        return out

    def schur_records(self) -> list:
        recs = []
        for mu in self.parts:
            exp = change_basis(self.ht[mu], "s")
            rows = [{"lambda": list(lam), "coeff": str(c.coefficient(0))}
                    for lam, c in exp.items()]
            recs.append({"mu": list(mu), "schur": rows})
        return recs

    @classmethod
    def from_records(cls, n: int, records: list) -> "HtDegree":
        ht = {}
        for rec in records:
            coeffs = {tuple(r["lambda"]): parse_qt(r["coeff"]) for r in rec["schur"]}
            ht[tuple(rec["mu"])] = SymFunc.from_basis("s", coeffs)
        return cls(n, ht)


def default_cache_path() -> Path:
    env = os.environ.get("QTSYM_CACHE")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "qtsym" / f"ht_v{CACHE_VERSION}.json"


class HtCache:
    """Per-degree Ht store with single-flight builds and optional disk file.

    ``max_degree`` bounds what may be built; ``path=None`` keeps everything
    in memory.
    """

    def __init__(self, path=None, max_degree: int = HARD_CAP, build: bool = True):
        self.path = Path(path) if path else None
        self.max_degree = min(max_degree, HARD_CAP)
        self.build = build
        self._data: dict = {}
        self._lock = threading.Lock()
        self._loaded = False

    def _load(self):
        if self._loaded or self.path is None:
            self._loaded = True
            return
        self._loaded = True
        if not self.path.exists():
            return
        data = read_cache_file(self.path)
        for key, recs in data["degrees"].items():
            n = int(key)
            if n not in self._data:
                self._data[n] = HtDegree.from_records(n, recs)

    def degree(self, n: int) -> HtDegree:
        got = self._data.get(n)
        if got is not None:
            return got
        with self._lock:
            self._load()
            got = self._data.get(n)
            if got is not None:
                return got
            if n > self.max_degree:
                raise CacheLimitError(f"Ht basis in degree {n} exceeds the limit {self.max_degree}")
            if not self.build:
                raise CacheLimitError(f"degree {n} is not cached and building is disabled")
            got = HtDegree(n, build_degree(n))
            self._data[n] = got
            return got

    def cached_degrees(self):
        self._load()
        return sorted(self._data)

    def ensure(self, n: int):
        for k in range(n + 1):
            self.degree(k)

    def save(self):
        if self.path is None:
            raise ValueError("no cache path configured")
        write_cache_file(self.path, {k: self._data[k] for k in sorted(self._data)})


def _degree_digest(records) -> str:
    blob = json.dumps(records, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def write_cache_file(path: Path, degrees: dict):
    payload = {
        "version": CACHE_VERSION,
        "degrees": {str(n): d.schur_records() for n, d in degrees.items()},
    }
    payload["checksums"] = {k: _degree_digest(r) for k, r in payload["degrees"].items()}
    text = json.dumps(payload, indent=1, sort_keys=True) + "\n"
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + f".tmp{os.getpid()}")
    tmp.write_text(text)
    os.replace(tmp, path)


class CacheVersionError(RuntimeError):
    pass


def read_cache_file(path: Path) -> dict:
    data = json.loads(Path(path).read_text())
    if data.get("version") != CACHE_VERSION:
        raise CacheVersionError(f"cache {path} has version {data.get('version')!r}, expected {CACHE_VERSION}")
    for k, recs in data["degrees"].items():
        want = data.get("checksums", {}).get(k)
        if want is not None and want != _degree_digest(recs):
            raise CacheVersionError(f"checksum mismatch for degree {k} in {path}")
    return data


_default = HtCache()


def get_cache() -> HtCache:
    return _default


def set_cache(cache: HtCache) -> HtCache:
    global _default
    old, _default = _default, cache
    return old


# ---------------------------------------------------------------------------
# Ht basis and eigenoperators


def macdonald_Ht(mu) -> SymFunc:
    mu = P.make(mu)
    return get_cache().degree(P.size(mu)).ht[mu]


def _by_degree(f: SymFunc) -> dict:
    out: dict = {}
    for (rho, e), c in f.terms.items():
        out.setdefault(P.size(rho), {})[(rho, e)] = c
    return out


def to_Ht_basis(f: SymFunc) -> dict:
    """{mu: ZLaurent} with f = sum c_mu Ht_mu."""
    out = {}
    cache = get_cache()
    for n, piece in sorted(_by_degree(f).items()):
        for mu, coeffs in cache.degree(n).coordinates(piece).items():
            out[mu] = ZLaurent(coeffs)
    return out


def from_Ht_basis(coeffs: dict) -> SymFunc:
    acc: dict = {}
    for mu, zl in coeffs.items():
        if not isinstance(zl, ZLaurent):
            zl = ZLaurent({0: zl})
        for (rho, _), c in macdonald_Ht(mu).terms.items():
            for e, ce in zl.terms.items():
                _acc(acc, (rho, e), c * ce)
    return SymFunc._raw({k: c for k, c in acc.items() if not c.is_zero()})


def apply_eigen(f: SymFunc, eigenvalue) -> SymFunc:
    """Scale each Ht_mu component of f by eigenvalue(mu)."""
    cache = get_cache()
    acc: dict = {}
    for n, piece in _by_degree(f).items():
        deg = cache.degree(n)
        for mu, coeffs in deg.coordinates(piece).items():
            ev = eigenvalue(mu)
            if ev.is_zero():
                continue
            scaled = {e: c * ev for e, c in coeffs.items()}
            for (rho, _), c in deg.ht[mu].terms.items():
                for e, ce in scaled.items():
                    _acc(acc, (rho, e), c * ce)
    return SymFunc._raw({k: c for k, c in acc.items() if not c.is_zero()}, f.prec)


def b_alphabet(mu):
    from .plethysm import Alphabet, Term

    return Alphabet(tuple(Term(1, (i, j, 0, 0, 0)) for i, j in P.cells(mu)))


def delta_eigenvalue(F: SymFunc, mu) -> QtRational:
    """F[B_mu]."""
    from .plethysm import plethysm

    if not F.is_z_free():
        raise ValueError("Delta_F needs a z-free F")
    val = plethysm(F, b_alphabet(mu))
    return val.terms.get(((), 0), ZERO)


def apply_delta_F(F: SymFunc, f: SymFunc) -> SymFunc:
    memo: dict = {}

    def ev(mu):
        if mu not in memo:
            memo[mu] = delta_eigenvalue(F, mu)
        return memo[mu]

    return apply_eigen(f, ev)


def delta_var_eigenvalue(mu, var=None) -> QtRational:
    """prod over cells of (1 - var q^i t^j)."""
    x = u if var is None else var
    acc = ONE
    for i, j in P.cells(mu):
        acc = acc * (1 - x * monomial(i, j))
    return acc


def apply_delta_u(f: SymFunc, sign: int = 1, var: str = "u") -> SymFunc:
    x = {"u": u, "v": v}[var]
    if sign == 1:
        return apply_eigen(f, lambda mu: delta_var_eigenvalue(mu, x))
    return apply_eigen(f, lambda mu: 1 / delta_var_eigenvalue(mu, x))


def nabla_eigenvalue(mu) -> QtRational:
    ev = P.nabla_eigenvalue(tuple(mu))
    if _mutation.active("nabla-sign") and P.size(mu) % 2:
        ev = -ev
    return ev


def apply_nabla(f: SymFunc, sign: int = 1) -> SymFunc:
    if sign == 1:
        return apply_eigen(f, nabla_eigenvalue)
    return apply_eigen(f, lambda mu: 1 / nabla_eigenvalue(mu))


def apply_pi(f: SymFunc, sign: int = 1) -> SymFunc:
    if sign == 1:
        return apply_eigen(f, P.pi_mu)
    return apply_eigen(f, lambda mu: 1 / P.pi_mu(mu))


def estar(k: int) -> SymFunc:
    """e_k[X/M]."""
    from .plethysm import M_ALPHA, X, e_n_of_alphabet

    return e_n_of_alphabet(k, X / M_ALPHA)


def apply_theta(k: int, f: SymFunc) -> SymFunc:
    """Theta_k = Pi e_k^* Pi^{-1}."""
    if k < 0:
        raise ValueError("Theta_k needs k >= 0")
    if k == 0:
        return f
    g = apply_pi(f, -1) * estar(k)
    if g.prec is not None:
        g.prec = f.prec + k
    return apply_pi(g, 1)
