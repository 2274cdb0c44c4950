"""Named identity suites checked exactly on the modified Macdonald basis.

Each suite applies both sides of an operator identity to every Ht_mu with
|mu| <= max_degree and compares the results exactly (u and v stay formal).
Reports are plain data and serialise deterministically; wall time is only
included on request.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from multiprocessing import get_context

from . import macdonald as mac
from . import operators as ops
from . import partition as P
from .coeffring import ZERO, M, monomial, swap_qt, u
from .plethysm import M_ALPHA, Z, Alphabet, WindowError
from .symfunc import SymFunc, difference_witness, e, p, s

R_RANGE = (-2, 3)


class UnknownSuiteError(KeyError):
    pass


# ---------------------------------------------------------------------------
# reports


@dataclass
class SuiteReport:
    suite: str
    params: dict
    cases: list = field(default_factory=list)
    ms: int | None = None

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.cases)

    def failures(self) -> list:
        return [c for c in self.cases if not c["pass"]]

    def to_dict(self, timing: bool = False) -> dict:
        out = {"suite": self.suite, "params": self.params, "pass": self.passed, "cases": self.cases}
        if timing and self.ms is not None:
            out["ms"] = self.ms
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=1)

    def summary(self) -> str:
        bad = len(self.failures())
        status = "PASS" if self.passed else f"FAIL ({bad} of {len(self.cases)} cases)"
        return f"{self.suite}: {status} [{len(self.cases)} cases]"


def _case_key(c):
    mu = tuple(c["mu"])
    return (P.size(mu), P.sort_key(mu), c.get("k", 0), c.get("r", 0))


def _witness(lhs: SymFunc, rhs: SymFunc):
    w = difference_witness(lhs, rhs)
    if w is None:
        return None
    lam, zexp, a, b = w
    return {"basis": "p", "lambda": list(lam), "z": zexp, "lhs": str(a), "rhs": str(b)}


def _case(mu, lhs, rhs, **idx) -> dict:
    out = {"mu": list(mu), **idx}
    w = _witness(lhs, rhs)
    out["pass"] = w is None
    if w is not None:
        out["witness"] = w
    return out


def _first_failure(mu, pairs, **idx) -> dict:
    """One case from several (label, lhs, rhs) checks; reports the first miss."""
    for label, lhs, rhs in pairs:
        c = _case(mu, lhs, rhs, **idx)
        if not c["pass"]:
            c["witness"]["check"] = label
            return c
    return {"mu": list(mu), **idx, "pass": True}


# ---------------------------------------------------------------------------
# suite bodies: each takes (mu, params) and returns a list of cases

U = Alphabet.mono(u=1)
V = Alphabet.mono(v=1)


def _ht(mu):
    return mac.macdonald_Ht(mu)


def _cap_k(n: int, k_max: int, extra: int = 0) -> int:
    """Largest k with n + k + extra inside the Ht cache cap."""
    return max(min(k_max, mac.HARD_CAP - n - extra), -1)


def _delta_eigen(mu, prm):
    H = _ht(mu)
    lhs = SymFunc.zero()
    for k in range(P.size(mu) + 1):
        term = mac.apply_delta_F(e(k) if k else SymFunc.one(), H)
        lhs = lhs + term * (-u) ** k
    rhs = H * mac.delta_var_eigenvalue(mu, u)
    return [_case(mu, lhs, rhs)]


def _pi_specialization(mu, prm):
    H = _ht(mu)
    lhs = mac.apply_pi(H)
    rhs = (mac.apply_delta_u(H, 1, "u") / (1 - u)).substitute("u", 1)
    return [_case(mu, lhs, rhs)]


def _nabla_conjugation(mu, prm):
    H = _ht(mu)
    lhs = ops.d_k(1, H)
    rhs = mac.apply_nabla(mac.apply_nabla(H, -1) * e(1), 1)
    return [_case(mu, lhs, rhs)]


def _d_series(mu, prm):
    H = _ht(mu)
    ks = range(-prm["max_degree"], prm["k_max"] + 1)
    series = ops.d_series(H, ks)
    return [_case(mu, ops.d_k(k, H), series[k], k=k) for k in ks]


def _d_zero_eigen(mu, prm):
    H = _ht(mu)
    b = ZERO
    for i, j in P.cells(mu):
        b = b + monomial(i, j)
    return [_case(mu, ops.d_k(0, H), H * (1 - M * b))]


def _order(mu, prm):
    return max(_cap_k(P.size(mu), prm["k_max"]), 0)


def _five_term(mu, prm):
    H = _ht(mu)
    lhs = ops.apply(ops.Compose((ops.Nabla(-1), ops.T(U * V), ops.Nabla(1))), H)
    rhs = ops.apply(ops.Compose((ops.DeltaU("v", -1), ops.T(U), ops.DeltaU("v", 1), ops.T(-U))), H)
    return [_case(mu, lhs, rhs)]


def _five_term_dual(mu, prm):
    H = _ht(mu)
    bound = P.size(mu) + _order(mu, prm)
    lhs = ops.apply(ops.Compose((ops.Nabla(1), ops.Pexp(-(U * V) / M_ALPHA), ops.Nabla(-1))), H, bound)
    rhs = ops.apply(ops.Compose((ops.Pexp(U / M_ALPHA), ops.DeltaU("v", 1),
                                 ops.Pexp(-U / M_ALPHA), ops.DeltaU("v", -1))), H, bound)
    return [_case(mu, lhs, rhs)]


def _ttilde_rewrite(mu, prm):
    H = _ht(mu)
    bound = P.size(mu) + _order(mu, prm)
    zv = Z * V / M_ALPHA
    a1 = ops.apply(ops.Compose((ops.DeltaU("v", 1), ops.P_MINUS, ops.DeltaU("v", -1))), H, bound)
    b1 = ops.apply(ops.Compose((ops.P_MINUS, ops.Nabla(1), ops.Pexp(-zv), ops.Nabla(-1))), H, bound)
    a2 = ops.apply(ops.Compose((ops.DeltaU("v", 1), ops.P_PLUS, ops.DeltaU("v", -1))), H, bound)
    b2 = ops.apply(ops.Compose((ops.Nabla(1), ops.Pexp(zv), ops.Nabla(-1), ops.P_PLUS)), H, bound)
    return [_first_failure(mu, [("minus", a1, b1), ("plus", a2, b2)])]


def _main_theorem(mu, prm):
    H = _ht(mu)
    n = P.size(mu)
    k_top = _cap_k(n, prm["k_max"])
    if k_top < 1:
        return []
    d_form = ops.conjugate_by_P_series(1, k_top - 1, H)
    chain = ops.Compose((ops.P_MINUS, ops.Nabla(1), ops.Mul(e(1)), ops.Nabla(-1), ops.P_PLUS))
    nabla_form = ops.apply(chain, H, n + k_top)
    out = []
    for k in range(1, k_top + 1):
        want = ops.d_k(k, H)
        out.append(_first_failure(mu, [("D1", want, d_form[k - 1]),
                                       ("nabla", want, nabla_form.z_coefficient(k - 1))], k=k))
    return out


def _d_shift(mu, prm):
    H = _ht(mu)
    out = []
    for r in range(R_RANGE[0], R_RANGE[1] + 1):
        series = ops.conjugate_by_P_series(r, prm["k_max"], H)
        for k in range(prm["k_max"] + 1):
            out.append(_case(mu, series[k], ops.d_k(k + r, H), k=k, r=r))
    return out


def _theta_for(f: SymFunc):
    """T-bar_k on f: the Pi form, or the Delta_u form when f has a degree-0 part."""
    if f.min_degree() == 0 and not f.is_zero():
        return lambda k, g: ops.theta_bar_series(k, g, form="u")
    return lambda k, g: ops.theta_bar_series(k, g, form="pi")


def _theta_commutator(mu, prm):
    H = _ht(mu)
    n = P.size(mu)
    tb = _theta_for(H)

    def theta(k, g):
        out = tb(k, g)
        return -out if k % 2 else out

    out = []
    for k in range(0, _cap_k(n, prm["k_max"], 1) + 1):
        lhs = theta(k, ops.d_k(1, H)) - ops.d_k(1, theta(k, H))
        rhs = SymFunc.zero()
        for i in range(1, k + 1):
            term = ops.d_k(i + 1, theta(k - i, H))
            rhs = rhs + (-term if i % 2 else term)
        out.append(_case(mu, lhs, rhs, k=k))
    return out


def _theta_specialization(mu, prm):
    H = _ht(mu)
    out = []
    for k in range(0, _cap_k(P.size(mu), prm["k_max"]) + 1):
        lhs = ops.theta_tilde(k, H).substitute("v", 1)
        out.append(_case(mu, lhs, ops.theta_bar(k, H), k=k))
    return out


_HAND = {
    (2,): s(2) + s(1, 1) * monomial(1),
    (1, 1): s(2) + s(1, 1) * monomial(0, 1),
    (2, 1): s(3) + s(2, 1) * (monomial(1) + monomial(0, 1)) + s(1, 1, 1) * monomial(1, 1),
}


def _macdonald_crosscheck(mu, prm):
    H = _ht(mu)
    n = P.size(mu)
    checks = [
        ("conjugate-swap", H.map_coefficients(swap_qt), _ht(P.conjugate(mu))),
        ("q=t=1", H.substitute("q", 1).substitute("t", 1), p(1) ** n if n else SymFunc.one()),
        ("s_n-coefficient", SymFunc.scalar(H.coefficient("s", (n,) if n else ()).coefficient(0)),
         SymFunc.one()),
    ]
    if mu in _HAND:
        checks.append(("hand", H, _HAND[mu]))
    return [_first_failure(mu, checks)]


def _random_alphabets(mu):
    rng = random.Random(repr(("commutation", mu)))

    def mono(with_z):
        ex = dict(q=rng.randint(0, 2), t=rng.randint(0, 2), u=rng.randint(0, 1))
        if with_z:
            ex["z"] = 1
        return Alphabet.mono(rng.choice((1, -1)), **ex)

    Y = Alphabet()
    for _ in range(rng.randint(1, 2)):
        Y = Y + mono(False)
    Zs = Alphabet()
    while Zs.is_zero():
        for _ in range(rng.randint(1, 2)):
            Zs = Zs + mono(True)
    return Y, Zs


def _commutation_lemma(mu, prm):
    H = _ht(mu)
    Y, Zs = _random_alphabets(mu)
    order = min(prm["k_max"], 3)
    lhs, rhs = ops.commutation_sides(Y, Zs, H, order)
    out = []
    for k in range(order + 1):
        c = _case(mu, lhs[k], rhs[k], k=k)
        out.append(c)
    return out


@dataclass(frozen=True)
class Suite:
    name: str
    description: str
    anchor: str
    body: object
    uses_k: bool = True
    skip_empty: bool = False
    extra: tuple = ()
    reach: str = ""  # "1": Ht needed one degree up; "k": up to k_max + 1 above

    def top_degree(self, max_degree: int, k_max: int) -> int:
        up = {"": 0, "1": 1, "k": k_max + 1}[self.reach]
        return min(mac.HARD_CAP, max_degree + up)


SUITES = {s_.name: s_ for s_ in [
    Suite("delta-eigen", "Delta_u acts diagonally on Ht_mu, via sum_k (-u)^k Delta_{e_k}",
          "Delta_u Ht_mu = Ht_mu prod_{(i,j) in mu} (1 - u q^i t^j)", _delta_eigen, uses_k=False),
    Suite("pi-specialization", "Pi agrees with Delta_u/(1-u) at u = 1 (|mu| >= 1)",
          "Pi = Delta_u/(1-u) |_{u=1}", _pi_specialization, uses_k=False, skip_empty=True),
    Suite("nabla-conjugation", "D_1 equals nabla e_1 nabla^{-1} with the signed nabla",
          "D_1 = nabla e_1 nabla^{-1}", _nabla_conjugation, uses_k=False, reach="1"),
    Suite("d-series", "closed-form D_k against the generating series F[X+M/z] E[-zX]",
          "D_k F = F[X + M/z] E[-zX] |_{z^k}", _d_series),
    Suite("d-zero-eigen", "D_0 Ht_mu = (1 - M B_mu) Ht_mu",
          "D_0 Ht_mu = (1 - M B_mu) Ht_mu", _d_zero_eigen, uses_k=False),
    Suite("five-term", "nabla^{-1} T_{uv} nabla against Delta_v^{-1} T_u Delta_v T_u^{-1}",
          "nabla^{-1} T_{uv} nabla = Delta_v^{-1} T_u Delta_v T_u^{-1}", _five_term, uses_k=False),
    Suite("five-term-dual", "the dual five-term relation for plethystic exponentials",
          "nabla P_{-uv/M} nabla^{-1} = P_{u/M} Delta_v P_{-u/M} Delta_v^{-1}", _five_term_dual,
          extra=("order",), reach="k"),
    Suite("ttilde-rewrite", "Delta_v P_{-z/M} Delta_v^{-1} rewritten through nabla, both signs",
          "Delta_v P_{-z/M} Delta_v^{-1} = P_{-z/M} nabla P_{-zv/M} nabla^{-1}", _ttilde_rewrite,
          extra=("order",), reach="k"),
    Suite("main-theorem", "D_+(z) = z P_{-z/M} D_1 P_{z/M}, also with D_1 = nabla e_1 nabla^{-1}",
          "D_k = P_{-z/M} D_1 P_{z/M} |_{z^{k-1}}", _main_theorem, reach="k"),
    Suite("d-shift", "P_{-z/M} D_r P_{z/M} |_{z^k} = D_{k+r} for r in [-2, 3]",
          "P_{-z/M} D_r P_{z/M} |_{z^k} = D_{k+r}", _d_shift, extra=("r_range",)),
    Suite("theta-commutator", "Theta_k D_1 - D_1 Theta_k = sum_i (-1)^i D_{i+1} Theta_{k-i}",
          "[Theta_k, D_1] = sum_{i=1}^k (-1)^i D_{i+1} Theta_{k-i}", _theta_commutator, reach="k"),
    Suite("theta-specialization", "the v-form of T-bar_k at v = 1 against the Pi form (|mu| >= 1)",
          "Delta_v (-1)^k e_k^* Delta_v^{-1} |_{v=1} = (-1)^k Theta_k", _theta_specialization,
          skip_empty=True, reach="k"),
    Suite("macdonald-crosscheck", "q<->t under conjugation, q=t=1 gives p_1^n, s_(n) coefficient 1",
          "Ht_mu[X; q, t] = Ht_mu'[X; t, q]", _macdonald_crosscheck, uses_k=False),
    Suite("commutation-lemma", "T_Y P_Z = E[YZ] P_Z T_Y on seeded random monomial alphabets",
          "T_Y P_Z = E[YZ] P_Z T_Y", _commutation_lemma),
]}


def list_suites() -> list:
    """(name, description, anchor) for every registered suite, in run order."""
    return [(x.name, x.description, x.anchor) for x in SUITES.values()]


def _params(suite: Suite, max_degree: int, k_max: int) -> dict:
    out = {"max_degree": max_degree, "cap": mac.HARD_CAP}
    if suite.uses_k:
        lo = -max_degree if suite.name == "d-series" else (1 if suite.name == "main-theorem" else 0)
        if suite.name == "commutation-lemma":
            out["k_range"] = [0, min(k_max, 3)]
        else:
            out["k_range"] = [lo, k_max]
    if "order" in suite.extra:
        out["order"] = k_max
    if "r_range" in suite.extra:
        out["r_range"] = list(R_RANGE)
    return out


def _run_case(name: str, mu: tuple, prm: dict) -> list:
    return SUITES[name].body(mu, prm)


def _run_chunk(name: str, mus: list, prm: dict) -> list:
    out = []
    for mu in mus:
        out.extend(_run_case(name, mu, prm))
    return out


def _pool(jobs: int):
    return ProcessPoolExecutor(max_workers=jobs, mp_context=get_context("fork"))


def run_suite(name: str, max_degree: int, k_max: int = 5, jobs: int = 1) -> SuiteReport:
    """Run one registered suite over every Ht_mu with |mu| <= max_degree."""
    suite = SUITES.get(name)
    if suite is None:
        raise UnknownSuiteError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    if max_degree < 0 or k_max < 0:
        raise ValueError("max_degree and k_max must be nonnegative")
    if max_degree > mac.HARD_CAP:
        raise mac.CacheLimitError(f"max_degree {max_degree} exceeds the cap {mac.HARD_CAP}")
    prm = {"max_degree": max_degree, "k_max": k_max}
    mus = [mu for mu in P.partitions_up_to(max_degree) if not (suite.skip_empty and not mu)]
    start = time.perf_counter()
    mac.get_cache().ensure(suite.top_degree(max_degree, k_max) if jobs > 1 else max_degree)
    if jobs > 1 and len(mus) > 1:
        with _pool(jobs) as pool:
            futures = [pool.submit(_run_case, name, mu, prm) for mu in mus]
            cases = [c for fut in futures for c in fut.result()]
    else:
        cases = _run_chunk(name, mus, prm)
    cases.sort(key=_case_key)
    ms = int((time.perf_counter() - start) * 1000)
    return SuiteReport(name, _params(suite, max_degree, k_max), cases, ms)


def chain_consistent(reports: dict) -> bool:
    """The d-shift identity at r = 1 contains the main theorem on the same window."""
    shift = reports.get("d-shift")
    main = reports.get("main-theorem")
    if shift is None or main is None:
        return True
    return not (shift.passed and not main.passed)


# ---------------------------------------------------------------------------
# generic comparison


def compare_operators(lhs, rhs, max_degree: int, z_order: int = 0, jobs: int = 1) -> SuiteReport:
    """Apply two operators (ASTs or DSL text) to every Ht_mu, |mu| <= max_degree.

    Series are truncated at |mu| + z_order + 1; z-exponents above ``z_order``
    are ignored.  Raises WindowError when the two results share no exact
    degree at or above the input degree.
    """
    from .dsl import format_operator, parse_operator

    if isinstance(lhs, str):
        lhs = parse_operator(lhs)
    if isinstance(rhs, str):
        rhs = parse_operator(rhs)
    start = time.perf_counter()
    cases = []
    for mu in P.partitions_up_to(max_degree):
        H = _ht(mu)
        bound = P.size(mu) + z_order + 1
        a = _keep_z(_apply_bounded(lhs, H, bound), z_order)
        b = _keep_z(_apply_bounded(rhs, H, bound), z_order)
        window = mac_window(a, b)
        if window is not None and window < P.size(mu):
            raise WindowError(f"no common exact degree for mu = {list(mu)}")
        cases.append(_case(mu, a, b))
    ms = int((time.perf_counter() - start) * 1000)
    params = {"lhs": format_operator(lhs), "rhs": format_operator(rhs),
              "max_degree": max_degree, "z_order": z_order}
    return SuiteReport("compare", params, cases, ms)


def mac_window(a: SymFunc, b: SymFunc):
    if a.prec is None:
        return b.prec
    if b.prec is None:
        return a.prec
    return min(a.prec, b.prec)


def _apply_bounded(op, f, bound):
    try:
        return ops.apply(op, f)
    except WindowError:
        return ops.apply(op, f, bound)


def _keep_z(f: SymFunc, z_order: int) -> SymFunc:
    return SymFunc._raw({k: c for k, c in f.terms.items() if k[1] <= z_order}, f.prec)
