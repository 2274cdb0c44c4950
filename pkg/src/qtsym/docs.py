"""Generate docs/CATALOG.md from the suite registry and the convention ledger.

Run ``python -m qtsym.docs [path]`` to rewrite the catalog.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path

from .macdonald import HARD_CAP
from .verify import R_RANGE, SUITES


@dataclass(frozen=True)
class ConventionRecord:
    topic: str
    statement: str
    choice: str
    test: str


CONVENTIONS = (
    ConventionRecord(
        "sign of nabla",
        "Many references define nabla by Ht_mu -> q^{n(mu')} t^{n(mu)} Ht_mu without a sign.",
        "nabla carries the extra factor (-1)^{|mu|}. With this sign D_1 = nabla e_1 nabla^{-1} holds; "
        "without it the identity fails in odd degree.",
        "tests/test_macdonald.py::test_nabla_sign_convention, suite nabla-conjugation",
    ),
    ConventionRecord(
        "cell coordinates",
        "Cells of mu are written (i, j) with weight q^i t^j.",
        "i is the column (arm direction, counted along a row), j the row; cells are listed row by row, "
        "so (2,1) has cells (0,0), (1,0), (0,1) and B_(2,1) = 1 + q + t.",
        "tests/test_partition.py::test_cells_row_major",
    ),
    ConventionRecord(
        "Pi on the empty partition",
        "Pi_mu is the product of (1 - q^i t^j) over cells other than (0,0); the empty partition has no such cell set.",
        "Pi_() = 1, so Theta_k(1) = Pi e_k[X/M] (equal to e_1[X/M] at k = 1). "
        "The Delta_u/(1-u) specialisation instead gives 0 on constants "
        "for k >= 1; pi-specialization and theta-specialization therefore start at |mu| = 1, and "
        "theta-commutator evaluates the degree-0 case with the Delta_u form, the only one for which the "
        "identity holds on f = 1.",
        "tests/test_operators.py::test_theta_on_constants, suite theta-commutator",
    ),
    ConventionRecord(
        "the variable v",
        "v enters Delta_v and the five-term relations as a monomial.",
        "u and v are independent indeterminates of the coefficient field; identities are checked "
        "as exact rational functions in u and v, which implies every monomial specialisation.",
        "suites five-term, five-term-dual, ttilde-rewrite",
    ),
    ConventionRecord(
        "u in the five-term suites",
        "The proof of the main identity only needs the relations after u disappears.",
        "Suites five-term, five-term-dual and ttilde-rewrite keep u formal and check the unspecialised statements.",
        "suites five-term, five-term-dual, ttilde-rewrite",
    ),
    ConventionRecord(
        "range of r in the shift identity",
        "P_{-z/M} D_r P_{z/M} |_{z^k} = D_{k+r} is asserted for every integer r.",
        f"d-shift checks r in [{R_RANGE[0]}, {R_RANGE[1]}] only; other r are not machine-checked.",
        "suite d-shift",
    ),
    ConventionRecord(
        "typo record: P_{z/m}",
        "One derivation writes P_{-z/M} D_r P_{z/m} with a lowercase m.",
        "Read as P_{z/M}; there is no separate m alphabet.",
        "suite d-shift",
    ),
    ConventionRecord(
        "degree cap",
        "Exact arithmetic grows quickly with degree.",
        f"Ht is built only up to degree {HARD_CAP}. Suites whose operators raise degree clamp their k "
        "range per mu so that every Ht needed stays within the cap; the clamped cases are simply absent "
        "from the report.",
        "tests/test_verify.py::test_k_range_clamped_by_cap",
    ),
)


def _coverage(suite) -> str:
    bits = []
    if suite.skip_empty:
        bits.append("mu nonempty")
    if suite.uses_k:
        lo = {"d-series": "-max_degree", "main-theorem": "1"}.get(suite.name, "0")
        hi = "min(k_max, 3)" if suite.name == "commutation-lemma" else "k_max"
        bits.append(f"k in [{lo}, {hi}]")
    if "r_range" in suite.extra:
        bits.append(f"r in [{R_RANGE[0]}, {R_RANGE[1]}]")
    if "order" in suite.extra:
        bits.append("series order k_max")
    if suite.reach:
        bits.append("k clamped by the degree cap" if suite.reach == "k" else "uses Ht one degree up")
    return "; ".join(bits) or "one case per mu"


def render_catalog() -> str:
    """Markdown catalog: one section per suite, then the convention ledger."""
    out = [
        "# Identity catalog",
        "",
        "Generated by `python -m qtsym.docs`; do not edit by hand.",
        "",
        f"Every suite applies both sides of its identity to each Ht_mu with |mu| <= max_degree "
        f"and compares the results exactly. {len(SUITES)} suites are registered.",
        "",
    ]
    for i, suite in enumerate(SUITES.values(), 1):
        out += [
            f"## {i}. {suite.name}",
            "",
            f"Identity: `{suite.anchor}`",
            "",
            suite.description[0].upper() + suite.description[1:] + ".",
            "",
            f"Coverage: {_coverage(suite)}.",
            "",
        ]
    out += ["# Convention ledger", ""]
    out += ["| topic | statement | implemented choice | pinned by |", "|---|---|---|---|"]
    for rec in CONVENTIONS:
        out.append(f"| {rec.topic} | {rec.statement} | {rec.choice} | {rec.test} |")
    out.append("")
    return "\n".join(out)


def write_catalog(path="docs/CATALOG.md") -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_catalog())
    return path


if __name__ == "__main__":  # pragma: no cover
    print(write_catalog(*sys.argv[1:2]))
