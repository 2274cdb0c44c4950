"""Acceptance criteria 1-9, one printed PASS/FAIL line each.

The headline run (criterion 9) is a real ``qtsym verify --suite all
--max-degree 4`` subprocess; criteria 4-6 are read from its JSON reports.
"""

import json
import subprocess
import sys
import time

import pytest
from hypothesis import given, settings

from qtsym import _mutation, dsl
from qtsym import partition as P
from qtsym.verify import run_suite

from strategies import operators

HEADLINE_LIMIT_S = 15 * 60
pytestmark = pytest.mark.slow


def report(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, detail


def cases_ok(rep, keep=lambda c: True):
    chosen = [c for c in rep["cases"] if keep(c)]
    return bool(chosen) and all(c["pass"] for c in chosen), len(chosen)


@pytest.fixture(scope="module")
def headline():
    argv = [sys.executable, "-m", "qtsym", "verify", "--suite", "all", "--max-degree", "4",
            "--format", "json"]
    start = time.perf_counter()
    proc = subprocess.run(argv, capture_output=True, text=True)
    seconds = time.perf_counter() - start
    reports = {}
    for line in proc.stdout.splitlines():
        rep = json.loads(line)
        reports[rep["suite"]] = rep
    return proc.returncode, seconds, reports


def test_criterion_1_macdonald_crosschecks(capsys):
    rep = run_suite("macdonald-crosscheck", 5)
    hand = {tuple(c["mu"]) for c in rep.cases if len(c["mu"]) and P.size(c["mu"]) <= 3}
    ok = rep.passed and len(rep.cases) == len(P.partitions_up_to(5)) and {(2,), (1, 1), (2, 1)} <= hand
    report(capsys, 1, ok, f"{len(rep.cases)} partitions, |mu| <= 5")


def test_criterion_2_eigen_suites(capsys):
    reps = [run_suite(name, 5) for name in ("delta-eigen", "pi-specialization", "nabla-conjugation")]
    ok = all(r.passed for r in reps)
    report(capsys, 2, ok, ", ".join(f"{r.suite} {len(r.cases)} cases" for r in reps) + ", |mu| <= 5")


def test_criterion_3_d_series_and_d_zero(capsys):
    series = run_suite("d-series", 4, 5)
    ks = sorted({c["k"] for c in series.cases})
    zero = run_suite("d-zero-eigen", 5)
    ok = series.passed and ks == list(range(-4, 6)) and zero.passed
    report(capsys, 3, ok, f"d-series k in [{ks[0]}, {ks[-1]}] |mu| <= 4, d-zero-eigen |mu| <= 5")


def test_criterion_4_five_term_family(capsys, headline):
    _, _, reps = headline
    names = ("five-term", "five-term-dual", "ttilde-rewrite")
    results = [cases_ok(reps[n]) if n in reps else (False, 0) for n in names]
    ok = all(r[0] for r in results)
    report(capsys, 4, ok, ", ".join(f"{n} {c} cases" for n, (_, c) in zip(names, results)) + ", |mu| <= 4")


def test_criterion_5_main_theorem_and_shift(capsys, headline):
    _, _, reps = headline
    main = cases_ok(reps["main-theorem"], lambda c: c["k"] <= 5) if "main-theorem" in reps else (False, 0)
    shift = reps.get("d-shift")
    rs = sorted({c["r"] for c in shift["cases"]}) if shift else []
    ok = main[0] and shift is not None and cases_ok(shift)[0] and rs == list(range(-2, 4))
    report(capsys, 5, ok, f"main-theorem {main[1]} cases k <= 5, d-shift r in {rs[:1] + rs[-1:]}, |mu| <= 4")


def test_criterion_6_theta(capsys, headline):
    _, _, reps = headline
    comm = cases_ok(reps["theta-commutator"], lambda c: c["k"] <= 4) if "theta-commutator" in reps else (False, 0)
    vform = cases_ok(reps["theta-specialization"], lambda c: c["k"] <= 3 and sum(c["mu"]) <= 3) \
        if "theta-specialization" in reps else (False, 0)
    ks = {c["k"] for c in reps.get("theta-commutator", {"cases": []})["cases"]}
    ok = comm[0] and vform[0] and set(range(5)) <= ks
    report(capsys, 6, ok, f"theta-commutator {comm[1]} cases k <= 4 |mu| <= 4, "
                          f"theta-specialization {vform[1]} cases k <= 3 |mu| <= 3")


def test_criterion_7_mutation_sensitivity(capsys):
    targets = ("nabla-conjugation", "d-series", "main-theorem")
    failing = {}
    for mutation in ("exp-sign", "nabla-sign"):
        with _mutation.mutate(mutation):
            reps = [run_suite(name, 3, 3) for name in targets]
        failing[mutation] = {r.suite for r in reps
                             if not r.passed and all("witness" in c for c in r.failures())}
    union = failing["exp-sign"] | failing["nabla-sign"]
    # D_k never touches nabla, so the nabla flip can only reach the suites that do
    ok = (failing["exp-sign"] == set(targets)
          and failing["nabla-sign"] == {"nabla-conjugation", "main-theorem"}
          and union == set(targets))
    detail = "; ".join(f"{m} breaks {', '.join(sorted(s))}" for m, s in failing.items())
    report(capsys, 7, ok, detail)


def test_criterion_8_round_trip_and_determinism(capsys):
    seen = []

    @settings(max_examples=200, derandomize=True, database=None)
    @given(operators)
    def round_trip(node):
        seen.append(node)
        assert dsl.parse_operator(dsl.format(node)) == node

    round_trip()
    argv = [sys.executable, "-m", "qtsym", "verify", "--suite", "all", "--max-degree", "3",
            "--k-max", "3", "--format", "json"]
    outs = [subprocess.run(argv + ["--jobs", j], capture_output=True).stdout for j in ("1", "4", "1", "4")]
    same = len(set(outs)) == 1 and outs[0].count(b"\n") == 14
    ok = len(seen) >= 200 and same
    report(capsys, 8, ok, f"{len(seen)} random ASTs round-trip, 4 CLI runs byte-identical: {same}")


def test_criterion_9_headline_run(capsys, headline):
    code, seconds, reps = headline
    ok = code == 0 and len(reps) == 14 and seconds < HEADLINE_LIMIT_S
    report(capsys, 9, ok, f"exit {code}, {len(reps)} suites, {seconds:.0f} s")
