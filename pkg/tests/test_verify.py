import json

import pytest

from qtsym import _mutation
from qtsym import macdonald as mac
from qtsym import partition as P
from qtsym import verify
from qtsym.plethysm import WindowError

CHEAP = ["delta-eigen", "pi-specialization", "nabla-conjugation", "d-series", "d-zero-eigen",
         "five-term", "macdonald-crosscheck", "commutation-lemma"]


def test_list_suites():
    suites = verify.list_suites()
    assert len(suites) == 14
    names = [name for name, _, _ in suites]
    assert "main-theorem" in names and len(set(names)) == 14
    assert all(desc and anchor for _, desc, anchor in suites)


def test_unknown_suite():
    with pytest.raises(verify.UnknownSuiteError):
        verify.run_suite("bogus", 3, 3)


def test_five_term_degree_three():
    rep = verify.run_suite("five-term", 3)
    assert rep.passed
    assert [c["mu"] for c in rep.cases] == [[], [1], [2], [1, 1], [3], [2, 1], [1, 1, 1]]


def test_main_theorem_on_constants():
    rep = verify.run_suite("main-theorem", 0, 3)
    assert rep.passed
    assert [c["k"] for c in rep.cases] == [1, 2, 3]


@pytest.mark.parametrize("name", CHEAP)
def test_cheap_suites_pass_to_degree_three(name):
    rep = verify.run_suite(name, 3, 3)
    assert rep.passed, rep.failures()[:1]


@pytest.mark.parametrize("name", ["five-term-dual", "ttilde-rewrite", "main-theorem", "d-shift",
                                  "theta-commutator", "theta-specialization"])
def test_heavy_suites_pass_to_degree_two(name):
    rep = verify.run_suite(name, 2, 3)
    assert rep.passed, rep.failures()[:1]


def test_compare_operators():
    assert verify.compare_operators("nabla", "nabla", 2).passed
    rep = verify.compare_operators("D[1]", "nabla ∘ mul(e[1]) ∘ nabla^-1", 3)
    assert rep.passed and len(rep.cases) == 7
    assert rep.params["rhs"] == "nabla o mul(e[1]) o nabla^-1"
    rep = verify.compare_operators("D[1]", "D[2]", 1)
    assert not rep.passed
    w = rep.failures()[0]["witness"]
    assert set(w) >= {"basis", "lambda", "z", "lhs", "rhs"} and w["lhs"] != w["rhs"]


def test_compare_operators_series():
    lhs = "coeff(P[-z/M] o D[1] o P[z/M], z, 1)"
    assert verify.compare_operators(lhs, "D[2]", 2, z_order=1).passed


def test_reports_are_deterministic():
    a = verify.run_suite("d-shift", 2, 2)
    b = verify.run_suite("d-shift", 2, 2)
    assert a.to_json() == b.to_json()
    assert "ms" not in a.to_dict() and "ms" in a.to_dict(timing=True)
    assert json.loads(a.to_json())["pass"] is True


def test_jobs_do_not_change_reports():
    one = verify.run_suite("theta-commutator", 3, 2, jobs=1)
    four = verify.run_suite("theta-commutator", 3, 2, jobs=4)
    assert one.to_json() == four.to_json()


def test_case_order():
    rep = verify.run_suite("d-shift", 1, 1)
    keys = [(len(c["mu"]) and sum(c["mu"]), c["k"], c["r"]) for c in rep.cases]
    assert keys == sorted(keys)


@pytest.mark.parametrize("mutation,suites", [
    ("exp-sign", ["nabla-conjugation", "d-series", "main-theorem"]),
    ("nabla-sign", ["nabla-conjugation", "main-theorem"]),
])
def test_mutations_are_detected(mutation, suites):
    with _mutation.mutate(mutation):
        for name in suites:
            rep = verify.run_suite(name, 2, 2)
            assert not rep.passed, name
            assert all("witness" in c for c in rep.failures())


def test_chain_consistency():
    good = verify.run_suite("main-theorem", 1, 2)
    shift = verify.run_suite("d-shift", 1, 2)
    assert verify.chain_consistent({"main-theorem": good, "d-shift": shift})
    bad = verify.SuiteReport("main-theorem", {}, [{"mu": [], "k": 1, "pass": False}])
    assert not verify.chain_consistent({"main-theorem": bad, "d-shift": shift})
    assert verify.chain_consistent({"main-theorem": bad})


def test_k_range_clamped_by_cap(monkeypatch):
    monkeypatch.setattr(mac, "HARD_CAP", 4)
    old = mac.set_cache(mac.HtCache(max_degree=4))
    try:
        rep = verify.run_suite("main-theorem", 3, 5)
        assert rep.passed
        for c in rep.cases:
            assert P.size(tuple(c["mu"])) + c["k"] <= 4
        assert max(c["k"] for c in rep.cases if not c["mu"]) == 4
    finally:
        mac.set_cache(old)


def test_cap_k():
    assert verify._cap_k(8, 5) == 1 and verify._cap_k(9, 5) == 0 and verify._cap_k(3, 2) == 2


def test_limits():
    with pytest.raises(mac.CacheLimitError):
        verify.run_suite("five-term", mac.HARD_CAP + 1)
    with pytest.raises(ValueError):
        verify.run_suite("five-term", -1)
    with pytest.raises(WindowError):
        verify.compare_operators("T[1] o P[z]", "P[z]", 1)
