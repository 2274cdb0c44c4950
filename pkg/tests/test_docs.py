from pathlib import Path

from qtsym import docs
from qtsym.verify import SUITES

ROOT = Path(__file__).resolve().parents[1]


def test_catalog_has_one_section_per_suite():
    text = docs.render_catalog()
    heads = [line for line in text.splitlines() if line.startswith("## ")]
    assert len(heads) == 14
    for i, name in enumerate(SUITES, 1):
        assert f"## {i}. {name}" in heads
        assert f"`{SUITES[name].anchor}`" in text


def test_main_theorem_section_carries_its_identity():
    text = docs.render_catalog()
    section = text.split("## 9. main-theorem")[1].split("## 10.")[0]
    assert "P_{-z/M} D_1 P_{z/M}" in section


def test_typo_record():
    recs = [r for r in docs.CONVENTIONS if "P_{z/m}" in r.topic]
    assert len(recs) == 1 and "P_{z/M}" in recs[0].choice


def test_conventions_are_unique_and_rendered():
    topics = [r.topic for r in docs.CONVENTIONS]
    assert len(topics) == len(set(topics))
    for needed in ("sign of nabla", "cell coordinates", "Pi on the empty partition", "u in the five-term suites"):
        assert needed in topics
    text = docs.render_catalog()
    for r in docs.CONVENTIONS:
        assert f"| {r.topic} |" in text


def test_pinning_tests_exist():
    for r in docs.CONVENTIONS:
        ref = r.test
        if ref.startswith("tests/"):
            ref, _, rest = ref.partition(", ")
            path, name = ref.split("::")
            assert f"def {name}(" in (ROOT / path).read_text(), ref
            ref = rest
        if ref:
            assert ref.startswith("suite")
            for name in ref.replace("suites ", "").replace("suite ", "").split(", "):
                assert name in SUITES, name


def test_committed_catalog_is_current():
    assert (ROOT / "docs" / "CATALOG.md").read_text() == docs.render_catalog()


def test_write_catalog(tmp_path):
    out = docs.write_catalog(tmp_path / "c.md")
    assert out.read_text() == docs.render_catalog()
