import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qtsym import dsl
from qtsym import macdonald as mac
from qtsym import operators as ops
from qtsym.coeffring import q, t
from qtsym.plethysm import M_ALPHA, Z
from qtsym.symfunc import e, h, s

from strategies import operators, sym_exprs

OP_SAMPLES = [
    "nabla ∘ mul(e[1]) ∘ nabla^-1",
    "coeff(P[-z/M] ∘ D[1] ∘ P[z/M], z, 1)",
    "Delta[e[2]]",
    "q*D[1] - 2*t*D[2]",
    "Delta[v]^-1 ; T[u] ; Delta[v] ; T[-u]",
    "Theta[2] o D[1] - D[1] o Theta[2]",
    "(1 - q)*Pi^-1",
    "mulstar(s[2,1]) + id",
]


def test_parse_symfunc_examples():
    node = dsl.parse_symfunc("s[2,1] + q*h[3]")
    assert isinstance(node, dsl.Add)
    assert node.evaluate() == s(2, 1) + h(3) * q
    assert dsl.parse_symfunc("Ht[2]") == dsl.HtAtom((2,))
    assert dsl.parse_symfunc("Ht[2]").evaluate() == mac.macdonald_Ht((2,))


def test_error_offset_and_expectation():
    with pytest.raises(dsl.ParseError) as info:
        dsl.parse_symfunc("s[2,1")
    assert info.value.offset == 6
    assert "]" in info.value.expected


def test_parse_operator_examples():
    assert dsl.parse_operator("nabla ∘ mul(e[1]) ∘ nabla^-1") == ops.Compose(
        (ops.Nabla(1), ops.Mul(dsl.Atom("e", (1,))), ops.Nabla(-1)))
    node = dsl.parse_operator("coeff(P[-z/M] ∘ D[1] ∘ P[z/M], z, 1)")
    assert node == ops.ZCoeff(ops.Compose((ops.Pexp(-(Z / M_ALPHA)), ops.D(1), ops.Pexp(Z / M_ALPHA))), 1)
    assert dsl.parse_operator("Delta[e[2]]") == ops.DeltaF(dsl.Atom("e", (2,)))


def test_format_examples():
    assert dsl.format(ops.Compose((ops.Nabla(1),))) == "nabla"
    assert dsl.format(ops.D(3)) == "D[3]"
    assert dsl.format(ops.Theta(2)) == "Theta[2]"
    assert dsl.format(dsl.parse_operator("nabla ∘ mul(e[1]) ∘ nabla^-1")) == "nabla o mul(e[1]) o nabla^-1"


@pytest.mark.parametrize("text", OP_SAMPLES)
def test_format_is_canonical(text):
    canon = dsl.format(dsl.parse_operator(text))
    assert dsl.format(dsl.parse_operator(canon)) == canon


def test_parsed_operators_evaluate():
    one = dsl.evaluate_symfunc("1")
    assert ops.apply(dsl.parse_operator("q*D[1] - 2*t*D[2]"), one) == -e(1) * q - e(2) * (2 * t)
    assert ops.apply(dsl.parse_operator("coeff(P[-z/M] o D[1] o P[z/M], z, 1)"), one, 2) == e(2)


def test_scalars_and_sugar():
    assert dsl.evaluate_symfunc("M*s[1]") == s(1) * ((1 - q) * (1 - t))
    assert dsl.evaluate_symfunc("s[1]/(1-q)") == s(1) / (1 - q)
    assert dsl.evaluate_symfunc("e[2][-X]") == h(2)
    with pytest.raises(ValueError):
        dsl.evaluate_symfunc("s[1]/s[1]")


def test_inverse_rules():
    with pytest.raises(dsl.ParseError):
        dsl.parse_operator("D[1]^-1")
    with pytest.raises(dsl.ParseError):
        dsl.parse_operator("nabla^2")
    assert dsl.parse_operator("T[X]^-1") == dsl.parse_operator("T[-X]")


def test_partition_text():
    assert dsl.partition_text("2,1") == (2, 1)
    assert dsl.partition_text("[1,2]") == (2, 1)
    assert dsl.partition_text("") == ()
    with pytest.raises(dsl.ParseError) as info:
        dsl.partition_text("2,,")
    assert info.value.offset == 3


@settings(max_examples=200, derandomize=True)
@given(operators)
def test_operator_round_trip(node):
    assert dsl.parse_operator(dsl.format(node)) == node


@settings(max_examples=200, derandomize=True)
@given(sym_exprs)
def test_symexpr_round_trip(node):
    assert dsl.parse_symfunc(dsl.format(node)) == node


def _error_offset(parse, text):
    try:
        parse(text)
    except dsl.ParseError as exc:
        return exc.offset
    return None


BROKEN = ["s[2,1", "s[2,,1]", "nabla o", "coeff(D[1], z)", "D[x]", "Theta[1]^-1", "P[-z/]",
          "mul(e[1]", "(D[1] + D[2]", "s[2] +* h[1]", "Delta[e[2]", "q*", "s[0]"]


@pytest.mark.parametrize("text", BROKEN)
def test_error_offsets_monotone(text):
    parse = dsl.parse_operator if text[0] in "nDcTPmq(" else dsl.parse_symfunc
    off = _error_offset(parse, text)
    assert off is not None and 1 <= off <= len(text) + 1
    for cut in range(off - 1, len(text) + 1):
        again = _error_offset(parse, text[:cut])
        assert again is not None and again <= off


@given(st.text(alphabet="sehD[]0123,+-*o()qtz/^", max_size=12))
def test_random_text_errors_are_monotone(text):
    off = _error_offset(dsl.parse_operator, text)
    if off is None:
        return
    assert 1 <= off <= len(text) + 1
    cut = text[:off - 1]
    again = _error_offset(dsl.parse_operator, cut)
    assert again is not None and again <= off

