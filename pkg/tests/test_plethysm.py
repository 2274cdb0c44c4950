import pytest
from hypothesis import given
from hypothesis import strategies as st

from qtsym.coeffring import ONE, QtRational, ZLaurent, monomial, q, t
from qtsym.plethysm import (
    M_ALPHA, X, Z, Alphabet, WindowError, format_alphabet, pk_of_alphabet, pleth_exp, plethysm,
)
from qtsym.dsl import parse_alphabet
from qtsym.symfunc import SymFunc, e, h, p, s

M = (1 - q) * (1 - t)


def test_pk_examples():
    got = pk_of_alphabet(2, X + M_ALPHA / Z)
    want = p(2) + SymFunc.scalar(ZLaurent({-2: (1 - q ** 2) * (1 - t ** 2)}))
    assert got == want
    assert pk_of_alphabet(2, -X) == -p(2)
    assert pk_of_alphabet(3, X / M_ALPHA) == p(3) / ((1 - q ** 3) * (1 - t ** 3))


def test_plethysm_examples():
    assert plethysm(e(2), -X) == h(2)
    assert plethysm(s(2, 1), X) == s(2, 1)
    assert plethysm(p(1) * q, Z * X) == p(1) * q * ZLaurent.z()


def test_pleth_exp_examples():
    ex = pleth_exp(-(Z * X), 4)
    assert ex.z_coefficient(2) == e(2)
    assert ex.z_coefficient(1) == -e(1)
    assert pleth_exp(Alphabet(), 3) == SymFunc.one()
    with pytest.raises(ValueError):
        pleth_exp(X + Z, 2)


@pytest.mark.parametrize("k", range(7))
def test_exponential_generating_series(k):
    minus = pleth_exp(-(Z * X), 6).z_coefficient(k)
    plus = pleth_exp(Z * X, 6).z_coefficient(k)
    assert minus == (e(k) if k % 2 == 0 else -e(k)) if k else minus == SymFunc.one()
    assert plus == (h(k) if k else SymFunc.one())


def test_truncated_input_rejects_translation():
    f = (p(1) + p(2)).truncate(1)
    with pytest.raises(WindowError):
        plethysm(f, X + Alphabet.mono(q=1))
    assert plethysm(f, -X).prec == 1


def test_alphabet_text_round_trip():
    for text in ["X", "-z*X", "X+M/z", "X/M", "z*v*X/M", "X/(1-t)", "-z/M", "2*q^2*X-u"]:
        a = parse_alphabet(text)
        assert parse_alphabet(format_alphabet(a)) == a
    assert format_alphabet(-(Z / M_ALPHA)) == "-z/M"


mono_terms = st.builds(
    lambda c, a, b, x: Alphabet.mono(c, q=a, t=b) * (X if x else 1),
    st.sampled_from([1, -1, 2]), st.integers(0, 2), st.integers(0, 2), st.booleans(),
)
alphabets = st.lists(mono_terms, min_size=1, max_size=3).map(lambda ts: sum(ts, Alphabet()))
const_alphabets = st.lists(
    st.builds(lambda c, a, b: Alphabet.mono(c, q=a, t=b), st.sampled_from([1, -1]),
              st.integers(0, 2), st.integers(0, 2)),
    min_size=1, max_size=2).map(lambda ts: sum(ts, Alphabet()))
small = st.sampled_from([s(2, 1), h(3), e(2) + p(1), s(1) * q, SymFunc.one() + p(2)])


@given(alphabets, alphabets, st.integers(1, 4))
def test_pk_additive(a, b, k):
    assert pk_of_alphabet(k, a + b) == pk_of_alphabet(k, a) + pk_of_alphabet(k, b)


@given(small, small, alphabets)
def test_plethysm_is_ring_hom(f, g, a):
    assert plethysm(f * g, a) == plethysm(f, a) * plethysm(g, a)


@given(const_alphabets, const_alphabets)
def test_exponential_property(a, b):
    # X-free parts of E[(A+B)zX] against the product, up to z^4
    za, zb = a * Z * X, b * Z * X
    lhs = pleth_exp(za + zb, 4)
    rhs = pleth_exp(za, 4) * pleth_exp(zb, 4)
    for k in range(5):
        assert lhs.z_coefficient(k) == rhs.z_coefficient(k).truncate(4)


def test_mixed_terms_with_denominators():
    a = X / (1 - Alphabet.mono(t=1))
    assert plethysm(p(2), a) == p(2) / (1 - t ** 2)
    assert monomial(0, 2) == t ** 2
    assert QtRational(1) == ONE
