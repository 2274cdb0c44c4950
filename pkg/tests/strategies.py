"""Hypothesis strategies for random DSL syntax trees in canonical shape."""

from hypothesis import strategies as st

from qtsym import dsl
from qtsym import operators as ops
from qtsym.coeffring import QtRational, ZLaurent, q, t
from qtsym.plethysm import X, Alphabet

parts = st.lists(st.integers(1, 3), max_size=3).map(lambda xs: tuple(sorted(xs, reverse=True)))

sym_leaves = st.one_of(
    st.builds(dsl.Atom, st.sampled_from("smehp"), parts),
    st.builds(dsl.HtAtom, parts.filter(lambda lam: sum(lam) <= 3)),
    st.builds(dsl.Num, st.integers(0, 7)),
    st.builds(dsl.Sym, st.sampled_from(["q", "t", "u", "v", "z", "M"])),
)

alphabets = st.lists(
    st.builds(lambda c, a, b, z, x: Alphabet.mono(c, q=a, t=b, z=z) * (X if x else 1),
              st.sampled_from([1, -1, 2]), st.integers(0, 2), st.integers(0, 1),
              st.integers(-1, 1), st.booleans()),
    min_size=1, max_size=3,
).map(lambda ts: sum(ts, Alphabet()))


def _sym_node(children):
    pair = st.tuples(children, children)
    return st.one_of(
        children.map(dsl.Neg),
        pair.map(lambda ab: dsl.Add(*ab)),
        pair.map(lambda ab: dsl.Sub(*ab)),
        pair.map(lambda ab: dsl.Prod(*ab)),
        st.builds(dsl.Pow, children, st.integers(0, 3)),
        st.builds(dsl.Pleth, children, alphabets),
    )


sym_exprs = st.recursive(sym_leaves, _sym_node, max_leaves=6)

scalars = st.builds(
    lambda c, k: ZLaurent({k: c}),
    st.sampled_from([QtRational(2), q, -t, q * t, 1 - q, QtRational(-3)]),
    st.integers(-1, 2),
) | st.just(ZLaurent({0: 1 + q, 1: t}))

op_leaves = st.one_of(
    st.builds(ops.D, st.integers(-3, 5)),
    st.builds(ops.Theta, st.integers(0, 4)),
    st.builds(ops.Nabla, st.sampled_from([1, -1])),
    st.builds(ops.Pi, st.sampled_from([1, -1])),
    st.builds(ops.DeltaU, st.sampled_from(["u", "v"]), st.sampled_from([1, -1])),
    st.builds(ops.DeltaF, sym_exprs),
    st.builds(ops.T, alphabets),
    st.builds(ops.Pexp, alphabets),
    st.builds(ops.Mul, sym_exprs),
    st.builds(ops.MulStar, sym_exprs),
    st.just(ops.Identity()),
)


def _op_node(children):
    return st.one_of(
        st.lists(children, min_size=2, max_size=3).map(lambda xs: ops.Compose(tuple(xs))),
        st.lists(st.tuples(scalars, children), min_size=1, max_size=3).map(
            lambda ts: ops.LinComb(tuple(ts))),
        st.builds(ops.ZCoeff, children, st.integers(-2, 3)),
    )


operators = st.recursive(op_leaves, _op_node, max_leaves=8)
