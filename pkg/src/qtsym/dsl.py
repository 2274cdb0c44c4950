"""Text syntax for symmetric functions, alphabets and operators.

Symmetric-function expressions::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor (('*'|'/') factor)*
    factor  := '-' factor | power
    power   := postfix ['^' ['-'] INT]
    postfix := primary ('[' alphabet ']')*          plethysm
    primary := s|m|e|h|p|Ht '[' parts ']' | INT | q|t|u|v|z|M | '(' expr ')'

Operators::

    opexpr  := ['+'|'-'] opterm (('+'|'-') opterm)*
    opterm  := [scalar '*'] chain
    chain   := opatom (('o'|'∘'|';') opatom)*
    opatom  := D[k] | Theta[k] | Delta[F] | Delta[u] | Delta[v] | nabla | Pi
             | T[alphabet] | P[alphabet] | mul(F) | mulstar(F) | id
             | coeff(opexpr, z, k) | '(' opexpr ')'       each may end in '^-1'

Alphabets use the same arithmetic with ``X`` as the variable set, e.g.
``X + M/z`` or ``-z/M``.  Parse errors carry a 1-based column and the set of
tokens that would have been accepted there.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import operators as ops
from . import partition as P
from .coeffring import ONE, QtRational, ZLaurent, gen
from .coeffring import M as M_VALUE
from .plethysm import Alphabet, format_alphabet, plethysm
from .symfunc import BASES, SymFunc, format_symfunc


class ParseError(ValueError):
    """Syntax error with a 1-based column and the expected tokens."""

    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        self.message = message
        detail = f"; expected one of {', '.join(repr(e) for e in self.expected)}" if self.expected else ""
        super().__init__(f"at offset {offset}: {message}{detail}")


# ---------------------------------------------------------------------------
# symmetric-function expression AST


class SymExpr:
    def evaluate(self) -> SymFunc:
        raise NotImplementedError

    def __str__(self):
        return format_symexpr(self)


@dataclass(frozen=True)
class Atom(SymExpr):
    basis: str
    lam: tuple

    def evaluate(self):
        return SymFunc.from_basis(self.basis, {self.lam: ONE})


@dataclass(frozen=True)
class HtAtom(SymExpr):
    mu: tuple

    def evaluate(self):
        from .macdonald import macdonald_Ht

        return macdonald_Ht(self.mu)


@dataclass(frozen=True)
class Num(SymExpr):
    value: int

    def evaluate(self):
        return SymFunc.scalar(QtRational(self.value))


@dataclass(frozen=True)
class Sym(SymExpr):
    """One of the scalars q, t, u, v, z, M."""

    name: str

    def evaluate(self):
        if self.name == "z":
            return SymFunc.scalar(ZLaurent({1: ONE}))
        if self.name == "M":
            return SymFunc.scalar(M_VALUE)
        return SymFunc.scalar(gen(self.name))


@dataclass(frozen=True)
class Neg(SymExpr):
    x: SymExpr

    def evaluate(self):
        return -self.x.evaluate()


@dataclass(frozen=True)
class Add(SymExpr):
    left: SymExpr
    right: SymExpr

    def evaluate(self):
        return self.left.evaluate() + self.right.evaluate()


@dataclass(frozen=True)
class Sub(SymExpr):
    left: SymExpr
    right: SymExpr

    def evaluate(self):
        return self.left.evaluate() - self.right.evaluate()


@dataclass(frozen=True)
class Prod(SymExpr):
    left: SymExpr
    right: SymExpr

    def evaluate(self):
        return self.left.evaluate() * self.right.evaluate()


@dataclass(frozen=True)
class Quot(SymExpr):
    left: SymExpr
    right: SymExpr

    def evaluate(self):
        return self.left.evaluate() * _scalar_inverse(self.right.evaluate())


@dataclass(frozen=True)
class Pow(SymExpr):
    base: SymExpr
    exp: int

    def evaluate(self):
        b = self.base.evaluate()
        if self.exp >= 0:
            return b ** self.exp
        return _scalar_inverse(b) ** (-self.exp)


@dataclass(frozen=True)
class Pleth(SymExpr):
    base: SymExpr
    alphabet: Alphabet

    def evaluate(self):
        return plethysm(self.base.evaluate(), self.alphabet)


def _scalar_inverse(f: SymFunc) -> SymFunc:
    if any(rho for rho, _ in f.terms):
        raise ValueError("can only divide by a scalar")
    if len(f.terms) != 1:
        if not f.terms:
            raise ZeroDivisionError("division by zero")
        raise ValueError("can only divide by a single power of z times a rational function")
    ((_, e), c), = f.terms.items()
    return SymFunc.scalar(ZLaurent({-e: 1 / c}))


def symexpr_scalar(f: SymFunc) -> ZLaurent:
    """The ZLaurent value of a degree-0 SymFunc; ValueError otherwise."""
    if any(rho for rho, _ in f.terms):
        raise ValueError("expected a scalar")
    return ZLaurent({e: c for (_, e), c in f.terms.items()})


# ---------------------------------------------------------------------------
# lexer

_TOKEN_RE = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(∘|[\[\](),+\-*/^;])")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "sym", "end"
    text: str
    pos: int  # 0-based start index
    end: int  # 1-based column of the last character; len + 1 for "end"


def tokenize(text: str) -> list:
    out = []
    i = 0
    n = len(text)
    while True:
        while i < n and text[i].isspace():
            i += 1
        if i >= n:
            out.append(Token("end", "", n, n + 1))
            return out
        m = _TOKEN_RE.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}", i + 1)
        kind = "int" if m.group(1) else ("name" if m.group(2) else "sym")
        out.append(Token(kind, m.group(0), i, m.end()))
        i = m.end()


_SCALAR_NAMES = ("q", "t", "u", "v", "z", "M")
_COMPOSE = ("o", "∘", ";")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    # -- helpers ------------------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def at(self, *texts) -> bool:
        tk = self.tok
        return tk.kind in ("sym", "name") and tk.text in texts

    @property
    def consumed_end(self) -> int:
        """Column of the last character consumed so far."""
        return self.toks[self.i - 1].end if self.i else 1

    def fail(self, expected, message=None):
        # reported at the end of the offending token, so every prefix that
        # still contains the token fails no later than here
        tk = self.tok
        got = "end of input" if tk.kind == "end" else repr(tk.text)
        raise ParseError(message or f"unexpected {got}", tk.end, expected)

    def expect(self, text):
        if not self.at(text):
            self.fail((text,))
        self.i += 1

    def int_literal(self, signed=False) -> int:
        sign = 1
        if signed and self.at("-"):
            self.i += 1
            sign = -1
        if self.tok.kind != "int":
            self.fail(("integer",) + (("-",) if signed and sign == 1 else ()))
        v = int(self.tok.text)
        self.i += 1
        return sign * v

    def finish(self):
        if self.tok.kind != "end":
            self.fail(("end of input",))

    # -- partitions -----------------------------------------------------------
    def parts(self) -> tuple:
        self.expect("[")
        out = []
        if self.at("]"):
            self.i += 1
            return ()
        while True:
            if self.tok.kind != "int":
                self.fail(("integer",) if out else ("integer", "]"))
            v = int(self.tok.text)
            if v == 0:
                self.fail(("positive integer",), "partition parts must be positive")
            out.append(v)
            self.i += 1
            if self.at(","):
                self.i += 1
                continue
            if self.at("]"):
                self.i += 1
                break
            self.fail((",", "]"))
        return tuple(sorted(out, reverse=True))

    # -- symmetric-function expressions ---------------------------------------
    def sym_expr(self) -> SymExpr:
        node = self.sym_term()
        while self.at("+", "-"):
            op = self.tok.text
            self.i += 1
            rhs = self.sym_term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def sym_term(self) -> SymExpr:
        node = self.sym_factor()
        while self.at("*", "/"):
            op = self.tok.text
            self.i += 1
            rhs = self.sym_factor()
            node = Prod(node, rhs) if op == "*" else Quot(node, rhs)
        return node

    def sym_factor(self) -> SymExpr:
        if self.at("-"):
            self.i += 1
            return Neg(self.sym_factor())
        return self.sym_power()

    def sym_power(self) -> SymExpr:
        node = self.sym_postfix()
        if self.at("^"):
            self.i += 1
            node = Pow(node, self.int_literal(signed=True))
        return node

    def sym_postfix(self) -> SymExpr:
        node = self.sym_primary()
        while self.at("["):
            self.i += 1
            a = self.alphabet()
            self.expect("]")
            node = Pleth(node, a)
        return node

    _SYM_START = BASES + ("Ht",) + _SCALAR_NAMES + ("(", "integer")

    def sym_primary(self) -> SymExpr:
        tk = self.tok
        if tk.kind == "int":
            self.i += 1
            return Num(int(tk.text))
        if tk.kind == "name":
            if tk.text in BASES:
                self.i += 1
                return Atom(tk.text, self.parts())
            if tk.text == "Ht":
                self.i += 1
                return HtAtom(self.parts())
            if tk.text in _SCALAR_NAMES:
                self.i += 1
                return Sym(tk.text)
            self.fail(self._SYM_START, f"unknown name {tk.text!r}")
        if self.at("("):
            self.i += 1
            node = self.sym_expr()
            self.expect(")")
            return node
        self.fail(self._SYM_START)

    # -- alphabets --------------------------------------------------------------
    def alphabet(self) -> Alphabet:
        neg = False
        if self.at("+", "-"):
            neg = self.tok.text == "-"
            self.i += 1
        acc = self.alpha_term()
        if neg:
            acc = -acc
        while self.at("+", "-"):
            op = self.tok.text
            self.i += 1
            rhs = self.alpha_term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def alpha_term(self) -> Alphabet:
        acc = self.alpha_factor()
        while self.at("*", "/"):
            op = self.tok.text
            self.i += 1
            rhs = self.alpha_factor()
            try:
                acc = acc * rhs if op == "*" else acc / rhs
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(str(exc), self.consumed_end) from None
        return acc

    _ALPHA_START = ("X", "q", "t", "u", "v", "z", "M", "(", "-", "integer")

    def alpha_factor(self) -> Alphabet:
        if self.at("-"):
            self.i += 1
            return -self.alpha_factor()
        tk = self.tok
        if tk.kind == "int":
            self.i += 1
            base = Alphabet.mono(int(tk.text)) if int(tk.text) else Alphabet()
        elif tk.kind == "name" and tk.text == "X":
            self.i += 1
            base = Alphabet.x()
        elif tk.kind == "name" and tk.text == "M":
            self.i += 1
            base = Alphabet.m()
        elif tk.kind == "name" and tk.text in ("q", "t", "u", "v", "z"):
            self.i += 1
            e = 1
            if self.at("^"):
                self.i += 1
                e = self.int_literal(signed=True)
            return Alphabet.mono(1, **{tk.text: e})
        elif self.at("("):
            self.i += 1
            base = self.alphabet()
            self.expect(")")
        else:
            self.fail(self._ALPHA_START)
        if self.at("^"):
            self.i += 1
            e = self.int_literal()
            out = Alphabet.mono(1)
            for _ in range(e):
                try:
                    out = out * base
                except ValueError as exc:
                    raise ParseError(str(exc), self.consumed_end) from None
            return out
        return base

    # -- operators --------------------------------------------------------------
    def op_expr(self):
        terms = []
        sign = 1
        if self.at("+", "-"):
            sign = -1 if self.tok.text == "-" else 1
            self.i += 1
        while True:
            c, op = self.op_term()
            terms.append((c * sign, op))
            if not self.at("+", "-"):
                break
            sign = -1 if self.tok.text == "-" else 1
            self.i += 1
        if len(terms) == 1 and terms[0][0] == ZLaurent({0: ONE}):
            return terms[0][1]
        for c, _ in terms:
            if c.is_zero():
                self.fail((), "zero operator coefficient")
        return ops.LinComb(tuple(terms))

    def op_term(self):
        coeff = self.scalar_prefix()
        return coeff, self.op_chain()

    def scalar_prefix(self) -> ZLaurent:
        """Optional 'scalar *' in front of an operator chain."""
        acc = ZLaurent({0: ONE})
        while True:
            save = self.i
            tk = self.tok
            if not (tk.kind == "int" or (tk.kind == "name" and tk.text in _SCALAR_NAMES) or self.at("(")):
                return acc
            try:
                node = self.sym_power()
            except ParseError:
                self.i = save
                return acc
            if not self.at("*"):
                self.i = save
                return acc
            try:
                val = symexpr_scalar(node.evaluate())
            except (ValueError, ArithmeticError) as exc:
                raise ParseError(f"operator coefficient: {exc}", self.consumed_end) from None
            self.i += 1
            acc = acc * val

    def op_chain(self):
        items = [self.op_atom()]
        while self.at(*_COMPOSE):
            self.i += 1
            items.append(self.op_atom())
        return items[0] if len(items) == 1 else ops.Compose(tuple(items))

    _OP_START = ("D", "Theta", "Delta", "nabla", "Pi", "T", "P", "mul", "mulstar", "coeff", "id", "(")

    def op_atom(self):
        tk = self.tok
        name = tk.text if tk.kind == "name" else None
        if name in ("D", "Theta"):
            self.i += 1
            self.expect("[")
            k = self.int_literal(signed=(name == "D"))
            self.expect("]")
            node = ops.D(k) if name == "D" else ops.Theta(k)
        elif name == "Delta":
            self.i += 1
            self.expect("[")
            nxt = self.toks[min(self.i + 1, len(self.toks) - 1)]
            if self.tok.kind == "name" and self.tok.text in ("u", "v") and nxt.kind == "sym" and nxt.text == "]":
                var = self.tok.text
                self.i += 1
                node = ops.DeltaU(var, 1)
            else:
                node = ops.DeltaF(self.sym_expr())
            self.expect("]")
        elif name in ("nabla", "Pi", "id"):
            self.i += 1
            node = {"nabla": ops.Nabla(1), "Pi": ops.Pi(1), "id": ops.Identity()}[name]
        elif name in ("T", "P"):
            self.i += 1
            self.expect("[")
            a = self.alphabet()
            self.expect("]")
            node = ops.T(a) if name == "T" else ops.Pexp(a)
        elif name in ("mul", "mulstar"):
            self.i += 1
            close = "]" if self.at("[") else ")"
            self.expect("[" if close == "]" else "(")
            f = self.sym_expr()
            self.expect(close)
            node = ops.Mul(f) if name == "mul" else ops.MulStar(f)
        elif name == "coeff":
            self.i += 1
            self.expect("(")
            inner = self.op_expr()
            self.expect(",")
            if not self.at("z"):
                self.fail(("z",))
            self.i += 1
            self.expect(",")
            k = self.int_literal(signed=True)
            self.expect(")")
            node = ops.ZCoeff(inner, k)
        elif self.at("("):
            self.i += 1
            node = self.op_expr()
            self.expect(")")
        else:
            self.fail(self._OP_START)
        if self.at("^"):
            self.i += 1
            if self.int_literal(signed=True) != -1:
                raise ParseError("only the exponent -1 is supported on operators", self.consumed_end, ("^-1",))
            node = _invert(node, self.consumed_end)
        return node


def _invert(node, pos):
    if isinstance(node, ops.Nabla):
        return ops.Nabla(-node.sign)
    if isinstance(node, ops.Pi):
        return ops.Pi(-node.sign)
    if isinstance(node, ops.DeltaU):
        return ops.DeltaU(node.var, -node.sign)
    if isinstance(node, ops.T):
        return ops.T(-node.alphabet)
    if isinstance(node, ops.Pexp):
        return ops.Pexp(-node.alphabet)
    if isinstance(node, ops.Identity):
        return node
    raise ParseError(f"{format_operator(node)} has no supported inverse", pos)


# ---------------------------------------------------------------------------
# public parse entry points


def parse_symfunc(text: str) -> SymExpr:
    """Parse a symmetric-function expression; ``.evaluate()`` gives a SymFunc."""
    p = _Parser(text)
    if p.tok.kind == "end":
        p.fail(_Parser._SYM_START)
    node = p.sym_expr()
    p.finish()
    return node


def parse_alphabet(text: str) -> Alphabet:
    p = _Parser(text)
    a = p.alphabet()
    p.finish()
    return a


def parse_operator(text: str):
    p = _Parser(text)
    node = p.op_expr()
    p.finish()
    return node


# ---------------------------------------------------------------------------
# formatting

_PREC = {Add: 1, Sub: 1, Prod: 2, Quot: 2, Neg: 3, Pow: 4, Pleth: 5}


def _prec(node) -> int:
    return _PREC.get(type(node), 6)


def format_symexpr(node) -> str:
    if isinstance(node, SymFunc):
        return format_symfunc(node, "p")
    if isinstance(node, Atom):
        return f"{node.basis}[{','.join(map(str, node.lam))}]"
    if isinstance(node, HtAtom):
        return f"Ht[{','.join(map(str, node.mu))}]"
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Neg):
        inner = format_symexpr(node.x)
        return "-" + (f"({inner})" if _prec(node.x) < 3 else inner)
    if isinstance(node, (Add, Sub, Prod, Quot)):
        level = _prec(node)
        left = format_symexpr(node.left)
        if _prec(node.left) < level:
            left = f"({left})"
        right = format_symexpr(node.right)
        if _prec(node.right) <= level:
            right = f"({right})"
        op = {Add: " + ", Sub: " - ", Prod: "*", Quot: "/"}[type(node)]
        return left + op + right
    if isinstance(node, Pow):
        base = format_symexpr(node.base)
        if _prec(node.base) <= 4:
            base = f"({base})"
        return f"{base}^{node.exp}"
    if isinstance(node, Pleth):
        base = format_symexpr(node.base)
        if _prec(node.base) < 5:
            base = f"({base})"
        return f"{base}[{format_alphabet(node.alphabet)}]"
    raise TypeError(f"cannot format {node!r}")


def _scalar_text(c: ZLaurent) -> str:
    parts = []
    for k in sorted(c.terms):
        body = str(c.terms[k])
        z = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
        if not z:
            parts.append(f"({body})")
        elif body == "1":
            parts.append(z)
        else:
            parts.append(f"({body})*{z}")
    return " + ".join(parts)


_PLAIN = re.compile(r"[0-9A-Za-z^*]+")


def _coeff_text(c: ZLaurent):
    """(negative, prefix) for an operator coefficient; prefix ends in '*'."""
    if len(c.terms) == 1 and 0 in c.terms:
        body = str(c.terms[0])
        neg = body.startswith("-") and _PLAIN.fullmatch(body[1:]) is not None
        if neg:
            body = body[1:]
        if body == "1":
            return neg, ""
        if _PLAIN.fullmatch(body):
            return neg, body + "*"
    text = _scalar_text(c)
    return False, (text if len(c.terms) == 1 else f"({text})") + "*"


def _op_atom_text(node) -> str:
    text = format_operator(node)
    if isinstance(node, (ops.Compose, ops.LinComb)):
        return f"({text})"
    return text


def format_operator(node) -> str:
    """Canonical text; ``parse_operator(format_operator(x)) == x``."""
    if isinstance(node, ops.Identity):
        return "id"
    if isinstance(node, ops.D):
        return f"D[{node.k}]"
    if isinstance(node, ops.Theta):
        return f"Theta[{node.k}]"
    if isinstance(node, ops.Nabla):
        return "nabla" if node.sign == 1 else "nabla^-1"
    if isinstance(node, ops.Pi):
        return "Pi" if node.sign == 1 else "Pi^-1"
    if isinstance(node, ops.DeltaU):
        return f"Delta[{node.var}]" + ("" if node.sign == 1 else "^-1")
    if isinstance(node, ops.DeltaF):
        inner = format_symexpr(node.F)
        if inner in ("u", "v"):
            inner = f"({inner})"
        return f"Delta[{inner}]"
    if isinstance(node, ops.T):
        return f"T[{format_alphabet(node.alphabet)}]"
    if isinstance(node, ops.Pexp):
        return f"P[{format_alphabet(node.alphabet)}]"
    if isinstance(node, ops.Mul):
        return f"mul({format_symexpr(node.f)})"
    if isinstance(node, ops.MulStar):
        return f"mulstar({format_symexpr(node.f)})"
    if isinstance(node, ops.ZCoeff):
        return f"coeff({format_operator(node.expr)}, z, {node.k})"
    if isinstance(node, ops.Compose):
        return " o ".join(_op_atom_text(op) for op in node.ops)
    if isinstance(node, ops.LinComb):
        out = []
        for i, (c, op) in enumerate(node.terms):
            body = format_operator(op) if isinstance(op, ops.Compose) else _op_atom_text(op)
            neg, prefix = _coeff_text(c)
            text = prefix + body
            if i == 0:
                out.append(("-" if neg else "") + text)
            else:
                out.append((" - " if neg else " + ") + text)
        return "".join(out)
    raise TypeError(f"cannot format {node!r}")


def format(node) -> str:  # noqa: A001 - mirrors the public name in the grammar docs
    """Format an operator or symmetric-function AST."""
    if isinstance(node, ops.OperatorExpr):
        return format_operator(node)
    return format_symexpr(node)


def evaluate_symfunc(text: str) -> SymFunc:
    return parse_symfunc(text).evaluate()


def partition_text(text: str) -> tuple:
    """Parse ``2,1`` (or ``[2,1]``) into a partition; ParseError on bad input."""
    body = text.strip()
    wrapped = body if body.startswith("[") else f"[{body}]"
    p = _Parser(wrapped)
    shift = 0 if body.startswith("[") else -1
    try:
        lam = p.parts()
        p.finish()
    except ParseError as exc:
        raise ParseError(exc.message, max(1, exc.offset + shift), exc.expected) from None
    return P.make(lam)
