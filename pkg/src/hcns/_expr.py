"""Shared tokenizer and expression AST.

One small recursive-descent parser backs every textual surface of the
package: the scalar grammar, natural forms of hypercomplex numbers and
the CLI expression language.  The grammar is deliberately strict:
implicit multiplication is not allowed, `^` takes nonnegative integer
exponents only, and every consumer performs its own semantic checks on
the resulting AST.

Precedence (loosest to tightest): `+ -` | `* /` | unary `-` | `^`.
`* /` associate left; `^` does not associate (`a^2^3` is rejected).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ParseError

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<float>(?:\d+\.\d*|\.\d+)(?:[eE][+-]?\d+)?|\d+[eE][+-]?\d+)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z][A-Za-z0-9_]*)
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # 'float' | 'int' | 'name' | 'op' | 'end'
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


# --- AST nodes ---------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Union[Fraction, float]
    pos: int


@dataclass(frozen=True)
class Name:
    ident: str
    pos: int


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*', '/'
    left: "Node"
    right: "Node"
    pos: int


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int
    pos: int


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple["Node", ...]
    pos: int


Node = Union[Num, Name, Neg, BinOp, Pow, Call]


class _Parser:
    def __init__(self, tokens: list[Token], allow_calls: bool):
        self.tokens = tokens
        self.i = 0
        self.allow_calls = allow_calls

    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, text: str) -> Token:
        tok = self.peek()
        if tok.kind != "op" or tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text!r}", tok.pos)
        return self.next()

    def parse(self) -> Node:
        node = self.sum_()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected trailing input {tok.text!r}", tok.pos)
        return node

    def sum_(self) -> Node:
        node = self.product()
        while self.peek().kind == "op" and self.peek().text in "+-":
            tok = self.next()
            rhs = self.product()
            node = BinOp(tok.text, node, rhs, tok.pos)
        return node

    def product(self) -> Node:
        node = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            tok = self.next()
            rhs = self.unary()
            node = BinOp(tok.text, node, rhs, tok.pos)
        return node

    def unary(self) -> Node:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.next()
            return Neg(self.unary(), tok.pos)
        if tok.kind == "op" and tok.text == "+":
            self.next()
            return self.unary()
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.next()
            exp_tok = self.peek()
            if exp_tok.kind != "int":
                raise ParseError(
                    "exponent must be a nonnegative integer literal", exp_tok.pos
                )
            self.next()
            after = self.peek()
            if after.kind == "op" and after.text == "^":
                raise ParseError("chained '^' is not allowed; parenthesize", after.pos)
            return Pow(base, int(exp_tok.text), tok.pos)
        return base

    def atom(self) -> Node:
        tok = self.next()
        if tok.kind == "int":
            return Num(Fraction(int(tok.text)), tok.pos)
        if tok.kind == "float":
            return Num(float(tok.text), tok.pos)
        if tok.kind == "name":
            nxt = self.peek()
            if nxt.kind == "op" and nxt.text == "(":
                if not self.allow_calls:
                    raise ParseError(
                        f"function calls are not allowed here: {tok.text!r}", tok.pos
                    )
                self.next()
                args: list[Node] = []
                if not (self.peek().kind == "op" and self.peek().text == ")"):
                    args.append(self.sum_())
                    while self.peek().kind == "op" and self.peek().text == ",":
                        self.next()
                        args.append(self.sum_())
                self.expect_op(")")
                return Call(tok.text, tuple(args), tok.pos)
            return Name(tok.text, tok.pos)
        if tok.kind == "op" and tok.text == "(":
            node = self.sum_()
            self.expect_op(")")
            return node
        raise ParseError(f"unexpected token {tok.text!r}", tok.pos)


def parse_expression(text: str, allow_calls: bool = False) -> Node:
    """Parse `text` into an AST; raises ParseError with a position."""
    if not text.strip():
        raise ParseError("empty expression", 0)
    return _Parser(tokenize(text), allow_calls).parse()


# Basis-element references look like a run of letters followed by a run of
# digits ("e1", "E12"). Used by the natural-form and CLI evaluators.
BASIS_ELEMENT_RE = re.compile(r"^([A-Za-z]+)([0-9]+)$")
