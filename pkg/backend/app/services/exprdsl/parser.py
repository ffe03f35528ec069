from __future__ import annotations

"""
Recursive-descent parser for the problem-file expression language.

Grammar (see docs/expressions.md):
    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" unary)?          # right-associative, exponent constant
    atom   := number | "pi" | var | func "(" expr ")" | "(" expr ")"
"""
import re
from dataclasses import dataclass
from typing import List

from app.core.errors import ExprSyntaxError, UnknownIdentifier, VariableOutOfRange

from .nodes import FUNCTIONS, BinOp, Call, Expr, Neg, Num, Pi, Var, is_constant

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE | re.ASCII,
)
_VAR_RE = re.compile(r"x(\d+)")

_ATOM_START = frozenset({"number", "variable", "pi", "function", "("})


@dataclass(frozen=True)
class Token:
    kind: str  # number | ident | op | end
    text: str
    offset: int


def tokenize(src: str) -> List[Token]:
    """ASCII tokens only, so a character offset before the first error is also a byte offset."""
    toks: List[Token] = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ExprSyntaxError(pos, _ATOM_START | {"operator"}, repr(src[pos]))
        kind = m.lastgroup or ""
        if kind != "ws":
            toks.append(Token(kind, m.group(), pos))
        pos = m.end()
    toks.append(Token("end", "", len(src)))
    return toks


def _describe(tok: Token) -> str:
    return "end of input" if tok.kind == "end" else repr(tok.text)


class _Parser:
    def __init__(self, src: str, n: int) -> None:
        self.toks = tokenize(src)
        self.i = 0
        self.n = n

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def _advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def _is_op(self, *ops: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in ops

    def _expect_op(self, op: str) -> Token:
        if not self._is_op(op):
            raise ExprSyntaxError(self.tok.offset, {op}, _describe(self.tok))
        return self._advance()

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            raise ExprSyntaxError(
                self.tok.offset, {"+", "-", "*", "/", "^", "end of input"},
                _describe(self.tok),
            )
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self._is_op("+", "-"):
            op = self._advance().text
            left = BinOp(op, left, self.term())
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self._is_op("*", "/"):
            op = self._advance().text
            left = BinOp(op, left, self.unary())
        return left

    def unary(self) -> Expr:
        if self._is_op("-"):
            self._advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self._is_op("^"):
            self._advance()
            at = self.tok.offset
            exponent = self.unary()
            if not is_constant(exponent):
                raise ExprSyntaxError(at, {"constant exponent"}, "variable exponent")
            return BinOp("^", base, exponent)
        return base

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "number":
            self._advance()
            return Num(float(t.text))
        if t.kind == "ident":
            self._advance()
            if t.text == "pi":
                return Pi()
            m = _VAR_RE.fullmatch(t.text)
            if m is not None:
                idx = int(m.group(1))
                if not 1 <= idx <= self.n:
                    raise VariableOutOfRange(idx, self.n, t.offset)
                return Var(idx)
            if t.text in FUNCTIONS:
                self._expect_op("(")
                arg = self.expr()
                self._expect_op(")")
                return Call(t.text, arg)
            raise UnknownIdentifier(t.text, t.offset)
        if self._is_op("("):
            self._advance()
            e = self.expr()
            self._expect_op(")")
            return e
        raise ExprSyntaxError(t.offset, _ATOM_START | {"-"}, _describe(t))


def parse(src: str, n: int) -> Expr:
    """Parse `src` over variables x1..xn."""
    if n < 0:
        raise ValueError("dimension must be non-negative")
    return _Parser(src, n).parse()
