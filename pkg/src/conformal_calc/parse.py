"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT | "D" | "L" | "L" INT | "(" expr ")"

``L`` is an alias for ``L1``.  Division is only allowed by a nonzero constant,
which is how rationals such as ``3/8`` are written.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .poly import Poly, Var, ONE

__all__ = ["PolyParseError", "parse_poly", "tokenize"]


class PolyParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        self.message = message
        super().__init__(f"{message} at column {pos + 1}: {text!r}")


@dataclass(frozen=True)
class Token:
    kind: str  # NUM, VAR, OP, LP, RP, END
    value: str
    pos: int


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(D|L\d*)|([-+*/^])|(\()|(\)))")


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise PolyParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastindex)
        kind = ("NUM", "VAR", "OP", "LP", "RP")[m.lastindex - 1]
        val = m.group(m.lastindex)
        # reject identifiers such as "Lx" or "Dz" glued to letters
        end = m.end()
        if kind == "VAR" and end < n and (text[end].isalpha() or text[end] == "_"):
            raise PolyParseError(f"unknown symbol starting {val + text[end]!r}", text, start)
        out.append(Token(kind, val, start))
        pos = end
    out.append(Token("END", "", n))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise PolyParseError(msg, self.text, tok.pos)

    def parse(self) -> Poly:
        if self.peek().kind == "END":
            self.fail("empty expression")
        p = self.expr()
        if self.peek().kind != "END":
            self.fail(f"unexpected token {self.peek().value!r}")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek().kind == "OP" and self.peek().value in "+-":
            op = self.take().value
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.peek().kind == "OP" and self.peek().value in "*/":
            op = self.take()
            q = self.unary()
            if op.value == "*":
                p = p * q
            else:
                if not q.is_const():
                    self.fail("division by a non-constant", op)
                if q.is_zero():
                    self.fail("division by zero", op)
                p = p / q
        return p

    def unary(self) -> Poly:
        t = self.peek()
        if t.kind == "OP" and t.value in "+-":
            self.take()
            p = self.unary()
            return -p if t.value == "-" else p
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek().kind == "OP" and self.peek().value == "^":
            self.take()
            t = self.peek()
            if t.kind != "NUM":
                self.fail("exponent must be a nonnegative integer", t)
            self.take()
            return base ** int(t.value)
        return base

    def atom(self) -> Poly:
        t = self.take()
        if t.kind == "NUM":
            return Poly.const(int(t.value))
        if t.kind == "VAR":
            if t.value == "D":
                return Poly.var(Var(0))
            idx = 1 if t.value == "L" else int(t.value[1:])
            if idx < 1:
                self.fail("lambda indices start at 1", t)
            return Poly.var(Var(idx))
        if t.kind == "LP":
            p = self.expr()
            if self.peek().kind != "RP":
                self.fail("expected ')'")
            self.take()
            return p
        if t.kind == "END":
            self.fail("unexpected end of expression", t)
        self.fail(f"unexpected token {t.value!r}", t)
        return ONE  # unreachable


def parse_poly(text: str) -> Poly:
    return _Parser(text).parse()
