"""Text form of polynomials.

Grammar (whitespace insignificant)::

    expr   := ["-"] term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := base ("^" uint)?
    base   := int | int "/" int | ident | "(" expr ")"
    ident  := [A-Za-z][A-Za-z0-9_]*

Multiplication must be explicit: ``2x`` is rejected.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Optional, Union

from .polyring import Polynomial, VarContext

_TOKEN = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<rat>\d+\s*/\s*\d+)"
    r"|(?P<int>\d+)"
    r"|(?P<ident>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*^()])"
)


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.pos = pos
        super().__init__(f"{message} (line {self.line}, column {self.column})")


class _Tok:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind, value, pos):
        self.kind, self.value, self.pos = kind, value, pos


def _tokenize(text: str) -> List[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), pos))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, ctx: Optional[VarContext]):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.ctx = ctx
        self.names: List[str] = []
        if ctx is None:
            # first-appearance order
            self.names = list(dict.fromkeys(t.value for t in self.toks if t.kind == "ident"))
            self.ctx = VarContext(self.names)

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok.pos)

    def expect_op(self, op):
        t = self.peek()
        if t.kind != "op" or t.value != op:
            self.error(f"expected {op!r}, found {t.value or 'end of input'!r}")
        self.i += 1

    def parse(self) -> Polynomial:
        p = self.expr()
        if self.peek().kind != "eof":
            self.error(f"unexpected {self.peek().value!r}")
        return p

    def expr(self) -> Polynomial:
        neg = False
        t = self.peek()
        if t.kind == "op" and t.value == "-":
            self.i += 1
            neg = True
        acc = self.term()
        if neg:
            acc = -acc
        while True:
            t = self.peek()
            if t.kind == "op" and t.value in "+-":
                self.i += 1
                rhs = self.term()
                acc = acc + rhs if t.value == "+" else acc - rhs
            else:
                return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while True:
            t = self.peek()
            if t.kind == "op" and t.value == "*":
                self.i += 1
                acc = acc * self.factor()
            elif t.kind in ("int", "rat", "ident") or (t.kind == "op" and t.value == "("):
                self.error("implicit multiplication is not allowed; use '*'")
            else:
                return acc

    def factor(self) -> Polynomial:
        base = self.base()
        t = self.peek()
        if t.kind == "op" and t.value == "^":
            self.i += 1
            e = self.peek()
            if e.kind != "int":
                self.error("exponent must be a nonnegative integer literal")
            self.i += 1
            base = base ** int(e.value)
        return base

    def base(self) -> Polynomial:
        t = self.next()
        if t.kind == "int":
            return Polynomial.constant(self.ctx, int(t.value))
        if t.kind == "rat":
            num, den = (int(x) for x in t.value.split("/"))
            if den == 0:
                self.error("zero denominator", t)
            return Polynomial.constant(self.ctx, Fraction(num, den))
        if t.kind == "ident":
            if t.value not in self.ctx:
                self.error(f"unknown variable {t.value!r}", t)
            return Polynomial.variable(self.ctx, t.value)
        if t.kind == "op" and t.value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        self.error(f"unexpected {t.value or 'end of input'!r}", t)


def parse_polynomial(text: str, context: Union[VarContext, str, None] = "auto") -> Polynomial:
    """Parse ``text``; with ``context="auto"`` variables are collected in
    order of first appearance."""
    ctx = None if context in (None, "auto") else context
    return _Parser(text, ctx).parse()


def _format_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial) -> str:
    """Canonical rendering, terms in descending graded-lex order."""
    items = p.items()
    if not items:
        return "0"
    names = p.ctx.names
    parts = []
    for k, (m, c) in enumerate(items):
        factors = []
        for name, e in zip(names, m):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if not factors:
            body = _format_coeff(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = _format_coeff(mag) + "*" + "*".join(factors)
        if k == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)
