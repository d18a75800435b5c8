"""Tiny grammar for classes written in double-index notation.

``a_{1,2}`` is the class ``a1`` placed in tensor slot 2, ``c_{3}`` is ``c`` in
slot 3, and a bare name (``b1``, ``alpha``) lives in slot 1.  Sums,
differences, products (``*`` or juxtaposition), integer coefficients,
parentheses and powers ``^k`` are supported::

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor ('*'? factor)*
    factor := atom ('^' INT)?
    atom   := INT | GEN | '(' expr ')'
    GEN    := NAME ('_{' INT [',' INT] '}')?
"""
from __future__ import annotations

import re

from ..errors import BadParams, ParseError
from .algebra import Element, GradedAlgebra

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<gen>[A-Za-z]+\d*)(?:_\{(?P<i>\d+)(?:,(?P<j>\d+))?\})?"
                    r"|(?P<op>[-+*^()]))")


def _tokens(text: str):
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at {text[pos:]!r}")
        pos = m.end()
        if m.group("int"):
            yield ("int", int(m.group("int")))
        elif m.group("gen"):
            yield ("gen", (m.group("gen"), m.group("i"), m.group("j")))
        else:
            yield ("op", m.group("op"))
    yield ("end", None)


class _Parser:
    def __init__(self, ring: GradedAlgebra, text: str):
        self.ring = ring
        self.toks = list(_tokens(text))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expr(self) -> Element:
        neg = False
        if self.peek() == ("op", "-"):
            self.take()
            neg = True
        out = self.term()
        if neg:
            out = -out
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> Element:
        out = self.factor()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.take()
                out = out * self.factor()
            elif tok[0] in ("gen", "int") or tok == ("op", "("):
                out = out * self.factor()
            else:
                return out

    def factor(self) -> Element:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, k = self.take()
            if kind != "int":
                raise ParseError("exponent must be an integer")
            return base**k
        return base

    def atom(self) -> Element:
        kind, val = self.take()
        if kind == "int":
            return self.ring.one() * val
        if kind == "gen":
            name, i, j = val
            if j is not None:
                name, slot = f"{name.rstrip('0123456789')}{i}", int(j)
            elif i is not None:
                slot = int(i)
            else:
                slot = 1
            try:
                return self.ring.gen(name, slot)
            except BadParams as exc:
                raise ParseError(str(exc)) from None
        if val == "(":
            out = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("missing ')'")
            return out
        raise ParseError(f"unexpected token {val!r}")


def parse_element(ring: GradedAlgebra, text: str) -> Element:
    p = _Parser(ring, text)
    out = p.expr()
    if p.peek()[0] != "end":
        raise ParseError(f"trailing input in {text!r}")
    return out
