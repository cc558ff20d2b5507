"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INTEGER)?
    atom   := INTEGER | NAME | "(" expr ")"

Division is allowed only by nonzero constants, so ``3/2*x`` is fine while
``x/y`` is rejected.  Juxtaposition (``2x``, ``x y``) is an error.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Sequence

from .multipoly import MultiPoly

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z][A-Za-z0-9_]*)
  | (?P<op>[-+*/^()−])
""", re.VERBOSE)


class ParseError(ValueError):
    """Raised for malformed input; ``position`` is a 0-based character offset."""

    def __init__(self, message, position=None, token=None):
        where = f" at position {position}" if position is not None else ""
        tok = f" (token {token!r})" if token is not None else ""
        super().__init__(f"{message}{where}{tok}")
        self.position = position
        self.token = token


class UnknownVariableError(ParseError):
    pass


class NonRationalLiteralError(ParseError):
    pass


class _Tok:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind, self.text, self.pos = kind, text, pos


def _tokenize(text: str) -> List[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", pos, text[pos])
        kind = m.lastgroup
        tok = m.group()
        if kind == "num" and not tok.isdigit():
            raise NonRationalLiteralError("non-rational literal; write fractions as a/b", pos, tok)
        if kind == "op" and tok == "−":
            tok = "-"
        if kind != "ws":
            out.append(_Tok(kind, tok, pos))
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, variables):
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = tuple(variables)

    @property
    def cur(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text):
        t = self.cur
        if t.text != text or t.kind == "end":
            raise ParseError(f"expected {text!r}", t.pos, t.text or "end of input")
        self.i += 1

    def parse(self):
        if self.cur.kind == "end":
            raise ParseError("empty expression", 0)
        p = self.expr()
        t = self.cur
        if t.kind != "end":
            if t.kind in ("num", "name") or t.text == "(":
                raise ParseError("implicit multiplication is not allowed", t.pos, t.text)
            raise ParseError("unexpected token", t.pos, t.text)
        return p

    def expr(self):
        p = self.term()
        while self.cur.text in ("+", "-") and self.cur.kind == "op":
            op = self.take().text
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.cur.kind == "op" and self.cur.text in ("*", "/"):
            op = self.take()
            q = self.unary()
            if op.text == "*":
                p = p * q
            else:
                if not q.is_constant():
                    raise ParseError("division by a non-constant", op.pos, "/")
                c = q.constant_value()
                if c == 0:
                    raise ParseError("division by zero", op.pos, "/")
                p = p.scale(1 / c)
        return p

    def unary(self):
        if self.cur.kind == "op" and self.cur.text in ("+", "-"):
            op = self.take().text
            p = self.unary()
            return -p if op == "-" else p
        return self.power()

    def power(self):
        base = self.atom()
        if self.cur.kind == "op" and self.cur.text == "^":
            self.take()
            t = self.cur
            if t.kind == "op" and t.text == "-":
                raise ParseError("negative exponents are not allowed", t.pos, t.text)
            if t.kind != "num":
                raise ParseError("exponent must be a non-negative integer", t.pos,
                                 t.text or "end of input")
            self.take()
            base = base ** int(t.text)
        return base

    def atom(self):
        t = self.cur
        if t.kind == "num":
            self.take()
            return MultiPoly.constant(self.vars, Fraction(int(t.text)))
        if t.kind == "name":
            self.take()
            if t.text not in self.vars:
                raise UnknownVariableError(f"unknown variable {t.text!r}", t.pos, t.text)
            return MultiPoly.var(self.vars, t.text)
        if t.kind == "op" and t.text == "(":
            self.take()
            p = self.expr()
            self.expect(")")
            return p
        raise ParseError("unexpected token", t.pos, t.text or "end of input")


def parse_poly(text: str, variables: Sequence[str]) -> MultiPoly:
    """Parse ``text`` into a :class:`MultiPoly` over ``variables``.

    Examples
    --------
    >>> str(parse_poly("x*(x*y - 1)", ["x", "y"]))
    'x^2*y - x'
    """
    variables = tuple(variables)
    if not variables:
        raise ValueError("at least one variable is required")
    if len(set(variables)) != len(variables):
        raise ValueError("variable names must be distinct")
    for v in variables:
        if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", v):
            raise ValueError(f"invalid variable name {v!r}")
    return _Parser(text, variables).parse()
