"""Recursive-descent parser for polynomials, forms and component lists.

Expression grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*       # '/' only by nonzero constants
    unary  := ('+'|'-') unary | power
    power  := atom ['^' INT]
    atom   := INT | NAME | '(' expr ')'

Forms are sums of ``<coeff> d<var>^d<var>...`` terms, where the coefficient
is a ``term`` (parenthesize sums) and may be omitted.  Implicit
multiplication is rejected everywhere else.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .errors import ParseError
from .forms import PForm, VectorField, _sort_sign
from .poly import Poly, RingSpec

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    line: int
    column: int


def tokenize(text: str, line: int = 1, column: int = 1) -> list[Token]:
    tokens = []
    pos = 0
    cur_line, line_start = line, -(column - 1)
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex)
        skipped = text[pos:start]
        for i, ch in enumerate(skipped):
            if ch == "\n":
                cur_line += 1
                line_start = pos + i + 1
        col = start - line_start + 1
        if m.group(1):
            tokens.append(Token("int", m.group(1), cur_line, col))
        elif m.group(2):
            tokens.append(Token("name", m.group(2), cur_line, col))
        else:
            ch = m.group(3)
            if ch not in "+-*/^(),":
                raise ParseError(f"unexpected character {ch!r}", cur_line, col)
            tokens.append(Token("op", ch, cur_line, col))
        pos = m.end()
    tail = text[pos:]
    end_line = cur_line + tail.count("\n")
    end_col = len(text) - line_start + 1 if "\n" not in tail else len(tail) - tail.rfind("\n")
    tokens.append(Token("end", "", end_line, end_col))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: RingSpec, line: int = 1, column: int = 1):
        self.ring = ring
        self.tokens = tokenize(text, line, column)
        self.pos = 0
        names = ring.variables + ring.params
        self.names = {n: i for i, n in enumerate(names)}
        self.diffs = {"d" + v: i for i, v in enumerate(ring.variables) if "d" + v not in self.names}

    # helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def error(self, message, tok: Token | None = None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.column)

    def at_op(self, ch) -> bool:
        return self.tok.kind == "op" and self.tok.text == ch

    def at_diff(self) -> bool:
        return self.tok.kind == "name" and self.tok.text in self.diffs

    def expect_end(self):
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")

    # expressions
    def expr(self) -> Poly:
        value = self.term()
        while self.at_op("+") or self.at_op("-"):
            op = self.advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self, stop_at_diff: bool = False) -> Poly:
        value = self.unary()
        while self.at_op("*") or self.at_op("/"):
            if stop_at_diff and self.at_op("*") and self.tokens[self.pos + 1].text in self.diffs:
                break
            op = self.advance()
            rhs = self.unary()
            if op.text == "*":
                value = value * rhs
            else:
                if not rhs.is_constant() or not rhs:
                    raise self.error("division only by nonzero constants", op)
                value = value / rhs.constant_value()
        return value

    def unary(self) -> Poly:
        if self.at_op("-"):
            self.advance()
            return -self.unary()
        if self.at_op("+"):
            self.advance()
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.at_op("^"):
            caret = self.advance()
            if self.tok.kind != "int":
                raise self.error("exponent must be a non-negative integer literal", self.tok if self.tok.kind != "end" else caret)
            e = int(self.advance().text)
            if self.at_op("^"):
                raise self.error("chained exponents are ambiguous; use parentheses")
            return base ** e
        return base

    def atom(self) -> Poly:
        tok = self.tok
        if tok.kind == "int":
            self.advance()
            return Poly.constant(self.ring, int(tok.text))
        if tok.kind == "name":
            if tok.text in self.names:
                self.advance()
                return Poly.var(self.ring, self.names[tok.text])
            if tok.text in self.diffs:
                raise self.error(f"differential {tok.text!r} not allowed in a function expression")
            raise self.error(f"unknown variable {tok.text!r}")
        if self.at_op("("):
            self.advance()
            value = self.expr()
            if not self.at_op(")"):
                raise self.error("expected ')'")
            self.advance()
            return value
        if tok.kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {tok.text!r}")

    # forms
    def form(self) -> PForm:
        pieces = []
        first = True
        while True:
            sign = 1
            if self.at_op("+") or self.at_op("-"):
                sign = -1 if self.advance().text == "-" else 1
            elif not first:
                break
            first = False
            coeff = Poly.one(self.ring)
            if not self.at_diff():
                coeff = self.term(stop_at_diff=True)
                if self.at_op("*"):
                    self.advance()
                    if not self.at_diff():
                        raise self.error("expected a differential after '*'")
            idx = []
            if self.at_diff():
                idx.append(self.diffs[self.advance().text])
                while self.at_op("^"):
                    self.advance()
                    if not self.at_diff():
                        raise self.error("expected a differential after '^'")
                    idx.append(self.diffs[self.advance().text])
            elif self.tok.kind == "name" or self.at_op("("):
                raise self.error("implicit multiplication is not allowed")
            s, key = _sort_sign(idx)
            if not s:
                pieces.append((len(idx), None, None))
            else:
                pieces.append((len(idx), key, coeff if s * sign > 0 else -coeff))
        degrees = {p[0] for p in pieces}
        if len(degrees) != 1:
            raise self.error("form terms have mixed degrees")
        degree = degrees.pop()
        total = PForm.zero(self.ring, degree)
        for _, key, coeff in pieces:
            if key is not None:
                total = total + PForm(self.ring, degree, {key: coeff})
        return total


def parse_poly(text: str, ring: RingSpec, line: int = 1, column: int = 1) -> Poly:
    p = _Parser(text, ring, line, column)
    value = p.expr()
    if p.tok.kind == "name" or p.at_op("("):
        raise p.error("implicit multiplication is not allowed")
    p.expect_end()
    return value


def parse_form(text: str, ring: RingSpec, line: int = 1, column: int = 1) -> PForm:
    p = _Parser(text, ring, line, column)
    if p.tok.kind == "end":
        raise p.error("empty form")
    value = p.form()
    p.expect_end()
    return value


def parse_components(text: str, ring: RingSpec, line: int = 1, column: int = 1) -> list[Poly]:
    """Comma-separated list with one expression per coordinate."""
    p = _Parser(text, ring, line, column)
    comps = [p.expr()]
    while p.at_op(","):
        p.advance()
        comps.append(p.expr())
    if p.tok.kind == "name" or p.at_op("("):
        raise p.error("implicit multiplication is not allowed")
    p.expect_end()
    if len(comps) != ring.nvars:
        raise ParseError(f"expected {ring.nvars} components, got {len(comps)}", line, column)
    return comps


def parse_vector_field(text: str, ring: RingSpec, line: int = 1, column: int = 1) -> VectorField:
    return VectorField(parse_components(text, ring, line, column), ring)


def parse_variables(text: str) -> tuple[str, ...]:
    names = tuple(v.strip() for v in text.split(","))
    for v in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
            raise ParseError(f"bad variable name {v!r}")
    return names


def ring_of(names: Sequence[str]) -> RingSpec:
    return RingSpec(tuple(names))
