"""Text syntax for differential polynomials.

Grammar (whitespace is ignored)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := coef ['*' factor ('*' factor)*] | factor ('*' factor)*
    factor := var ['^' nat]
    var    := 'u' [nat] | 'u_' nat
    coef   := nat ['/' nat]

``u3`` and ``u_3`` are the same variable, and ``u`` is ``u0``.  ``str()`` of
a ``DiffPoly`` produces text in this grammar.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .diffalg import DiffPoly
from .errors import ParseError

__all__ = ["parse_expression", "format_expression"]

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<var>u(?:_\d+|\d+)?(?![A-Za-z_\d]))
  | (?P<num>\d+)
  | (?P<op>[-+*/^])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            end = pos
            while end < len(text) and not text[end].isspace() and text[end] not in "+-*/^":
                end += 1
            raise ParseError(f"unknown token {text[pos:max(end, pos + 1)]!r}", text, pos)
        kind = match.lastgroup
        if kind != "ws":
            tokens.append((kind, match.group(), pos))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, self.text, tok[2])

    def expect(self, kind, value=None):
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            self.fail(f"expected {value or kind}", tok)
        return tok

    def nat(self) -> int:
        return int(self.expect("num")[1])

    def expr(self) -> DiffPoly:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        result = self.term() * sign
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = 1 if self.take()[1] == "+" else -1
            result = result + self.term() * sign
        if self.peek()[0] != "end":
            self.fail("unexpected input")
        return result

    def term(self) -> DiffPoly:
        tok = self.peek()
        if tok[0] == "num":
            coef = self.coef()
            if not (self.peek()[0] == "op" and self.peek()[1] == "*"):
                return DiffPoly.constant(coef)
            self.take()
            result = self.factor() * coef
        elif tok[0] == "var":
            result = self.factor()
        else:
            self.fail("expected a coefficient or a variable")
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            result = result * self.factor()
        return result

    def coef(self) -> Fraction:
        num = self.nat()
        if self.peek()[0] == "op" and self.peek()[1] == "/":
            self.take()
            den_tok = self.peek()
            den = self.nat()
            if den == 0:
                self.fail("zero denominator", den_tok)
            return Fraction(num, den)
        return Fraction(num)

    def factor(self) -> DiffPoly:
        tok = self.expect("var")
        name = tok[1]
        index = int(name.lstrip("u_") or 0)
        exp = 1
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            exp = self.nat()
        return DiffPoly.monomial({index: exp})


def parse_expression(text: str) -> DiffPoly:
    """Parse text such as ``"5*u1*u3 + 5/3*u1^3"`` into a ``DiffPoly``."""
    return _Parser(text).expr()


def format_expression(p: DiffPoly) -> str:
    return str(p)
