"""Recursive-descent reader shared by the coefficient and expression formats.

Grammar (juxtaposition is multiplication, ``^`` binds tightest)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/' | <juxtaposed>) unary)*
    unary  := '-' unary | power
    power  := atom ('^' exponent)?
    exponent := INT | '-' INT | '{' '-'? INT '}' | '(' '-'? INT ')'
    atom   := INT | NAME | '(' expr ')'

Values are combined with the ordinary Python operators, so any type with
``+ - * / **`` works as long as the caller supplies the leaves.
"""

from __future__ import annotations

import re
from typing import Any, Callable

from .errors import ParseError

_ALIASES = {"′": "'", "q̄": "qbar", "−": "-"}

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9_]*'*)|(?P<op>[-+*/^(){}]))"
)


def tokenize(text: str) -> list[str]:
    for src, dst in _ALIASES.items():
        text = text.replace(src, dst)
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r} at {pos}")
        tokens.append(m.group(m.lastgroup))
        pos = m.end()
    return tokens


class _Reader:
    def __init__(self, tokens, atom: Callable[[str], Any], number: Callable[[int], Any]):
        self.tokens = tokens
        self.i = 0
        self.atom = atom
        self.number = number

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'token'}, got {tok!r}")
        self.i += 1
        return tok

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _starts_atom(self, tok):
        return tok is not None and (tok == "(" or tok[0].isalnum())

    def term(self):
        value = self.unary()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                value = value * self.unary()
            elif tok == "/":
                self.take()
                value = value / self.unary()
            elif self._starts_atom(tok):
                value = value * self.unary()
            else:
                return value

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom_()
        if self.peek() == "^":
            self.take()
            base = base ** self.exponent()
        return base

    def exponent(self):
        close = {"{": "}", "(": ")"}.get(self.peek())
        if close:
            self.take()
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        tok = self.take()
        if not tok.isdigit():
            raise ParseError(f"exponent must be an integer, got {tok!r}")
        if close:
            self.take(close)
        return sign * int(tok)

    def atom_(self):
        tok = self.take()
        if tok == "(":
            value = self.expr()
            self.take(")")
            return value
        if tok.isdigit():
            return self.number(int(tok))
        if tok[0].isalpha():
            return self.atom(tok)
        raise ParseError(f"unexpected token {tok!r}")


def parse(text: str, atom: Callable[[str], Any], number: Callable[[int], Any]):
    tokens = tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    reader = _Reader(tokens, atom, number)
    value = reader.expr()
    if reader.peek() is not None:
        raise ParseError(f"trailing input at token {reader.peek()!r}")
    return value
