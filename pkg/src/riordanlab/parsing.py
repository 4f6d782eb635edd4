"""Recursive-descent parser for the small expression language shared by
ring elements, modulus polynomials and truncated series.

Grammar (whitespace ignored)::

    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary | unary)*      # juxtaposition multiplies
    unary    := ('-' | '+') unary | power
    power    := primary ('^' exponent)?
    exponent := INT | '-' INT | '(' ['-'] INT ['/' INT] ')'
    primary  := INT | NAME | '(' expr ')'

The parser is generic: an *algebra* object turns integer literals and names
into values and supplies division and powers.  Addition, subtraction,
multiplication and negation go through the values' own operators.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Protocol

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class Algebra(Protocol):
    def const(self, n: int) -> Any: ...

    def symbol(self, name: str) -> Any: ...

    def div(self, a: Any, b: Any) -> Any: ...

    def pow(self, a: Any, exponent: Fraction) -> Any: ...


def tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # pragma: no cover - the pattern matches any non-space char
            raise ParseError(f"cannot tokenize {text[pos:]!r}")
        pos = m.end()
        if m.group(1) is not None:
            tokens.append(("int", m.group(1)))
        elif m.group(2) is not None:
            # "3t" and "Xt" are common; split multi-letter runs of the single
            # letter symbols X and t into separate names.
            word = m.group(2)
            if re.fullmatch(r"[Xt]+", word):
                tokens.extend(("name", ch) for ch in word)
            else:
                tokens.append(("name", word))
        else:
            tokens.append(("op", m.group(3)))
    return tokens


class _Parser:
    def __init__(self, text: str, algebra: Algebra):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.alg = algebra

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        if tok[0] is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        self.pos += 1
        return tok

    def expect(self, op: str) -> None:
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, got {val!r} in {self.text!r}")

    def at_op(self, *ops: str) -> bool:
        kind, val = self.peek()
        return kind == "op" and val in ops

    def starts_primary(self) -> bool:
        kind, val = self.peek()
        return kind in ("int", "name") or (kind == "op" and val == "(")

    def parse(self):
        if not self.tokens:
            raise ParseError("empty expression")
        value = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input {self.peek()[1]!r} in {self.text!r}")
        return value

    def expr(self):
        value = self.term()
        while self.at_op("+", "-"):
            _, op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while True:
            if self.at_op("*"):
                self.take()
                value = value * self.unary()
            elif self.at_op("/"):
                self.take()
                value = self.alg.div(value, self.unary())
            elif self.starts_primary():
                value = value * self.power()
            else:
                return value

    def unary(self):
        if self.at_op("-"):
            self.take()
            return -self.unary()
        if self.at_op("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.primary()
        if self.at_op("^"):
            self.take()
            base = self.alg.pow(base, self.exponent())
        return base

    def exponent(self) -> Fraction:
        if self.at_op("("):
            self.take()
            sign = 1
            if self.at_op("-"):
                self.take()
                sign = -1
            num = self.integer()
            den = 1
            if self.at_op("/"):
                self.take()
                den = self.integer()
                if den == 0:
                    raise ParseError("zero denominator in exponent")
            self.expect(")")
            return Fraction(sign * num, den)
        if self.at_op("-"):
            self.take()
            return Fraction(-self.integer())
        return Fraction(self.integer())

    def integer(self) -> int:
        kind, val = self.take()
        if kind != "int":
            raise ParseError(f"expected an integer, got {val!r} in {self.text!r}")
        return int(val)

    def primary(self):
        kind, val = self.take()
        if kind == "int":
            return self.alg.const(int(val))
        if kind == "name":
            return self.alg.symbol(val)
        if val == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected {val!r} in {self.text!r}")


def parse_expression(text: str, algebra: Algebra):
    return _Parser(text, algebra).parse()


def split_top_level(text: str, sep: str = ",") -> list[str]:
    """Split on *sep* where it is not nested inside parentheses."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {text!r}")
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    if depth != 0:
        raise ParseError(f"unbalanced parentheses in {text!r}")
    parts.append(text[start:])
    return parts
