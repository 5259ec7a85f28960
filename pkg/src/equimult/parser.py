"""Parser for polynomial expressions in the surface variables.

Grammar (whitespace-insensitive, explicit '*' for products):

    expr     := ['-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' uint)?
    base     := var | rational | '(' expr ')'
    rational := uint ('/' uint)?

Exponents must be non-negative integer literals; errors carry the byte
offset of the offending token.
"""

from __future__ import annotations

from fractions import Fraction

from .series import TruncatedSeries


class ParseError(Exception):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


_SYMBOLS = set("+-*^()/")


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < len(text) and text[i].isdigit():
                i += 1
            tokens.append(("number", text[start:i], start))
            continue
        if ch.isalpha():
            start = i
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(("name", text[start:i], start))
            continue
        if ch in _SYMBOLS:
            tokens.append(("symbol", ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, vars):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.vars = tuple(vars)

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def accept_symbol(self, *symbols):
        kind, value, _ = self.peek()
        if kind == "symbol" and value in symbols:
            return self.advance()[1]
        return None

    def parse(self) -> TruncatedSeries:
        result = self.expr()
        kind, value, offset = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {value!r}", offset)
        return result

    def expr(self) -> TruncatedSeries:
        negate = self.accept_symbol("-") is not None
        acc = self.term()
        if negate:
            acc = -acc
        while True:
            op = self.accept_symbol("+", "-")
            if op is None:
                return acc
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs

    def term(self) -> TruncatedSeries:
        acc = self.factor()
        while self.accept_symbol("*"):
            acc = acc * self.factor()
        return acc

    def factor(self) -> TruncatedSeries:
        base = self.base()
        if self.accept_symbol("^"):
            kind, value, offset = self.peek()
            if kind != "number":
                raise ParseError("integer exponent required", offset)
            self.advance()
            return base ** int(value)
        return base

    def base(self) -> TruncatedSeries:
        kind, value, offset = self.peek()
        if kind == "number":
            self.advance()
            numerator = int(value)
            if self.accept_symbol("/"):
                k2, v2, o2 = self.peek()
                if k2 != "number":
                    raise ParseError("denominator must be an integer", o2)
                self.advance()
                if int(v2) == 0:
                    raise ParseError("zero denominator", o2)
                return TruncatedSeries.constant(Fraction(numerator, int(v2)), self.vars)
            return TruncatedSeries.constant(numerator, self.vars)
        if kind == "name":
            self.advance()
            if value not in self.vars:
                raise ParseError(f"unknown variable {value!r}", offset)
            return TruncatedSeries.variable(value, self.vars)
        if kind == "symbol" and value == "(":
            self.advance()
            inner = self.expr()
            if not self.accept_symbol(")"):
                _, v, o = self.peek()
                raise ParseError(f"expected ')', found {v!r}", o)
            return inner
        raise ParseError(f"expected a variable, number, or '(', found {value!r}", offset)


def parse_expression(text: str, vars=("X", "Y", "Z")) -> TruncatedSeries:
    """Parse an exact polynomial over the given variable alphabet."""
    return _Parser(text, vars).parse()
