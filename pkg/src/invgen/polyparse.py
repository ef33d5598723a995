"""Parse integer polynomials in ``x`` from strings.

Accepted forms are an expression such as ``x^5 - x - 1`` or ``3x^2 + 2*(x+1)``,
or a comma-separated list of integer coefficients in ascending degree order.
Columns in error messages are 1-based; end of input is ``len(text) + 1``.
"""

from __future__ import annotations

import re

from .errors import ParseError

_COEFF_LIST = re.compile(r"^\s*[+-]?\d+\s*(,\s*[+-]?\d+\s*)+$")


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _add(a, b):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise ParseError(msg, self.pos + 1)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def parse(self) -> list[int]:
        if not self.text.strip():
            self.error("empty polynomial")
        poly = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return poly

    def expr(self):
        sign = -1 if self.take("-") else (self.take("+") and 1) or 1
        acc = _mul([sign], self.term())
        while self.peek() in ("+", "-"):
            sign = 1 if self.text[self.pos] == "+" else -1
            self.pos += 1
            acc = _add(acc, _mul([sign], self.term()))
        return acc

    def term(self):
        acc = self.factor()
        while True:
            if self.take("*"):
                acc = _mul(acc, self.factor())
            elif self.peek() in ("x", "X", "("):
                acc = _mul(acc, self.factor())
            else:
                return acc

    def factor(self):
        base = self.atom()
        if self.take("^"):
            self.skip()
            m = re.match(r"\d+", self.text[self.pos:])
            if not m:
                self.error("expected a non-negative integer exponent")
            self.pos += m.end()
            out = [1]
            for _ in range(int(m.group())):
                out = _mul(out, base)
            return out
        return base

    def atom(self):
        ch = self.peek()
        if ch.isdigit():
            m = re.match(r"\d+", self.text[self.pos:])
            self.pos += m.end()
            return _trim([int(m.group())])
        if ch in ("x", "X"):
            self.pos += 1
            return [0, 1]
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            if not self.take(")"):
                self.error("expected ')'")
            return inner
        if not ch:
            self.error("unexpected end of input")
        self.error(f"unexpected {ch!r}")


def parse_polynomial(text: str) -> list[int]:
    """Ascending integer coefficients of the polynomial written in ``text``."""
    if _COEFF_LIST.match(text):
        return _trim([int(t) for t in text.split(",")])
    return _Parser(text).parse()


def format_polynomial(coeffs) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = "x" if i == 1 else f"x^{i}"
            body = mono if a == 1 else f"{a}*{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
