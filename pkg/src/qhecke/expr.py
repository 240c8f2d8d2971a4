"""Parser for algebra expressions such as ``2*c[2,2]*c[1,1] - (1/2)*c[1,2]^2``.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | power
    power  := atom ("^" INT)?
    atom   := INT ("/" INT)? | "c[" INT "," INT "]" | "(" expr ")"

The value is a noncommutative combination ``{word: Fraction}`` of words in
the generators; nothing is reduced here.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .exactmath import ParseError, vadd_into

_TOKEN = re.compile(r"\s*(?:(\d+)|(c\s*\[\s*(\d+)\s*,\s*(\d+)\s*\])|(.))")


def _tokens(text: str) -> list[tuple[str, object, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            out.append(("gen", (int(m.group(3)), int(m.group(4))), m.start(2)))
        elif m.group(5) is not None:
            ch = m.group(5)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(5))
            out.append((ch, ch, m.start(5)))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def _mul(x: dict, y: dict) -> dict:
    out: dict = {}
    for w1, c1 in x.items():
        for w2, c2 in y.items():
            vadd_into(out, {w1 + w2: c1 * c2})
    return out


class _Parser:
    def __init__(self, text: str, n: int | None):
        self.toks = _tokens(text)
        self.i = 0
        self.n = n

    def peek(self):
        return self.toks[self.i]

    def take(self, kind: str):
        tok = self.toks[self.i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> dict:
        acc = self.term()
        while self.peek()[0] in "+-":
            op = self.take(self.peek()[0])[0]
            vadd_into(acc, self.term(), 1 if op == "+" else -1)
        return acc

    def term(self) -> dict:
        acc = self.unary()
        while self.peek()[0] == "*":
            self.take("*")
            acc = _mul(acc, self.unary())
        return acc

    def unary(self) -> dict:
        if self.peek()[0] == "-":
            self.take("-")
            return {w: -c for w, c in self.unary().items()}
        return self.power()

    def power(self) -> dict:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take("^")
            k = self.take("int")[1]
            out = {(): Fraction(1)}
            for _ in range(k):
                out = _mul(out, base)
            return out
        return base

    def atom(self) -> dict:
        kind, val, pos = self.peek()
        if kind == "int":
            self.take("int")
            num = Fraction(val)
            if self.peek()[0] == "/":
                self.take("/")
                den = self.take("int")
                if den[1] == 0:
                    raise ParseError("division by zero", den[2])
                num /= den[1]
            return {(): num} if num else {}
        if kind == "gen":
            self.take("gen")
            i, j = val
            if self.n is not None and not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ParseError(f"generator c[{i},{j}] out of range for n={self.n}", pos)
            return {((i, j),): Fraction(1)}
        if kind == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner
        what = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"unexpected {what}", pos)


def parse(text: str, n: int | None = None) -> dict:
    p = _Parser(text, n)
    out = p.expr()
    p.take("end")
    return out
