"""Integer polynomials in x_1..x_n, used for characters and Demazure operators."""

from __future__ import annotations

from typing import Iterable, Mapping


class CharPoly:
    """A Z-linear combination of monomials x^a, a in N^n."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[tuple[int, ...], int] | None = None):
        self.n = n
        clean = {}
        for a, c in (terms or {}).items():
            a = tuple(int(x) for x in a)
            if len(a) != n or any(x < 0 for x in a):
                raise ValueError(f"bad exponent vector {a} for n={n}")
            if int(c) != c:
                raise ValueError("character coefficients must be integers")
            if c:
                clean[a] = clean.get(a, 0) + int(c)
                if not clean[a]:
                    del clean[a]
        self.terms = clean

    @classmethod
    def monomial(cls, a: Iterable[int]) -> "CharPoly":
        a = tuple(a)
        return cls(len(a), {a: 1})

    @classmethod
    def one(cls, n: int) -> "CharPoly":
        return cls(n, {(0,) * n: 1})

    def _same(self, other: "CharPoly"):
        if self.n != other.n:
            raise ValueError("polynomials in different numbers of variables")

    def __add__(self, other: "CharPoly") -> "CharPoly":
        self._same(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, 0) + c
        return CharPoly(self.n, out)

    def __neg__(self) -> "CharPoly":
        return CharPoly(self.n, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other: "CharPoly") -> "CharPoly":
        return self + (-other)

    def __mul__(self, other) -> "CharPoly":
        if isinstance(other, int):
            return CharPoly(self.n, {a: other * c for a, c in self.terms.items()})
        self._same(other)
        out: dict = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                k = tuple(x + y for x, y in zip(a, b))
                out[k] = out.get(k, 0) + c * d
        return CharPoly(self.n, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CharPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def degree_set(self) -> set[int]:
        return {sum(a) for a in self.terms}

    def evaluate(self, xs: Iterable[int]) -> int:
        xs = list(xs)
        total = 0
        for a, c in self.terms.items():
            t = c
            for x, e in zip(xs, a):
                t *= x**e
            total += t
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for a in sorted(self.terms, reverse=True):
            c = self.terms[a]
            mono = "*".join(f"x{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(a, start=1) if e)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"CharPoly({self})"

    def to_json(self) -> list:
        return [{"exponents": list(a), "coeff": c} for a, c in sorted(self.terms.items(), reverse=True)]

    @classmethod
    def from_json(cls, data: list, n: int | None = None) -> "CharPoly":
        if not data:
            if n is None:
                raise ValueError("n is required for the zero polynomial")
            return cls(n)
        n = len(data[0]["exponents"]) if n is None else n
        return cls(n, {tuple(t["exponents"]): int(t["coeff"]) for t in data})
