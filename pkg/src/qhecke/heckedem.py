"""Hecke monoid arithmetic, Demazure operators and the character comparison.

Permutations are one-line tuples of 1..n. The monoid element T_w is stored as
its permutation w, and T_{s_k} T_w is T_{s_k w} when the length goes up and
T_w otherwise. Left multiplication by s_k swaps the values k and k+1 in the
one-line notation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .charpoly import CharPoly
from .comod import character, weight_module, weights
from .exactmath import IndexViolation, ParamSpec
from .functors import apply_F


@dataclass(frozen=True)
class Permutation:
    word: tuple

    def __post_init__(self):
        w = tuple(int(x) for x in self.word)
        if sorted(w) != list(range(1, len(w) + 1)):
            raise ValueError(f"{w} is not a permutation")
        object.__setattr__(self, "word", w)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def simple(cls, k: int, n: int) -> "Permutation":
        return cls.identity(n).left_mul(k)

    @classmethod
    def longest(cls, n: int) -> "Permutation":
        return cls(tuple(range(n, 0, -1)))

    @property
    def n(self) -> int:
        return len(self.word)

    def length(self) -> int:
        w = self.word
        return sum(1 for a in range(len(w)) for b in range(a + 1, len(w)) if w[a] > w[b])

    def _check(self, k: int):
        if not 1 <= k < self.n:
            raise IndexViolation(f"s_{k} is not a simple transposition of S_{self.n}")

    def left_mul(self, k: int) -> "Permutation":
        self._check(k)
        swap = {k: k + 1, k + 1: k}
        return Permutation(tuple(swap.get(x, x) for x in self.word))

    def is_left_ascent(self, k: int) -> bool:
        """l(s_k w) = l(w) + 1."""
        self._check(k)
        return self.word.index(k) < self.word.index(k + 1)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(tuple(self.word[x - 1] for x in other.word))

    def __str__(self):
        return "[" + " ".join(map(str, self.word)) + "]"


@dataclass(frozen=True)
class HeckeElement:
    """T_w in the monoid with T_s T_w = T_{sw} or T_w."""

    perm: Permutation

    @classmethod
    def identity(cls, n: int) -> "HeckeElement":
        return cls(Permutation.identity(n))

    @classmethod
    def simple(cls, k: int, n: int) -> "HeckeElement":
        return cls(Permutation.simple(k, n))

    def left_mul(self, k: int) -> "HeckeElement":
        if self.perm.is_left_ascent(k):
            return HeckeElement(self.perm.left_mul(k))
        return self

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        return hecke_product(self, other)

    def __str__(self):
        w = reduced_word(self.perm)
        return "T_e" if not w else "T_{" + " ".join(f"s{k}" for k in w) + "}"


def reduced_word(w: Permutation) -> list[int]:
    """Lexicographically smallest reduced word (s_{k1} s_{k2} ... = w)."""
    out = []
    while True:
        for k in range(1, w.n):
            if not w.is_left_ascent(k):
                out.append(k)
                w = w.left_mul(k)
                break
        else:
            return out


def hecke_product(u: HeckeElement, v: HeckeElement) -> HeckeElement:
    if u.perm.n != v.perm.n:
        raise ValueError("Hecke elements of different ranks")
    out = v
    for k in reversed(reduced_word(u.perm)):
        out = out.left_mul(k)
    return out


def hecke_of_word(word: Sequence[int], n: int) -> HeckeElement:
    """The monoid element of an operator word in application order."""
    h = HeckeElement.identity(n)
    for k in word:
        h = h.left_mul(k)
    return h


# Demazure operators


def _demazure_monomial(i: int, a: tuple) -> dict:
    p, q = a[i - 1], a[i]
    if p == q - 1:
        return {}
    lo, hi, sign = (q, p, 1) if p >= q else (p + 1, q - 1, -1)
    out = {}
    for k in range(lo, hi + 1):
        b = list(a)
        b[i - 1], b[i] = k, p + q - k
        out[tuple(b)] = sign
    return out


def demazure(i: int, f: CharPoly) -> CharPoly:
    """pi_i f = (x_i f - x_{i+1} s_i f) / (x_i - x_{i+1})."""
    if not 1 <= i < f.n:
        raise IndexViolation(f"pi_{i} needs 1 <= i < {f.n}")
    out: dict = {}
    for a, c in f.terms.items():
        for b, s in _demazure_monomial(i, a).items():
            out[b] = out.get(b, 0) + c * s
    return CharPoly(f.n, out)


def demazure_word(word: Sequence[int], f: CharPoly) -> CharPoly:
    """Apply pi_{w1}, then pi_{w2}, and so on."""
    for i in word:
        f = demazure(i, f)
    return f


# characters of induced comodules


def licensed(i: int, ws: Iterable[tuple]) -> bool:
    """Every weight mu satisfies mu_i - mu_{i+1} >= -1.

    For such weights F_i k_mu has no higher derived terms, so F_i is exact on
    any comodule built from them and its character is pi_i of the input.
    """
    return all(mu[i - 1] - mu[i] >= -1 for mu in ws)


@dataclass
class CharacterStep:
    letter: int
    status: str  # pass, fail or unverified
    dim: int
    character: CharPoly
    expected: CharPoly

    def to_json(self) -> dict:
        return {
            "letter": self.letter,
            "status": self.status,
            "dim": self.dim,
            "character": str(self.character),
            "expected": str(self.expected),
        }


@dataclass
class CharacterReport:
    word: tuple
    weight: tuple
    steps: list = field(default_factory=list)

    @property
    def status(self) -> str:
        s = {x.status for x in self.steps}
        if "fail" in s:
            return "fail"
        if "unverified" in s:
            return "unverified"
        return "pass"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def character(self) -> CharPoly:
        return self.steps[-1].character if self.steps else CharPoly.monomial(self.weight)

    @property
    def expected(self) -> CharPoly:
        return self.steps[-1].expected if self.steps else CharPoly.monomial(self.weight)

    def to_json(self) -> dict:
        return {
            "word": list(self.word),
            "weight": list(self.weight),
            "status": self.status,
            "character": self.character.to_json(),
            "expected": self.expected.to_json(),
            "steps": [x.to_json() for x in self.steps],
        }


def compare_character(word: Sequence[int], lam: Sequence[int], n: int | None = None, params: ParamSpec | None = None) -> CharacterReport:
    """ch(F_{wk} ... F_{w1} k_lam) against pi_{wk} ... pi_{w1} x^lam.

    A step whose input has a weight outside the licensed range is marked
    unverified, and so is every later step.
    """
    lam = tuple(lam)
    if n is not None and n != len(lam):
        raise ValueError(f"weight {lam} does not have {n} entries")
    M = weight_module(lam, params or ParamSpec())
    expected = CharPoly.monomial(lam)
    report = CharacterReport(tuple(word), lam)
    trusted = True
    for i in word:
        trusted = trusted and licensed(i, weights(M))
        M = apply_F(i, M)
        expected = demazure(i, expected)
        ch = character(M)
        status = "unverified" if not trusted else ("pass" if ch == expected else "fail")
        report.steps.append(CharacterStep(i, status, M.dim, ch, expected))
    return report
