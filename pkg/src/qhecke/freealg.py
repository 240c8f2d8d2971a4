"""Words in the generators x_ij, the quadratic rewrite system and normal forms.

A generator is a pair ``(i, j)`` with 1-based indices. Python's tuple order
on pairs is exactly the row-major generator order, and a word is a tuple of
generators. A word is normal when its letters are non-decreasing; normal
words of degree r correspond to n x n exponent matrices of total r.

A shape ``b`` is a non-decreasing tuple with ``b[i-1] <= n``; the quotient
A(b) kills every generator ``(i, s)`` with ``s > b[i-1]``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, permutations
from typing import Iterable, Mapping, Sequence

from .exactmath import (
    FormulaMismatch,
    InvalidShape,
    ParamSpec,
    ShapeMismatch,
    fmt_scalar,
    to_scalar,
    vadd_into,
)

Gen = tuple  # (row, col)
Word = tuple  # tuple of Gen


def check_shape(n: int, b: Sequence[int] | None) -> tuple[int, ...] | None:
    if b is None:
        return None
    b = tuple(int(x) for x in b)
    if len(b) != n:
        raise InvalidShape(f"shape {b} has length {len(b)}, expected {n}")
    if any(not 1 <= x <= n for x in b):
        raise InvalidShape(f"shape {b} has entries outside 1..{n}")
    if any(b[k] > b[k + 1] for k in range(n - 1)):
        raise InvalidShape(f"shape {b} is not non-decreasing")
    return b


def generators(n: int) -> list[Gen]:
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]


def allowed_generators(n: int, b: Sequence[int] | None) -> list[Gen]:
    if b is None:
        return generators(n)
    return [(i, j) for i in range(1, n + 1) for j in range(1, b[i - 1] + 1)]


def killed(g: Gen, b: Sequence[int] | None) -> bool:
    return b is not None and g[1] > b[g[0] - 1]


def word_key(w: Word):
    """Sort key for the length-then-lexicographic word order."""
    return (len(w), w)


def is_normal(w: Word) -> bool:
    return all(w[k] <= w[k + 1] for k in range(len(w) - 1))


def swap_rule(u: Gen, v: Gen, params: ParamSpec) -> list[tuple[Fraction, Gen, Gen]]:
    """Rewrite the decreasing pair ``u v`` (u > v) as a sum of smaller words."""
    (j, s), (i, r) = u, v
    if j == i:
        return [(params.alpha, v, u)]
    if s == r:
        return [(params.beta, v, u)]
    if s < r:
        return [(params.alpha_inv_beta, v, u)]
    out = [(Fraction(1), v, u)]
    c = params.beta_minus_alpha_inv
    if c:
        out.append((c, (i, s), (j, r)))
    return out


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: tuple  # ((coeff, word), ...)

    def __str__(self):
        left = "".join(f"x{a}{b}" for a, b in self.lhs)
        if not self.rhs:
            return f"{left} -> 0"
        right = " + ".join(f"{fmt_scalar(c)}*" + "".join(f"x{a}{b}" for a, b in w) for c, w in self.rhs)
        return f"{left} -> {right}"


def rule_set(n: int, b: Sequence[int] | None, params: ParamSpec) -> list[RewriteRule]:
    b = check_shape(n, b)
    gens = generators(n)
    rules = []
    for u in gens:
        for v in gens:
            if u > v:
                rhs = tuple((c, (x, y)) for c, x, y in swap_rule(u, v, params))
                rules.append(RewriteRule((u, v), rhs))
    if b is not None:
        for g in gens:
            if killed(g, b):
                rules.append(RewriteRule((g,), ()))
    return rules


def reduce_words(
    combo: Mapping[Word, Fraction] | Iterable[Word],
    n: int,
    b: Sequence[int] | None,
    params: ParamSpec,
    rng: random.Random | None = None,
) -> dict[Word, Fraction]:
    """Rewrite to normal form one step at a time.

    The default strategy rewrites the leftmost reducible factor. Passing an
    ``rng`` picks a uniformly random reducible factor of a random pending
    word instead, which is how strategy independence is tested.
    """
    if not isinstance(combo, Mapping):
        combo = {tuple(w): Fraction(1) for w in combo}
    pending: dict[Word, Fraction] = {}
    for w, c in combo.items():
        vadd_into(pending, {tuple(w): to_scalar(c)})
    done: dict[Word, Fraction] = {}
    while pending:
        if rng is None:
            w = next(iter(pending))
        else:
            w = rng.choice(sorted(pending))
        c = pending.pop(w)
        sites = _redexes(w, b)
        if not sites:
            vadd_into(done, {w: c})
            continue
        k, kind = sites[0] if rng is None else rng.choice(sites)
        if kind == "kill":
            continue
        for coeff, x, y in swap_rule(w[k], w[k + 1], params):
            vadd_into(pending, {w[:k] + (x, y) + w[k + 2 :]: c * coeff})
    return done


def _redexes(w: Word, b) -> list[tuple[int, str]]:
    out = []
    for k, g in enumerate(w):
        if killed(g, b):
            out.append((k, "kill"))
        if k + 1 < len(w) and g > w[k + 1]:
            out.append((k, "swap"))
    return out


class Algebra:
    """The algebra A(n) or its quotient A(b) at fixed parameters.

    Multiplication inserts letters into normal words one at a time, and each
    insertion is memoised, which is much faster than generic rewriting.
    """

    def __init__(self, n: int, shape: Sequence[int] | None, params: ParamSpec):
        self.n = n
        self.shape = check_shape(n, shape)
        self.params = params
        self._insert_cache: dict[tuple[Word, Gen], dict[Word, Fraction]] = {}

    def __eq__(self, other):
        return isinstance(other, Algebra) and (self.n, self.shape, self.params) == (other.n, other.shape, other.params)

    def __hash__(self):
        return hash((self.n, self.shape, self.params))

    def __repr__(self):
        return f"Algebra(n={self.n}, shape={self.shape}, {self.params})"

    def admissible(self, w: Word) -> bool:
        return not any(killed(g, self.shape) for g in w)

    def insert(self, w: Word, g: Gen) -> dict[Word, Fraction]:
        """Normal form of ``w * g`` for a normal admissible word ``w``."""
        if killed(g, self.shape):
            return {}
        if not w or w[-1] <= g:
            return {w + (g,): Fraction(1)}
        key = (w, g)
        hit = self._insert_cache.get(key)
        if hit is not None:
            return hit
        out: dict[Word, Fraction] = {}
        head, last = w[:-1], w[-1]
        for c, x, y in swap_rule(last, g, self.params):
            if killed(x, self.shape) or killed(y, self.shape):
                continue
            for w1, c1 in self.insert(head, x).items():
                for w2, c2 in self.insert(w1, y).items():
                    vadd_into(out, {w2: c * c1 * c2})
        self._insert_cache[key] = out
        return out

    def mul_words(self, w1: Word, w2: Word) -> dict[Word, Fraction]:
        cur = {w1: Fraction(1)}
        for g in w2:
            nxt: dict[Word, Fraction] = {}
            for w, c in cur.items():
                for w3, c3 in self.insert(w, g).items():
                    vadd_into(nxt, {w3: c * c3})
            cur = nxt
        return cur

    def word_nf(self, letters: Iterable[Gen]) -> dict[Word, Fraction]:
        return self.mul_words((), tuple(letters))

    def element(self, terms: Mapping[Word, Fraction] | None = None) -> "AlgebraElement":
        return AlgebraElement(self, terms or {})

    def gen(self, i: int, j: int) -> "AlgebraElement":
        if killed((i, j), self.shape):
            return self.element()
        return self.element({((i, j),): Fraction(1)})

    def one(self) -> "AlgebraElement":
        return self.element({(): Fraction(1)})

    def monomial(self, omega) -> "AlgebraElement":
        w = omega_to_word(omega)
        if not self.admissible(w):
            return self.element()
        return self.element({w: Fraction(1)})

    def reduce(self, combo, rng=None) -> "AlgebraElement":
        return self.element(reduce_words(combo, self.n, self.shape, self.params, rng))


@lru_cache(maxsize=None)
def algebra(n: int, shape: tuple | None, params: ParamSpec) -> Algebra:
    """Shared Algebra instances, so that insertion caches are reused."""
    return Algebra(n, shape, params)


class AlgebraElement:
    """A finite combination of normal admissible words with exact coefficients."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: Algebra, terms: Mapping[Word, Fraction]):
        self.alg = alg
        clean = {}
        for w, c in terms.items():
            c = to_scalar(c)
            if not c:
                continue
            w = tuple(w)
            if not is_normal(w):
                raise ValueError(f"word {w} is not normal; use Algebra.reduce")
            if not alg.admissible(w):
                raise InvalidShape(f"word {w} uses a killed generator")
            clean[w] = c
        self.terms = clean

    @property
    def n(self):
        return self.alg.n

    @property
    def shape(self):
        return self.alg.shape

    def _check(self, other: "AlgebraElement"):
        if self.alg != other.alg:
            raise ShapeMismatch(f"{self.alg!r} vs {other.alg!r}")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(self.alg, vadd_into(dict(self.terms), other.terms))

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(self.alg, vadd_into(dict(self.terms), other.terms, -1))

    def __neg__(self):
        return AlgebraElement(self.alg, {w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        s = to_scalar(other)
        return AlgebraElement(self.alg, {w: s * c for w, c in self.terms.items()})

    def __rmul__(self, other):
        s = to_scalar(other)
        return AlgebraElement(self.alg, {w: s * c for w, c in self.terms.items()})

    def __pow__(self, k: int):
        out = self.alg.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.alg == other.alg and self.terms == other.terms

    def __hash__(self):
        return hash((self.alg, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def leading(self) -> tuple[Word, Fraction]:
        w = max(self.terms, key=word_key)
        return w, self.terms[w]

    def degrees(self) -> set[int]:
        return {len(w) for w in self.terms}

    def __repr__(self):
        return f"AlgebraElement({self})"

    def __str__(self):
        return format_terms(self.terms)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "shape": list(self.shape) if self.shape is not None else None,
            "terms": [
                {"omega": [list(r) for r in word_to_omega(w, self.n)], "coeff": fmt_scalar(c)}
                for w, c in sorted(self.terms.items(), key=lambda t: word_key(t[0]))
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping, params: ParamSpec) -> "AlgebraElement":
        n = int(data["n"])
        shape = tuple(data["shape"]) if data.get("shape") is not None else None
        alg = algebra(n, check_shape(n, shape), params)
        terms = {omega_to_word(t["omega"]): to_scalar(t["coeff"]) for t in data["terms"]}
        return cls(alg, terms)


def format_word(w: Word) -> str:
    if not w:
        return "1"
    parts = []
    k = 0
    while k < len(w):
        g = w[k]
        e = 1
        while k + e < len(w) and w[k + e] == g:
            e += 1
        parts.append(f"c{g[0]}{g[1]}" + (f"^{e}" if e > 1 else ""))
        k += e
    return "*".join(parts)


def format_terms(terms: Mapping[Word, Fraction]) -> str:
    if not terms:
        return "0"
    out = ""
    for w, c in sorted(terms.items(), key=lambda t: word_key(t[0])):
        sign, a = ("-", -c) if c < 0 else ("+", c)
        if not w:
            s = fmt_scalar(a)
        elif a == 1:
            s = format_word(w)
        elif a.denominator == 1:
            s = f"{a}*{format_word(w)}"
        else:
            s = f"({a})*{format_word(w)}"
        if not out:
            out = s if sign == "+" else "-" + s
        else:
            out += f" {sign} {s}"
    return out


def word_to_omega(w: Word, n: int) -> tuple[tuple[int, ...], ...]:
    m = [[0] * n for _ in range(n)]
    for i, j in w:
        m[i - 1][j - 1] += 1
    return tuple(tuple(r) for r in m)


def omega_to_word(omega) -> Word:
    out = []
    for i, row in enumerate(omega, start=1):
        for j, e in enumerate(row, start=1):
            if e < 0:
                raise ValueError("exponents must be natural numbers")
            out.extend([(i, j)] * e)
    return tuple(out)


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    a._check(b)
    alg = a.alg
    out: dict[Word, Fraction] = {}
    for w1, c1 in a.terms.items():
        for w2, c2 in b.terms.items():
            vadd_into(out, alg.mul_words(w1, w2), c1 * c2)
    return AlgebraElement(alg, out)


def reduce(combo, n: int, b=None, params: ParamSpec | None = None, rng=None) -> AlgebraElement:
    """Normal form of a combination of arbitrary words by generic rewriting."""
    params = params or ParamSpec()
    b = check_shape(n, b)
    return algebra(n, b, params).reduce(combo, rng)


@dataclass
class DiamondReport:
    n: int
    shape: tuple | None
    params: ParamSpec
    checked: int
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "shape": list(self.shape) if self.shape else None,
            "alpha": fmt_scalar(self.params.alpha),
            "beta": fmt_scalar(self.params.beta),
            "ambiguities": self.checked,
            "status": "pass" if self.passed else "fail",
            "failures": [
                {"word": [list(g) for g in w], "left": format_terms(x), "right": format_terms(y)}
                for w, x, y in self.failures
            ],
        }


def check_diamond(n: int, b: Sequence[int] | None = None, params: ParamSpec | None = None) -> DiamondReport:
    """Resolve every overlap ambiguity of the rewrite system both ways.

    Quadratic overlaps are the strictly decreasing triples ``u v w``; the
    monomial rules overlap the quadratic ones on decreasing pairs that use a
    killed generator. Each ambiguity is rewritten first on the left and then
    on the right, and both results are fully reduced with the generic
    rewriter.
    """
    params = params or ParamSpec()
    b = check_shape(n, b)
    gens = generators(n)
    failures = []
    checked = 0

    def nf(combo):
        return reduce_words(combo, n, b, params)

    for u in gens:
        for v in gens:
            if not u > v:
                continue
            for w in gens:
                if not v > w:
                    continue
                checked += 1
                left = {}
                for c, x, y in swap_rule(u, v, params):
                    vadd_into(left, {(x, y, w): c})
                right = {}
                for c, x, y in swap_rule(v, w, params):
                    vadd_into(right, {(u, x, y): c})
                lf, rt = nf(left), nf(right)
                if lf != rt:
                    failures.append(((u, v, w), lf, rt))
            if b is not None and (killed(u, b) or killed(v, b)):
                checked += 1
                # killing then reducing gives 0; swapping first must as well
                swapped = {}
                for c, x, y in swap_rule(u, v, params):
                    vadd_into(swapped, {(x, y): c})
                rt = nf(swapped)
                if rt:
                    failures.append(((u, v), {}, rt))
    failures.sort(key=lambda f: f[0])
    return DiamondReport(n, b, params, checked, failures)


def basis(n: int, b: Sequence[int] | None, r: int) -> list[Word]:
    """Normal admissible words of degree r, ascending in word order."""
    b = check_shape(n, b)
    if r < 0:
        return []
    return list(combinations_with_replacement(allowed_generators(n, b), r))


def basis_omegas(n: int, b, r: int) -> list[tuple[tuple[int, ...], ...]]:
    return [word_to_omega(w, n) for w in basis(n, b, r)]


def project(x: AlgebraElement, target: Sequence[int]) -> AlgebraElement:
    """Image under the canonical surjection onto A(target)."""
    n = x.n
    t = check_shape(n, target)
    src = x.shape
    if src is not None and any(t[k] > src[k] for k in range(n)):
        raise InvalidShape(f"cannot project A({src}) onto A({t})")
    alg = algebra(n, t, x.alg.params)
    return AlgebraElement(alg, {w: c for w, c in x.terms.items() if alg.admissible(w)})


def inversions(perm: Sequence[int]) -> int:
    return sum(1 for a in range(len(perm)) for c in range(a + 1, len(perm)) if perm[a] > perm[c])


def determinant_row_form(n: int, params: ParamSpec, shape=None) -> AlgebraElement:
    alg = algebra(n, check_shape(n, shape), params)
    out: dict[Word, Fraction] = {}
    for perm in permutations(range(1, n + 1)):
        c = (-params.alpha) ** (-inversions(perm))
        vadd_into(out, alg.word_nf((k, perm[k - 1]) for k in range(1, n + 1)), c)
    return AlgebraElement(alg, out)


def determinant_column_form(n: int, params: ParamSpec, shape=None) -> AlgebraElement:
    alg = algebra(n, check_shape(n, shape), params)
    out: dict[Word, Fraction] = {}
    for perm in permutations(range(1, n + 1)):
        c = (-params.beta) ** (-inversions(perm))
        vadd_into(out, alg.word_nf((perm[k - 1], k) for k in range(1, n + 1)), c)
    return AlgebraElement(alg, out)


def quantum_determinant(n: int, params: ParamSpec | None = None, shape=None) -> AlgebraElement:
    params = params or ParamSpec()
    if n < 1:
        raise ValueError("n must be at least 1")
    row = determinant_row_form(n, params, shape)
    col = determinant_column_form(n, params, shape)
    if row != col:
        raise FormulaMismatch(f"row form {row} differs from column form {col}")
    return row


def determinant_commutation_defects(n: int, params: ParamSpec | None = None, shape=None) -> list[Gen]:
    """Generators violating c_ij d = (alpha^-1 beta)^(i-j) d c_ij."""
    params = params or ParamSpec()
    d = quantum_determinant(n, params, shape)
    alg = d.alg
    bad = []
    for i, j in allowed_generators(n, alg.shape):
        g = alg.gen(i, j)
        if g * d != params.alpha_inv_beta ** (i - j) * (d * g):
            bad.append((i, j))
    return bad
