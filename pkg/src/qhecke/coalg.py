"""Graded coalgebra pieces A(b;r) and the maps built from comultiplication.

Comultiplication is c_ij -> sum_k c_ik (x) c_kj, extended multiplicatively.
An iterated coproduct into k legs is computed letter by letter: each letter
of a normal word is split along every path i = m_0, m_1, ..., m_k = j, and
each leg is multiplied in its own quotient A(t_leg). A leg dies as soon as it
picks up a generator its shape kills.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Mapping, Sequence

from .exactmath import (
    Basis,
    IllDefined,
    InvalidShape,
    LinearMap,
    NonParabolicShape,
    ParamSpec,
    ProductMismatch,
    TensorBasis,
    fmt_scalar,
    vadd_into,
)
from .freealg import (
    AlgebraElement,
    Word,
    algebra,
    basis,
    check_shape,
    format_word,
    killed,
    word_to_omega,
)

# shapes


def delta(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1))


def unit_vector(n: int, l: int) -> tuple[int, ...]:
    return tuple(1 if k == l else 0 for k in range(1, n + 1))


def shape_plus(b: Sequence[int], *ls: int) -> tuple[int, ...]:
    """``b + v_l1 + v_l2 + ...`` with 1-based l."""
    out = list(b)
    for l in ls:
        out[l - 1] += 1
    return tuple(out)


def a_shape(n: int, l: int) -> tuple[int, ...]:
    """The minimal parabolic shape delta + v_l."""
    if not 1 <= l <= n - 1:
        raise InvalidShape(f"index {l} outside 1..{n - 1}")
    return shape_plus(delta(n), l)


def is_parabolic(b: Sequence[int]) -> bool:
    """True iff b is (l1^l1, (l1+l2)^l2, ...) for a composition of n."""
    b = tuple(b)
    n = len(b)
    try:
        check_shape(n, b)
    except InvalidShape:
        return False
    for i, v in enumerate(b, start=1):
        if v < i:
            return False
        if max(j for j in range(1, n + 1) if b[j - 1] == v) != v:
            return False
    return True


def composition_of(b: Sequence[int]) -> tuple[int, ...]:
    if not is_parabolic(b):
        raise NonParabolicShape(f"{tuple(b)} is not parabolic")
    parts, prev = [], 0
    for v in sorted(set(b)):
        parts.append(v - prev)
        prev = v
    return tuple(parts)


def require_parabolic(b):
    if b is not None and not is_parabolic(b):
        raise NonParabolicShape(f"shape {tuple(b)} is not parabolic; comultiplication does not descend")


def leq(b1: Sequence[int], b2: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(b1, b2))


# iterated coproducts


TensorTerms = dict  # {(word_1, ..., word_k): Fraction}


def comultiply_word(w: Word, legs: Sequence, n: int, params: ParamSpec) -> TensorTerms:
    """Iterated coproduct of a word, each leg reduced in A(legs[t])."""
    legs = tuple(legs)
    k = len(legs)
    algs = [algebra(n, leg, params) for leg in legs]
    cur: TensorTerms = {((),) * k: Fraction(1)}
    for i, j in w:
        paths = []
        for mids in product(range(1, n + 1), repeat=k - 1):
            route = (i,) + mids + (j,)
            letters = tuple((route[t], route[t + 1]) for t in range(k))
            if any(killed(letters[t], legs[t]) for t in range(k)):
                continue
            paths.append(letters)
        nxt: TensorTerms = {}
        for words, c in cur.items():
            for letters in paths:
                acc = [((), c)]
                for t in range(k):
                    ins = algs[t].insert(words[t], letters[t])
                    if not ins:
                        acc = []
                        break
                    acc = [(pre + (w2,), c0 * c2) for pre, c0 in acc for w2, c2 in ins.items()]
                for key, val in acc:
                    vadd_into(nxt, {key: val})
        cur = nxt
    return cur


def comultiply(x: AlgebraElement, legs: Sequence | None = None, k: int = 2) -> TensorTerms:
    """Coproduct (or iterated coproduct) of an element.

    By default both legs carry the shape of ``x``, which must be parabolic.
    """
    if legs is None:
        require_parabolic(x.shape)
        legs = (x.shape,) * k
    for leg in legs:
        check_shape(x.n, leg)
    out: TensorTerms = {}
    for w, c in x.terms.items():
        vadd_into(out, comultiply_word(w, legs, x.n, x.alg.params), c)
    return out


def counit_word(w: Word) -> Fraction:
    return Fraction(1) if all(i == j for i, j in w) else Fraction(0)


def counit(x: AlgebraElement) -> Fraction:
    return sum((c * counit_word(w) for w, c in x.terms.items()), Fraction(0))


def format_tensor(terms: TensorTerms) -> str:
    if not terms:
        return "0"
    parts = []
    for key, c in sorted(terms.items()):
        body = " ⊗ ".join(format_word(w) for w in key)
        parts.append(body if c == 1 else f"({fmt_scalar(c)}) {body}")
    return " + ".join(parts)


def leg_map(n: int, source, legs: Sequence, r: int, params: ParamSpec, verify: bool = True) -> list[dict]:
    """Columns of x -> (proj (x) ... (x) proj) coproduct(lift x) on A(source;r).

    Each column is keyed by tuples of leg basis indices. With ``verify`` the
    same composite is applied to every normal word of degree r that the
    source shape kills, and IllDefined is raised unless all of them vanish.
    """
    legs = tuple(check_shape(n, leg) for leg in legs)
    source = check_shape(n, source)
    leg_index = [{w: i for i, w in enumerate(basis(n, leg, r))} for leg in legs]
    cols = []
    for w in basis(n, source, r):
        terms = comultiply_word(w, legs, n, params)
        cols.append({tuple(leg_index[t][key[t]] for t in range(len(legs))): c for key, c in terms.items()})
    if verify and source is not None:
        for w in basis(n, None, r):
            if any(killed(g, source) for g in w):
                if comultiply_word(w, legs, n, params):
                    raise IllDefined(f"map on A({source};{r}) does not kill {format_word(w)}")
    return cols


@dataclass(eq=False)
class GradedCoalgebra:
    """A(b;r) with its basis of normal words and structure constants."""

    n: int
    shape: tuple[int, ...] | None
    r: int
    params: ParamSpec
    words: tuple
    delta: tuple  # delta[k] = {(i, j): coeff}
    eps: tuple

    def __post_init__(self):
        self.index = {w: i for i, w in enumerate(self.words)}
        self.basis = Basis(self.words, name=self.name)

    @property
    def name(self) -> str:
        s = "none" if self.shape is None else ",".join(map(str, self.shape))
        return f"A(n={self.n};b={s};r={self.r})"

    @property
    def dim(self) -> int:
        return len(self.words)

    @property
    def algebra(self):
        return algebra(self.n, self.shape, self.params)

    def omegas(self):
        return [word_to_omega(w, self.n) for w in self.words]

    def element(self, vec: Mapping[int, Fraction]) -> AlgebraElement:
        return self.algebra.element({self.words[k]: c for k, c in vec.items()})

    def vector(self, x: AlgebraElement) -> dict[int, Fraction]:
        return {self.index[w]: c for w, c in x.terms.items()}

    def label(self, k: int) -> str:
        return format_word(self.words[k])

    def coassociativity_defect(self) -> dict:
        """(Δ⊗id)Δ − (id⊗Δ)Δ summed over the basis; empty means coassociative."""
        bad = {}
        for k in range(self.dim):
            lhs: dict = {}
            rhs: dict = {}
            for (i, j), c in self.delta[k].items():
                for (a, b), d in self.delta[i].items():
                    vadd_into(lhs, {(a, b, j): c * d})
                for (a, b), d in self.delta[j].items():
                    vadd_into(rhs, {(i, a, b): c * d})
            diff = vadd_into(lhs, rhs, -1)
            if diff:
                bad[k] = diff
        return bad

    def counit_ok(self) -> bool:
        for k in range(self.dim):
            left: dict = {}
            right: dict = {}
            for (i, j), c in self.delta[k].items():
                vadd_into(left, {j: c * self.eps[i]})
                vadd_into(right, {i: c * self.eps[j]})
            if left != {k: 1} or right != {k: 1}:
                return False
        return True

    def validate(self) -> bool:
        return not self.coassociativity_defect() and self.counit_ok()

    def comultiply_vector(self, vec: Mapping[int, Fraction]) -> dict:
        out: dict = {}
        for k, c in vec.items():
            vadd_into(out, self.delta[k], c)
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "shape": list(self.shape) if self.shape is not None else None,
            "r": self.r,
            "basis": [[list(row) for row in om] for om in self.omegas()],
            "delta": [[k, i, j, fmt_scalar(c)] for k in range(self.dim) for (i, j), c in sorted(self.delta[k].items())],
            "counit": [fmt_scalar(e) for e in self.eps],
        }


@lru_cache(maxsize=None)
def _graded_coalgebra(n: int, shape, r: int, params: ParamSpec) -> GradedCoalgebra:
    words = tuple(basis(n, shape, r))
    cols = leg_map(n, shape, (shape, shape), r, params, verify=True)
    eps = tuple(counit_word(w) for w in words)
    gc = GradedCoalgebra(n, shape, r, params, words, tuple(cols), eps)
    if not gc.validate():
        raise IllDefined(f"{gc.name} fails the coalgebra axioms")
    return gc


def graded_coalgebra(n: int, b: Sequence[int] | None, r: int, params: ParamSpec | None = None) -> GradedCoalgebra:
    params = params or ParamSpec()
    b = check_shape(n, b)
    require_parabolic(b)
    return _graded_coalgebra(n, b, r, params)


def multi_projection(b: Sequence[int], targets: Sequence[Sequence[int]], r: int, params: ParamSpec | None = None) -> LinearMap:
    """The map A(b;r) -> A(t1;r) (x) ... (x) A(tk;r) induced by the coproduct."""
    params = params or ParamSpec()
    n = len(b)
    b = check_shape(n, b)
    require_parabolic(b)
    if not targets:
        raise ValueError("at least one target shape is needed")
    ts = []
    d = delta(n)
    for t in targets:
        t = check_shape(n, t)
        require_parabolic(t)
        if not (leq(t, b) and leq(d, t)):
            raise InvalidShape(f"target {t} must satisfy delta <= t <= {b}")
        ts.append(t)
    cols = leg_map(n, b, ts, r, params, verify=True)
    dom = graded_coalgebra(n, b, r, params).basis
    factors = [graded_coalgebra(n, t, r, params).basis for t in ts]
    cod = TensorBasis(factors)
    return LinearMap(dom, cod, [{cod.index(key): c for key, c in col.items()} for col in cols])


def jw(omega) -> int:
    """Sum over i<j, s<t of omega[i][t] * omega[j][s]."""
    n = len(omega)
    total = 0
    for i in range(n):
        for j in range(i + 1, n):
            for s in range(n):
                for t in range(s + 1, n):
                    total += omega[i][t] * omega[j][s]
    return total


def param_iso(x: AlgebraElement, frm: ParamSpec, to: ParamSpec) -> AlgebraElement:
    """Rescale c^omega by (alpha/alpha')^J(omega); a coalgebra isomorphism."""
    if x.alg.params != frm:
        raise ValueError("element does not live at the source parameters")
    if frm.alpha * frm.beta != to.alpha * to.beta:
        raise ProductMismatch(f"alpha*beta differs: {frm.alpha * frm.beta} vs {to.alpha * to.beta}")
    ratio = frm.alpha / to.alpha
    alg = algebra(x.n, x.shape, to)
    return alg.element({w: c * ratio ** jw(word_to_omega(w, x.n)) for w, c in x.terms.items()})


def param_scale(w: Word, n: int, frm: ParamSpec, to: ParamSpec) -> Fraction:
    return (frm.alpha / to.alpha) ** jw(word_to_omega(w, n))


def torus_projection(x: AlgebraElement) -> dict[tuple[int, ...], Fraction]:
    """Keep the purely diagonal monomials, indexed by their exponent vectors."""
    out: dict[tuple[int, ...], Fraction] = {}
    for w, c in x.terms.items():
        if all(i == j for i, j in w):
            a = [0] * x.n
            for i, _ in w:
                a[i - 1] += 1
            vadd_into(out, {tuple(a): c})
    return out


def diagonal_word(a: Sequence[int]) -> Word:
    return tuple((i, i) for i, e in enumerate(a, start=1) for _ in range(e))


def word_weight(w: Word, n: int, side: str = "right") -> tuple[int, ...]:
    """Torus weight of c^omega: column sums on the right, row sums on the left."""
    a = [0] * n
    for i, j in w:
        a[(j if side == "right" else i) - 1] += 1
    return tuple(a)


def is_grouplike(x: AlgebraElement) -> bool:
    """Delta(x) = x (x) x."""
    square: TensorTerms = {}
    for w1, c1 in x.terms.items():
        for w2, c2 in x.terms.items():
            square[(w1, w2)] = c1 * c2
    return comultiply(x) == square
