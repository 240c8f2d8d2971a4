"""Finite-dimensional comodules over graded coalgebra pieces.

A right comodule stores, for every basis vector m_p, its coaction as a dict
``{(q, k): coeff}`` meaning rho(m_p) = sum coeff m_q (x) c_k, where k indexes
the coalgebra basis. A left comodule stores ``{(k, q): coeff}`` for
lambda(n_q') = sum coeff c_k (x) n_q.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .charpoly import CharPoly
from .coalg import (
    GradedCoalgebra,
    a_shape,
    delta,
    diagonal_word,
    graded_coalgebra,
    leg_map,
    unit_vector,
)
from .exactmath import (
    Basis,
    DegreeMismatch,
    HypothesisViolated,
    LinearMap,
    NotDiagonalizable,
    NotInvertible,
    ParamSpec,
    ShapeMismatch,
    Subspace,
    fmt_scalar,
    invert,
    nullspace,
    rank,
    to_scalar,
    vadd_into,
)
from .freealg import basis, check_shape, format_word, word_to_omega

_uid = itertools.count()


@dataclass(eq=False)
class Comodule:
    coalgebra: GradedCoalgebra
    coaction: tuple
    side: str = "right"
    labels: tuple | None = None
    name: str = ""
    # set on comodules produced by induction: the parent comodule, the letter
    # applied and the cotensor subspace of parent (x) A(a[letter]) (keys (p, s))
    parent: "Comodule | None" = None
    letter: int | None = None
    subspace: Subspace | None = None
    uid: int = field(default_factory=lambda: next(_uid))
    cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.side not in ("right", "left"):
            raise ValueError("side must be 'right' or 'left'")
        self.coaction = tuple({k: to_scalar(v) for k, v in row.items() if v} for row in self.coaction)
        if self.labels is None:
            self.labels = tuple(f"m{p}" for p in range(len(self.coaction)))

    @property
    def dim(self) -> int:
        return len(self.coaction)

    @property
    def basis(self) -> Basis:
        return Basis([(self.uid, p) for p in range(self.dim)], name=self.name or f"comodule#{self.uid}")

    @property
    def n(self) -> int:
        return self.coalgebra.n

    @property
    def r(self) -> int:
        return self.coalgebra.r

    def __repr__(self):
        return f"Comodule({self.name or self.uid}, dim={self.dim}, over {self.coalgebra.name})"

    def apply_coaction(self, vec: Mapping[int, Fraction]) -> dict:
        out: dict = {}
        for p, c in vec.items():
            vadd_into(out, self.coaction[p], c)
        return out

    def describe(self) -> list[str]:
        C = self.coalgebra
        long = any(" " in x for x in self.labels)
        names = [f"m{p}" for p in range(self.dim)] if long else list(self.labels)
        lines = [f"{names[p]} = {x}" for p, x in enumerate(self.labels)] if long else []
        for p, row in enumerate(self.coaction):
            out = ""
            for key, c in sorted(row.items()):
                q, k = key if self.side == "right" else (key[1], key[0])
                pre = "" if abs(c) == 1 else f"({fmt_scalar(abs(c))}) "
                body = f"{names[q]} ⊗ {C.label(k)}" if self.side == "right" else f"{C.label(k)} ⊗ {names[q]}"
                if not out:
                    out = ("-" if c < 0 else "") + pre + body
                else:
                    out += (" - " if c < 0 else " + ") + pre + body
            lines.append(f"rho({names[p]}) = " + (out or "0"))
        return lines

    def to_json(self) -> dict:
        C = self.coalgebra
        rows = []
        for row in self.coaction:
            entries = []
            for key, c in sorted(row.items()):
                q, k = key if self.side == "right" else (key[1], key[0])
                entries.append({"basis": q, "coalg": k, "coeff": fmt_scalar(c)})
            rows.append(entries)
        return {
            "coalgebra": {"n": C.n, "shape": list(C.shape) if C.shape else None, "r": C.r},
            "side": self.side,
            "dim": self.dim,
            "coaction": rows,
        }

    @classmethod
    def from_json(cls, data: Mapping, params: ParamSpec) -> "Comodule":
        c = data["coalgebra"]
        C = graded_coalgebra(int(c["n"]), tuple(c["shape"]) if c["shape"] else None, int(c["r"]), params)
        side = data.get("side", "right")
        coaction = []
        for entries in data["coaction"]:
            row = {}
            for e in entries:
                key = (e["basis"], e["coalg"]) if side == "right" else (e["coalg"], e["basis"])
                row[key] = to_scalar(e["coeff"])
            coaction.append(row)
        if len(coaction) != int(data["dim"]):
            raise ValueError("dim does not match the number of coaction rows")
        return cls(C, tuple(coaction), side=side)


def coaction_defects(M: Comodule) -> list[str]:
    C = M.coalgebra
    bad = []
    for p in range(M.dim):
        lhs: dict = {}
        rhs: dict = {}
        unit: dict = {}
        for key, c in M.coaction[p].items():
            if M.side == "right":
                q, k = key
                for (q2, k2), d in M.coaction[q].items():
                    vadd_into(lhs, {(q2, k2, k): c * d})
                for (k1, k2), d in C.delta[k].items():
                    vadd_into(rhs, {(q, k1, k2): c * d})
                vadd_into(unit, {q: c * C.eps[k]})
            else:
                k, q = key
                for (k2, q2), d in M.coaction[q].items():
                    vadd_into(lhs, {(k, k2, q2): c * d})
                for (k1, k2), d in C.delta[k].items():
                    vadd_into(rhs, {(k1, k2, q): c * d})
                vadd_into(unit, {q: c * C.eps[k]})
        if lhs != rhs:
            bad.append(f"coassociativity fails on basis vector {p}")
        if unit != {p: 1}:
            bad.append(f"counit fails on basis vector {p}")
    return bad


def validate(M: Comodule) -> bool:
    """True iff the comodule axioms hold exactly."""
    return not coaction_defects(M)


def _checked(M: Comodule) -> Comodule:
    bad = coaction_defects(M)
    if bad:
        raise ValueError(f"{M!r} is not a comodule: {bad[0]}")
    return M


def one_dim(a: Sequence[int], C: GradedCoalgebra) -> Comodule:
    """k_a: the line on which the coalgebra acts through c11^a1 ... cnn^an."""
    a = tuple(int(x) for x in a)
    if len(a) != C.n or any(x < 0 for x in a):
        raise ValueError(f"bad weight {a}")
    if sum(a) != C.r:
        raise DegreeMismatch(f"|{a}| = {sum(a)} but the coalgebra has degree {C.r}")
    k = C.index[diagonal_word(a)]
    return Comodule(C, ({(0, k): Fraction(1)},), labels=("1",), name=f"k{a}")


def weight_module(a: Sequence[int], params: ParamSpec | None = None) -> Comodule:
    """k_a over A(delta; |a|)."""
    params = params or ParamSpec()
    a = tuple(a)
    return one_dim(a, graded_coalgebra(len(a), delta(len(a)), sum(a), params))


def regular(C: GradedCoalgebra, side: str = "right") -> Comodule:
    if side == "right":
        rows = tuple(dict(C.delta[k]) for k in range(C.dim))
    else:
        rows = tuple({(i, j): c for (i, j), c in C.delta[k].items()} for k in range(C.dim))
    labels = tuple(C.label(k) for k in range(C.dim))
    return Comodule(C, rows, side=side, labels=labels, name=f"{C.name} regular")


def shaped_coaction(b, over, r: int, params: ParamSpec, side: str) -> Comodule:
    """A(b;r) as a comodule over A(over;r) through the coproduct.

    The right coaction is [x]_b -> sum [x1]_b (x) [x2]_over and the left one
    is [x]_b -> sum [x1]_over (x) [x2]_b. Well-definedness is verified by
    checking that the composite kills every monomial outside A(b).
    """
    n = len(over)
    b = check_shape(n, b)
    C = graded_coalgebra(n, over, r, params)
    legs = (b, over) if side == "right" else (over, b)
    cols = leg_map(n, b, legs, r, params, verify=True)
    words = basis(n, b, r)
    labels = tuple(format_word(w) for w in words)
    s = ",".join(map(str, b))
    return _checked(Comodule(C, tuple(cols), side=side, labels=labels, name=f"A({s};{r})"))


def left_coaction(b, over, r: int, params: ParamSpec | None = None) -> Comodule:
    params = params or ParamSpec()
    n = len(over)
    over = tuple(over)
    for l in range(1, n):
        if over == a_shape(n, l) and l in tuple(b):
            raise HypothesisViolated(f"shape {tuple(b)} has a component equal to {l}")
    return shaped_coaction(b, over, r, params, "left")


def right_coaction(b, over, r: int, params: ParamSpec | None = None) -> Comodule:
    params = params or ParamSpec()
    return shaped_coaction(b, tuple(over), r, params, "right")


def direct_sum(M: Comodule, N: Comodule) -> Comodule:
    if M.coalgebra is not N.coalgebra or M.side != N.side:
        raise ShapeMismatch("summands live over different coalgebras")
    shift = M.dim
    rows = list(M.coaction)
    for row in N.coaction:
        if N.side == "right":
            rows.append({(q + shift, k): c for (q, k), c in row.items()})
        else:
            rows.append({(k, q + shift): c for (k, q), c in row.items()})
    return Comodule(M.coalgebra, tuple(rows), side=M.side, labels=M.labels + N.labels, name=f"({M.name} ⊕ {N.name})")


def restrict(M: Comodule, shape) -> Comodule:
    """Corestrict a right comodule along the projection A(b;r) -> A(shape;r)."""
    C = M.coalgebra
    D = graded_coalgebra(C.n, shape, C.r, C.params)
    rows = []
    for row in M.coaction:
        out = {}
        for (q, k), c in row.items():
            j = D.index.get(C.words[k])
            if j is not None:
                vadd_into(out, {(q, j): c})
        rows.append(out)
    return _checked(Comodule(D, tuple(rows), labels=M.labels, name=f"{M.name}|{D.name}"))


def tensor(M: Comodule, N: Comodule) -> Comodule:
    """Right comodule M (x) N with coaction m (x) n -> m0 (x) n0 (x) m1 n1."""
    C, D = M.coalgebra, N.coalgebra
    if (C.n, C.shape, C.params) != (D.n, D.shape, D.params):
        raise ShapeMismatch(f"{C.name} and {D.name} do not share a shape")
    if M.side != "right" or N.side != "right":
        raise ValueError("tensor expects right comodules")
    E = graded_coalgebra(C.n, C.shape, C.r + D.r, C.params)
    alg = C.algebra
    prods: dict = {}
    rows = []
    for p in range(M.dim):
        for s in range(N.dim):
            out: dict = {}
            for (q, k), c in M.coaction[p].items():
                for (t, l), d in N.coaction[s].items():
                    key = (k, l)
                    if key not in prods:
                        prods[key] = alg.mul_words(C.words[k], D.words[l])
                    for w, e in prods[key].items():
                        vadd_into(out, {(q * N.dim + t, E.index[w]): c * d * e})
            rows.append(out)
    labels = tuple(f"{x}⊗{y}" for x in M.labels for y in N.labels)
    return _checked(Comodule(E, tuple(rows), labels=labels, name=f"{M.name}⊗{N.name}"))


@dataclass
class Cotensor:
    """M box_C N as a subspace of M (x) N, with keys (p, s)."""

    source_dims: tuple
    subspace: Subspace
    comodule: Comodule | None

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def embedding(self) -> LinearMap:
        m, nn = self.source_dims
        dom = Basis(range(self.dim), name="cotensor")
        cod = Basis(itertools.product(range(m), range(nn)), name="M⊗N")
        return LinearMap(dom, cod, [{p * nn + s: c for (p, s), c in row.items()} for row in self.subspace.rows])


def cotensor_subspace(M: Comodule, N: Comodule) -> Subspace:
    """Kernel of rho_M (x) id - id (x) lambda_N on M (x) N."""
    if M.side != "right" or N.side != "left":
        raise ValueError("cotensor needs a right comodule and a left comodule")
    if M.coalgebra is not N.coalgebra:
        C, D = M.coalgebra, N.coalgebra
        if (C.n, C.shape, C.r, C.params) != (D.n, D.shape, D.r, D.params):
            raise ShapeMismatch("comodules live over different coalgebras")
    eqs: dict = {}
    for p in range(M.dim):
        for s in range(N.dim):
            for (q, k), c in M.coaction[p].items():
                eqs.setdefault((q, k, s), {})
                vadd_into(eqs[(q, k, s)], {(p, s): c})
            for (k, t), c in N.coaction[s].items():
                eqs.setdefault((p, k, t), {})
                vadd_into(eqs[(p, k, t)], {(p, s): -c})
    unknowns = [(p, s) for p in range(M.dim) for s in range(N.dim)]
    rows = nullspace((e for e in eqs.values() if e), unknowns)
    return Subspace.span(rows)


def induced_coaction(X: Subspace, N_right: Comodule) -> tuple:
    """Restrict id (x) rho_N to the subspace X of M (x) N."""
    rows = []
    for z in X.rows:
        slices: dict = {}
        for (p, s), c in z.items():
            for (t, k), d in N_right.coaction[s].items():
                sl = slices.setdefault(k, {})
                vadd_into(sl, {(p, t): c * d})
        out = {}
        for k, sl in slices.items():
            if not sl:
                continue
            for u, e in X.coords(sl).items():
                out[(u, k)] = e
        rows.append(out)
    return tuple(rows)


def cotensor(M: Comodule, N: Comodule, N_right: Comodule | None = None, name: str = "") -> Cotensor:
    X = cotensor_subspace(M, N)
    comodule = None
    if N_right is not None:
        if N_right.dim != N.dim or N_right.side != "right":
            raise ValueError("the right structure must live on the same space as N")
        coaction = induced_coaction(X, N_right)
        comodule = _checked(Comodule(N_right.coalgebra, coaction, name=name or f"{M.name}□{N.name}"))
    return Cotensor((M.dim, N.dim), X, comodule)


# comodule maps


@dataclass(eq=False)
class ComoduleMap:
    source: Comodule
    target: Comodule
    matrix: LinearMap

    def __post_init__(self):
        if self.matrix.cols != self.source.dim or self.matrix.rows != self.target.dim:
            raise ValueError("matrix size does not match the comodules")
        self.matrix = LinearMap(self.source.basis, self.target.basis, self.matrix.columns)

    def intertwines(self) -> bool:
        S, T, f = self.source, self.target, self.matrix
        if S.side != "right" or T.side != "right":
            raise ValueError("only right comodule maps are supported")
        for p in range(S.dim):
            lhs: dict = {}
            for q, c in f.columns[p].items():
                vadd_into(lhs, T.coaction[q], c)
            rhs: dict = {}
            for (q, k), c in S.coaction[p].items():
                for t, d in f.columns[q].items():
                    vadd_into(rhs, {(t, k): c * d})
            if lhs != rhs:
                return False
        return True

    def compose(self, inner: "ComoduleMap") -> "ComoduleMap":
        if inner.target is not self.source:
            raise ValueError("maps are not composable")
        return ComoduleMap(inner.source, self.target, self.matrix.compose(inner.matrix))

    def inverse(self) -> "ComoduleMap":
        return ComoduleMap(self.target, self.source, invert(self.matrix))

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and rank(self.matrix) == self.source.dim

    def rank(self) -> int:
        return rank(self.matrix)

    def equals(self, other: "ComoduleMap") -> bool:
        return self.source is other.source and self.target is other.target and self.matrix.columns == other.matrix.columns


def identity_map(M: Comodule) -> ComoduleMap:
    return ComoduleMap(M, M, LinearMap.identity(M.basis))


def zero_map(M: Comodule, N: Comodule) -> ComoduleMap:
    return ComoduleMap(M, N, LinearMap.zero(M.basis, N.basis))


def hom_space(M: Comodule, N: Comodule) -> list[LinearMap]:
    """Basis of the space of comodule maps M -> N."""
    if M.coalgebra is not N.coalgebra and M.coalgebra.words != N.coalgebra.words:
        raise ShapeMismatch("comodules over different coalgebras")
    eqs: dict = {}
    # rho_N(phi m_p) = (phi (x) id) rho_M(m_p); unknown phi[t, p] keyed (p, t)
    for p in range(M.dim):
        for t in range(N.dim):
            for (t2, k), c in N.coaction[t].items():
                vadd_into(eqs.setdefault((p, t2, k), {}), {(p, t): c})
        for (q, k), c in M.coaction[p].items():
            for t2 in range(N.dim):
                vadd_into(eqs.setdefault((p, t2, k), {}), {(q, t2): -c})
    unknowns = [(p, t) for p in range(M.dim) for t in range(N.dim)]
    sols = nullspace((e for e in eqs.values() if e), unknowns)
    out = []
    for v in sols:
        cols = [{} for _ in range(M.dim)]
        for (p, t), c in v.items():
            cols[p][t] = c
        out.append(LinearMap(M.basis, N.basis, cols))
    return out


def find_isomorphism(M: Comodule, N: Comodule, tries: int = 30, seed: int = 0) -> ComoduleMap | None:
    """An invertible comodule map M -> N, or None if none was found.

    A generic member of the Hom space is invertible whenever any member is,
    so a handful of seeded random integer combinations suffices.
    """
    if M.dim != N.dim:
        return None
    if M.dim == 0:
        return ComoduleMap(M, N, LinearMap.zero(M.basis, N.basis))
    homs = hom_space(M, N)
    if not homs:
        return None
    rng = random.Random(seed)
    candidates = list(homs)
    for _ in range(tries):
        combo = homs[0].scale(0)
        for h in homs:
            combo = combo + h.scale(rng.randint(-9, 9))
        candidates.append(combo)
    for cand in candidates:
        if rank(cand) == M.dim:
            return ComoduleMap(M, N, cand)
    return None


def transport(M: Comodule, new_basis: Sequence[Mapping[int, Fraction]], labels=None) -> Comodule:
    """The same comodule written in another basis (columns in old coordinates)."""
    m = M.dim
    P = LinearMap(M.basis, M.basis, [dict(v) for v in new_basis]) if len(new_basis) == m else None
    if P is None:
        raise NotInvertible("new basis has the wrong size")
    Pinv = invert(P)
    rows = []
    for v in P.columns:
        rho = M.apply_coaction(v)
        out: dict = {}
        for (q, k), c in rho.items():
            for j, d in Pinv.columns[q].items():
                vadd_into(out, {(j, k): c * d})
        rows.append(out)
    return _checked(Comodule(M.coalgebra, tuple(rows), labels=labels, name=M.name))


# weights and characters


def torus_matrix(M: Comodule) -> dict:
    """Projected coaction: {p: {(q, weight): coeff}} keeping diagonal terms."""
    C = M.coalgebra
    weights = {}
    for k, w in enumerate(C.words):
        if all(i == j for i, j in w):
            a = [0] * C.n
            for i, _ in w:
                a[i - 1] += 1
            weights[k] = tuple(a)
    out = {}
    for p, row in enumerate(M.coaction):
        out[p] = {(q, weights[k]): c for (q, k), c in row.items() if k in weights}
    return out


def weight_decompose(M: Comodule) -> dict[tuple[int, ...], list[dict]]:
    """Weight spaces of a right A(delta;r)-comodule, as echelonised vectors."""
    if M.coalgebra.shape != delta(M.n):
        raise ShapeMismatch("weights are defined for comodules over A(delta;r)")
    T = torus_matrix(M)
    fast = {}
    for p, row in T.items():
        if len(row) == 1:
            (q, a), c = next(iter(row.items()))
            if q == p and c == 1:
                fast.setdefault(a, []).append({p: Fraction(1)})
                continue
        break
    else:
        return dict(sorted(fast.items(), reverse=True))
    candidates = sorted({a for row in T.values() for (_, a) in row}, reverse=True)
    out = {}
    total = 0
    for a in candidates:
        eqs: dict = {}
        for p, row in T.items():
            for (q, b), c in row.items():
                vadd_into(eqs.setdefault((q, b), {}), {p: c})
            vadd_into(eqs.setdefault((p, a), {}), {p: -1})
        sols = nullspace((e for e in eqs.values() if e), range(M.dim))
        if sols:
            out[a] = sols
            total += len(sols)
    if total != M.dim:
        raise NotDiagonalizable(f"weight spaces span {total} of {M.dim} dimensions")
    return out


def weight_basis(M: Comodule) -> tuple[Comodule, list[tuple[int, ...]]]:
    """M rewritten in a basis of weight vectors, plus the weight of each."""
    ws = weight_decompose(M)
    vecs, weights = [], []
    for a, vs in ws.items():
        vecs.extend(vs)
        weights.extend([a] * len(vs))
    return transport(M, vecs), weights


def character(M: Comodule) -> CharPoly:
    return CharPoly(M.n, {a: len(vs) for a, vs in weight_decompose(M).items()})


def weights(M: Comodule) -> list[tuple[int, ...]]:
    return sorted(a for a, vs in weight_decompose(M).items() for _ in vs)


# graded exact sequences


@dataclass
class ExactSequenceReport:
    shape: tuple
    l: int
    r: int
    dims: tuple
    ranks: dict
    checks: dict

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def failed(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def to_json(self) -> dict:
        return {
            "shape": list(self.shape),
            "l": self.l,
            "r": self.r,
            "dims": list(self.dims),
            "ranks": self.ranks,
            "checks": self.checks,
            "status": "pass" if self.passed else "fail",
        }


def check_exact_sequence(b: Sequence[int], l: int, r: int, params: ParamSpec | None = None) -> ExactSequenceReport:
    """Check 0 -> A(b;r-1) (x) k_{v_bl} -> A(b;r) -> A(b - v_l;r) -> 0.

    f is right multiplication by c_{l,b_l} and pi the canonical projection.
    """
    params = params or ParamSpec()
    n = len(b)
    b = check_shape(n, b)
    if not 1 <= l <= n:
        raise ValueError(f"l={l} outside 1..{n}")
    b2 = list(b)
    b2[l - 1] -= 1
    b2 = check_shape(n, b2)
    d = delta(n)
    mid = right_coaction(b, d, r, params)
    right = right_coaction(b2, d, r, params)
    top_words = basis(n, b, r)
    idx = {w: i for i, w in enumerate(top_words)}
    idx2 = {w: i for i, w in enumerate(basis(n, b2, r))}
    if r >= 1:
        left0 = right_coaction(b, d, r - 1, params)
        twist = weight_module(unit_vector(n, b[l - 1]), params)
        left = tensor(left0, twist)
        from .freealg import algebra

        alg = algebra(n, b, params)
        g = (l, b[l - 1])
        fcols = [{idx[w]: c for w, c in alg.mul_words(w0, (g,)).items()} for w0 in basis(n, b, r - 1)]
    else:
        left = None
        fcols = []
    zero_basis = Basis([], name="0")
    f = LinearMap(left.basis if left is not None else zero_basis, mid.basis, fcols)
    pcols = [{idx2[w]: Fraction(1)} if w in idx2 else {} for w in top_words]
    pi = LinearMap(mid.basis, right.basis, pcols)
    rf, rp = rank(f), rank(pi)
    comp = pi.compose(f)
    checks = {
        "f_injective": rf == f.cols,
        "pi_surjective": rp == pi.rows,
        "exact_middle": comp.is_zero() and rf == pi.cols - rp,
        "f_comodule_map": left is None or ComoduleMap(left, mid, f).intertwines(),
        "pi_comodule_map": ComoduleMap(mid, right, pi).intertwines(),
    }
    dims = (f.cols, pi.cols, pi.rows)
    return ExactSequenceReport(b, l, r, dims, {"f": rf, "pi": rp}, checks)


def omega_label(w, n) -> list:
    return [list(r) for r in word_to_omega(w, n)]
