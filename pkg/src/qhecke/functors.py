"""Induction functors F_i, the natural isomorphisms tau, and the diagram checker.

F_i M = M box A(a[i];r), cotensored over A(delta;r), for a right
A(delta;r)-comodule M. Words of functors are written in application order:
``(2, 1)`` means apply F_2 first and then F_1, i.e. F_1 F_2 M. A word applied
to M is realised as a chain of comodules, each remembering its parent and the
cotensor subspace it lives in, so an element of F_{w_k}...F_{w_1} M can be
flattened to a sparse vector on M (x) A[w_1] (x) ... (x) A[w_k] keyed by
``(p, s_1, ..., s_k)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .coalg import a_shape, delta, graded_coalgebra, leg_map, shape_plus
from .comod import (
    Comodule,
    ComoduleMap,
    cotensor,
    coaction_defects,
    induced_coaction,
    cotensor_subspace,
    left_coaction,
    regular,
    restrict,
    right_coaction,
    tensor,
)
from .exactmath import (
    IllDefined,
    IndexViolation,
    LinearMap,
    NotInvertible,
    ParamSpec,
    RestrictionFailure,
    ShapeMismatch,
    Subspace,
    fmt_scalar,
    invert,
    rank,
    standard_basis,
    vadd_into,
)


def _params(M: Comodule) -> ParamSpec:
    return M.coalgebra.params


def _check_index(i: int, n: int):
    if not 1 <= i <= n - 1:
        raise IndexViolation(f"functor index {i} outside 1..{n - 1}")


@lru_cache(maxsize=None)
def induction_data(n: int, i: int, r: int, params: ParamSpec) -> tuple[Comodule, Comodule]:
    """A(a[i];r) as a left and as a right A(delta;r)-comodule."""
    _check_index(i, n)
    ai = a_shape(n, i)
    d = delta(n)
    return left_coaction(ai, d, r, params), right_coaction(ai, d, r, params)


def _require_borel(M: Comodule):
    C = M.coalgebra
    if M.side != "right" or C.shape != delta(C.n):
        raise ShapeMismatch("functors act on right A(delta;r)-comodules")


def _vector_label(row: dict, M: Comodule, A: Comodule) -> str:
    def wrap(t):
        return f"({t})" if " " in t else t

    out = ""
    for (p, s), c in sorted(row.items()):
        body = f"{wrap(M.labels[p])}⊗{wrap(A.labels[s])}"
        mag = abs(c)
        term = body if mag == 1 else f"({fmt_scalar(mag)}){body}"
        if not out:
            out = term if c > 0 else "-" + term
        else:
            out += (" + " if c > 0 else " - ") + term
    return out or "0"


def apply_F(i: int, M: Comodule) -> Comodule:
    """F_i M with its induced right A(delta;r)-coaction (memoised on M)."""
    _require_borel(M)
    key = ("F", i)
    hit = M.cache.get(key)
    if hit is not None:
        return hit
    n, r = M.n, M.r
    _check_index(i, n)
    left, right = induction_data(n, i, r, _params(M))
    X = cotensor_subspace(M, left)
    coaction = induced_coaction(X, right)
    labels = tuple(_vector_label(row, M, left) for row in X.rows)
    out = Comodule(M.coalgebra, coaction, labels=labels, name=f"F{i}({M.name})", parent=M, letter=i, subspace=X)
    bad = coaction_defects(out)
    if bad:
        raise IllDefined(f"F{i} produced an invalid comodule: {bad[0]}")
    M.cache[key] = out
    return out


def apply_word(M: Comodule, word: Sequence[int]) -> Comodule:
    """Apply the letters of ``word`` in order (first letter first)."""
    out = M
    for i in word:
        out = apply_F(i, out)
    return out


def tower(M: Comodule, word: Sequence[int]) -> list[Comodule]:
    out = [M]
    for i in word:
        out.append(apply_F(i, out[-1]))
    return out


def flatten(N: Comodule, vec: dict, depth: int) -> dict:
    """Express a vector of N in the ambient tensor space ``depth`` levels down."""
    cur = {(u,): c for u, c in vec.items() if c}
    node = N
    for _ in range(depth):
        if node.subspace is None:
            raise ValueError("comodule was not produced by induction")
        nxt: dict = {}
        for key, c in cur.items():
            for (q, s), v in node.subspace.rows[key[0]].items():
                k2 = (q, s) + key[1:]
                nv = nxt.get(k2, 0) + c * v
                if nv:
                    nxt[k2] = nv
                else:
                    nxt.pop(k2, None)
        cur = nxt
        node = node.parent
    return cur


def unflatten(N: Comodule, vec: dict, depth: int) -> dict[int, Fraction]:
    """Inverse of ``flatten``; raises RestrictionFailure outside the subspace."""
    chain = []
    node = N
    for _ in range(depth):
        chain.append(node)
        node = node.parent
    chain.reverse()
    cur = {k: c for k, c in vec.items() if c}
    for level in chain:
        groups: dict = {}
        for key, c in cur.items():
            groups.setdefault(key[2:], {})[(key[0], key[1])] = c
        nxt: dict = {}
        for rest, sl in groups.items():
            for u, c in level.subspace.coords(sl).items():
                nxt[(u,) + rest] = c
        cur = nxt
    return {key[0]: c for key, c in cur.items()}


def _map_from_columns(S: Comodule, T: Comodule, cols: list[dict]) -> ComoduleMap:
    return ComoduleMap(S, T, LinearMap(S.basis, T.basis, cols))


def apply_F_to_map(i: int, phi: ComoduleMap) -> ComoduleMap:
    """F_i(phi): (phi (x) id) restricted to the cotensor subspaces."""
    S, T = phi.source, phi.target
    FS, FT = apply_F(i, S), apply_F(i, T)
    cols = []
    for row in FS.subspace.rows:
        img: dict = {}
        for (p, s), c in row.items():
            for q, d in phi.matrix.columns[p].items():
                vadd_into(img, {(q, s): c * d})
        try:
            cols.append(FT.subspace.coords(img))
        except RestrictionFailure as exc:
            raise RestrictionFailure(f"F{i} of the map leaves the target cotensor: {exc}") from None
    return _map_from_columns(FS, FT, cols)


def apply_word_to_map(word: Sequence[int], phi: ComoduleMap) -> ComoduleMap:
    for i in word:
        phi = apply_F_to_map(i, phi)
    return phi


@dataclass
class TauInstance:
    kind: str
    indices: tuple
    map: ComoduleMap
    ranks: dict = field(default_factory=dict)

    @property
    def source(self):
        return self.map.source

    @property
    def target(self):
        return self.map.target


def _finish(kind: str, indices: tuple, phi: ComoduleMap, claim: str) -> TauInstance:
    rk = phi.rank()
    ranks = {"source": phi.source.dim, "target": phi.target.dim, "rank": rk}
    if not (phi.source.dim == phi.target.dim == rk):
        raise NotInvertible(f"{claim}: rank {rk}, dims {phi.source.dim} -> {phi.target.dim}")
    if not phi.intertwines():
        raise IllDefined(f"{claim}: map does not intertwine the coactions")
    return TauInstance(kind, indices, phi, ranks)


def rho_ind(i: int, M: Comodule) -> TauInstance:
    """F_i M -> F_i F_i M, z (x) x -> z (x) x_(1) (x) x_(2)."""
    key = ("rho_ind", i)
    hit = M.cache.get(key)
    if hit is not None:
        return hit
    S = apply_F(i, M)
    T = apply_F(i, S)
    A = graded_coalgebra(M.n, a_shape(M.n, i), M.r, _params(M))
    cols = []
    for u in range(S.dim):
        img: dict = {}
        for (p, s), c in flatten(S, {u: Fraction(1)}, 1).items():
            for (s1, s2), d in A.delta[s].items():
                vadd_into(img, {(p, s1, s2): c * d})
        cols.append(unflatten(T, img, 2))
    out = _finish("rho_ind", (i,), _map_from_columns(S, T, cols), f"rho_ind F{i}")
    M.cache[key] = out
    return out


@dataclass
class TMap:
    """A bicomodule isomorphism between iterated cotensor products of the A[l].

    ``source`` and ``target`` are words in application order; ``X`` is the
    source cotensor subspace of A[w_1] (x) ... (x) A[w_k] with keys
    ``(s_1, ..., s_k)`` and ``images[k]`` is the image of ``X.rows[k]``.
    """

    kind: str
    indices: tuple
    source: tuple
    target: tuple
    shape: tuple
    X: Subspace
    Y: Subspace
    images: list
    ranks: dict

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for k, c in self.X.coords(vec).items():
            vadd_into(out, self.images[k], c)
        return out


def _tower_subspace(n: int, word: Sequence[int], r: int, params: ParamSpec) -> Subspace:
    """A[w_1] box A[w_2] box ... computed as iterated cotensor products."""
    first = induction_data(n, word[0], r, params)[1]
    N = apply_word(first, word[1:])
    vecs = [flatten(N, {u: Fraction(1)}, len(word) - 1) for u in range(N.dim)]
    return Subspace.span(vecs)


@lru_cache(maxsize=None)
def _t_map(kind: str, indices: tuple, n: int, r: int, params: ParamSpec) -> TMap:
    d = delta(n)
    if kind == "distant":
        i, j = indices
        if j < i + 2:
            raise IndexViolation(f"distant t needs j >= i + 2, got ({i}, {j})")
        _check_index(i, n)
        _check_index(j, n)
        b = shape_plus(d, i, j)
        src, dst = (i, j), (j, i)
    elif kind == "adjacent":
        (i,) = indices
        if not 1 <= i <= n - 2:
            raise IndexViolation(f"adjacent t needs 1 <= i <= n - 2, got {i}")
        b = shape_plus(d, i, i, i + 1)
        src, dst = (i + 1, i, i + 1), (i, i + 1, i)
    else:
        raise ValueError(f"unknown t kind {kind!r}")
    legs_src = tuple(a_shape(n, l) for l in src)
    legs_dst = tuple(a_shape(n, l) for l in dst)
    cols_src = leg_map(n, b, legs_src, r, params, verify=True)
    cols_dst = leg_map(n, b, legs_dst, r, params, verify=True)
    m = len(cols_src)
    X = Subspace.span(cols_src)
    Y = Subspace.span(cols_dst)
    claim = f"t_{kind}{indices} at r={r}"
    ranks = {"A(b)": m, "source_leg": X.dim, "target_leg": Y.dim}
    if X.dim != m or Y.dim != m:
        raise NotInvertible(f"{claim}: projection legs have ranks {X.dim}, {Y.dim} on a space of dimension {m}")
    Xc = _tower_subspace(n, src, r, params)
    Yc = _tower_subspace(n, dst, r, params)
    ranks.update({"source_cotensor": Xc.dim, "target_cotensor": Yc.dim})
    if Xc != X or Yc != Y:
        raise NotInvertible(f"{claim}: images differ from the cotensor products ({X.dim} vs {Xc.dim}, {Y.dim} vs {Yc.dim})")
    cols = [X.coords(c) for c in cols_src]
    C = LinearMap(standard_basis(m), standard_basis(X.dim), cols)
    Cinv = invert(C)
    images = []
    for k in range(X.dim):
        img: dict = {}
        for bidx, c in Cinv.columns[k].items():
            vadd_into(img, cols_dst[bidx], c)
        images.append(img)
    return TMap(kind, tuple(indices), src, dst, b, X, Y, images, ranks)


def t_map(kind: str, indices: Sequence[int], n: int, r: int, params: ParamSpec | None = None) -> TMap:
    return _t_map(kind, tuple(indices), n, r, params or ParamSpec())


def t_as_linear_map(t: TMap) -> LinearMap:
    """t as a matrix from X-coordinates to Y-coordinates."""
    cols = [t.Y.coords(img) for img in t.images]
    return LinearMap(standard_basis(t.X.dim), standard_basis(t.Y.dim), cols)


def _tau_from_t(t: TMap, N: Comodule) -> ComoduleMap:
    k = len(t.source)
    S = apply_word(N, t.source)
    T = apply_word(N, t.target)
    cols = []
    for u in range(S.dim):
        slices: dict = {}
        for key, c in flatten(S, {u: Fraction(1)}, k).items():
            slices.setdefault(key[0], {})[key[1:]] = c
        img: dict = {}
        for p, sl in slices.items():
            for key, c in t.apply(sl).items():
                img[(p,) + key] = c
        cols.append(unflatten(T, img, k))
    return _map_from_columns(S, T, cols)


def tau(kind: str, indices: Sequence[int], M: Comodule) -> TauInstance:
    """The natural isomorphism tau at the object M.

    kinds: ``"ii"`` with (i,): F_i F_i M -> F_i M;
    ``"distant"`` with (i, j), j >= i+2: F_j F_i M -> F_i F_j M;
    ``"adjacent"`` with (i,): F_{i+1} F_i F_{i+1} M -> F_i F_{i+1} F_i M.
    """
    indices = tuple(indices)
    key = ("tau", kind, indices)
    hit = M.cache.get(key)
    if hit is not None:
        return hit
    _require_borel(M)
    if kind == "ii":
        (i,) = indices
        r = rho_ind(i, M)
        out = _finish("ii", indices, r.map.inverse(), f"tau_{i}{i}")
    else:
        t = t_map(kind, indices, M.n, M.r, _params(M))
        out = _finish(kind, indices, _tau_from_t(t, M), f"tau_{kind}{indices}")
    M.cache[key] = out
    return out


def tau_words(kind: str, indices: tuple) -> tuple[tuple, tuple]:
    """Source and target words (application order) of a tau."""
    if kind == "ii":
        (i,) = indices
        return (i, i), (i,)
    if kind == "distant":
        i, j = indices
        return (i, j), (j, i)
    (i,) = indices
    return (i + 1, i, i + 1), (i, i + 1, i)


def tensor_identity(i: int, M: Comodule, N: Comodule) -> ComoduleMap:
    """M (x) Ind_i N -> Ind_i (M (x) N), x (x) sum y (x) c -> sum x0 (x) y (x) x1 c.

    M is a right A(a[i];r1)-comodule and N a right A(delta;r2)-comodule; both
    sides are A(a[i];r1+r2)-comodules and the map is checked to be a
    comodule isomorphism.
    """
    n = N.n
    ai = a_shape(n, i)
    params = _params(N)
    if M.coalgebra.shape != ai:
        raise ShapeMismatch(f"M must be an A({ai})-comodule")
    _require_borel(N)
    r1, r2 = M.r, N.r
    left2, _ = induction_data(n, i, r2, params)
    reg2 = regular(graded_coalgebra(n, ai, r2, params))
    ind_n = cotensor(N, left2, reg2, name=f"Ind{i}({N.name})")
    lhs = tensor(M, ind_n.comodule)
    MN = tensor(restrict(M, delta(n)), N)
    left12, _ = induction_data(n, i, r1 + r2, params)
    C12 = graded_coalgebra(n, ai, r1 + r2, params)
    reg12 = regular(C12)
    rhs_ct = cotensor(MN, left12, reg12, name=f"Ind{i}({M.name}⊗{N.name})")
    rhs = rhs_ct.comodule
    Ca, Cb = M.coalgebra, graded_coalgebra(n, ai, r2, params)
    alg = C12.algebra
    cols = []
    for p in range(M.dim):
        for row in ind_n.subspace.rows:
            img: dict = {}
            for (q, k), c in M.coaction[p].items():
                for (t, s), d in row.items():
                    for w, e in alg.mul_words(Ca.words[k], Cb.words[s]).items():
                        vadd_into(img, {(q * N.dim + t, C12.index[w]): c * d * e})
            cols.append(rhs_ct.subspace.coords(img))
    phi = _map_from_columns(lhs, rhs, cols)
    if phi.rank() != lhs.dim or lhs.dim != rhs.dim:
        raise NotInvertible(f"tensor identity for F{i}: rank {phi.rank()}, dims {lhs.dim} -> {rhs.dim}")
    if not phi.intertwines():
        raise IllDefined("tensor identity does not intertwine the coactions")
    return phi


# preaction diagrams


@dataclass(frozen=True)
class Edge:
    """F_X tau F_Y in written notation: X outer letters, Y inner letters."""

    outer: tuple
    kind: str
    indices: tuple
    inner: tuple
    inverse: bool = False

    def written_source(self) -> tuple:
        src, dst = tau_words(self.kind, self.indices)
        mid = dst if self.inverse else src
        return self.outer + tuple(reversed(mid)) + self.inner

    def written_target(self) -> tuple:
        src, dst = tau_words(self.kind, self.indices)
        mid = src if self.inverse else dst
        return self.outer + tuple(reversed(mid)) + self.inner


def _E(outer, kind, indices, inner, inverse=False) -> Edge:
    return Edge(tuple(outer), kind, tuple(indices), tuple(inner), inverse)


def _tau_kind(a: int, b: int) -> tuple[str, tuple]:
    """Kind and index tuple for tau_{ab} with a <= b."""
    if a == b:
        return "ii", (a,)
    if b == a + 1:
        return "adjacent", (a,)
    return "distant", (a, b)


def _T(outer, a, b, inner, inverse=False) -> Edge:
    kind, idx = _tau_kind(a, b)
    return _E(outer, kind, idx, inner, inverse)


def family_paths(family: int, idx: tuple) -> tuple[tuple, list[Edge], list[Edge]]:
    """Start vertex (written) and the two boundary paths of a diagram family."""
    if family == 1:
        (i,) = idx
        return (i, i, i), [_T((), i, i, (i,)), _T((), i, i, ())], [_T((i,), i, i, ()), _T((), i, i, ())]
    if family == 2:
        (i,) = idx
        j = i + 1
        return (
            (j, j, i, j),
            [_T((), j, j, (i, j)), _T((), i, j, ())],
            [_T((j,), i, j, ()), _T((), i, j, (i,)), _T((i, j), i, i, ())],
        )
    if family == 3:
        (i,) = idx
        j = i + 1
        return (
            (j, i, j, j),
            [_T((j, i), j, j, ()), _T((), i, j, ())],
            [_T((), i, j, (j,)), _T((i,), i, j, ()), _T((), i, i, (j, i))],
        )
    if family == 4:
        i, j = idx
        return (j, i, i), [_T((j,), i, i, ()), _T((), i, j, ())], [_T((), i, j, (i,)), _T((i,), i, j, ()), _T((), i, i, (j,))]
    if family == 5:
        i, j = idx
        return (j, j, i), [_T((), j, j, (i,)), _T((), i, j, ())], [_T((j,), i, j, ()), _T((), i, j, (j,)), _T((i,), j, j, ())]
    if family == 6:
        (i,) = idx
        j = i + 1
        return (
            (j, i, j, i, j),
            [_T((j, i), i, j, ()), _T((j,), i, i, (j, i)), _T((), i, j, (i,)), _T((i, j), i, i, ())],
            [_T((), i, j, (i, j)), _T((i, j), i, i, (j,)), _T((i,), i, j, ()), _T((), i, i, (j, i))],
        )
    if family == 7:
        h, i, j = idx  # h = i - 1
        return (
            (j, i, h, i),
            [_T((), i, j, (h, i)), _T((i,), h, j, (i,)), _T((i, h), i, j, ()), _T((), h, i, (j,))],
            [_T((j,), h, i, ()), _T((), h, j, (i, h)), _T((h,), i, j, (h,)), _T((h, i), h, j, ())],
        )
    if family == 8:
        i, j, k = idx  # k = j + 1
        return (
            (k, j, k, i),
            [_T((k, j), i, k, ()), _T((k,), i, j, (k,)), _T((), i, k, (j, k)), _T((i,), j, k, ())],
            [_T((), j, k, (i,)), _T((j, k), i, j, ()), _T((j,), i, k, (j,)), _T((), i, j, (k, j))],
        )
    if family == 9:
        i, j, k = idx
        return (
            (k, j, i),
            [_T((k,), i, j, ()), _T((), i, k, (j,)), _T((i,), j, k, ())],
            [_T((), j, k, (i,)), _T((j,), i, k, ()), _T((), i, j, (k,))],
        )
    if family == 10:
        (i,) = idx
        j, k = i + 1, i + 2
        return (
            (k, j, i, k, j, k),
            [
                _T((k, j, i), j, k, ()),
                _T((k,), i, j, (k, j)),
                _T((), i, k, (j, i, k, j)),
                _T((i, k, j), i, k, (j,), inverse=True),
                _T((i,), j, k, (i, j)),
                _T((i, j, k), i, j, ()),
                _T((i, j), i, k, (j, i)),
            ],
            [
                _T((k, j), i, k, (j, k), inverse=True),
                _T((), j, k, (i, j, k)),
                _T((j, k), i, j, (k,)),
                _T((j,), i, k, (j, i, k)),
                _T((j, i, k, j), i, k, (), inverse=True),
                _T((j, i), j, k, (i,)),
                _T((), i, j, (k, j, i)),
            ],
        )
    raise ValueError(f"unknown family {family}")


def family_indices(family: int, n: int) -> list[tuple]:
    """All admissible index tuples of a family at rank n (letters 1..n-1)."""
    top = n - 1
    rng = range(1, top + 1)
    if family == 1:
        return [(i,) for i in rng]
    if family in (2, 3, 6):
        return [(i,) for i in rng if i + 1 <= top]
    if family in (4, 5):
        return [(i, j) for i in rng for j in rng if j >= i + 2]
    if family == 7:
        return [(i - 1, i, j) for i in rng for j in rng if i - 1 >= 1 and j >= i + 2]
    if family == 8:
        return [(i, j, j + 1) for i in rng for j in rng if j >= i + 2 and j + 1 <= top]
    if family == 9:
        return [(i, j, k) for i in rng for j in rng for k in rng if j >= i + 2 and k >= j + 2]
    if family == 10:
        return [(i,) for i in rng if i + 2 <= top]
    raise ValueError(f"unknown family {family}")


def walk(start: tuple, path: list[Edge]) -> list[tuple]:
    """Vertices visited by a path; checks every label against its vertex."""
    verts = [start]
    cur = start
    for e in path:
        if e.written_source() != cur:
            raise ValueError(f"edge {e} does not start at {cur}")
        cur = e.written_target()
        verts.append(cur)
    return verts


def edge_map(M: Comodule, e: Edge) -> ComoduleMap:
    """The comodule map F_X tau_{F_Y M} F_Y ... evaluated at M."""
    inner_app = tuple(reversed(e.inner))
    outer_app = tuple(reversed(e.outer))
    N = apply_word(M, inner_app)
    t = tau(e.kind, e.indices, N)
    phi = t.map.inverse() if e.inverse else t.map
    return apply_word_to_map(outer_app, phi)


def path_map(M: Comodule, start: tuple, path: list[Edge]) -> ComoduleMap:
    walk(start, path)
    out = None
    for e in path:
        phi = edge_map(M, e)
        out = phi if out is None else phi.compose(out)
    return out


@dataclass
class DiagramResult:
    family: int
    indices: tuple
    module: str
    status: str
    ranks: dict
    detail: str = ""

    def to_json(self) -> dict:
        d = {"family": self.family, "indices": list(self.indices), "module": self.module, "status": self.status, "ranks": self.ranks}
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class DiagramReport:
    n: int
    r: int
    results: list

    @property
    def passed(self) -> bool:
        return all(x.status == "pass" for x in self.results)

    def families(self) -> set[int]:
        return {x.family for x in self.results}

    def to_json(self) -> list:
        return [x.to_json() for x in self.results]


def check_diagram(family: int, idx: tuple, M: Comodule) -> DiagramResult:
    start, p1, p2 = family_paths(family, idx)
    try:
        end1, end2 = walk(start, p1)[-1], walk(start, p2)[-1]
        if end1 != end2:
            raise ValueError(f"paths end at different vertices {end1} and {end2}")
        f1 = path_map(M, start, p1)
        f2 = path_map(M, start, p2)
        same = f1.source is f2.source and f1.target is f2.target and f1.matrix.columns == f2.matrix.columns
        ranks = {"source": f1.source.dim, "target": f1.target.dim, "path1": f1.rank(), "path2": f2.rank()}
        return DiagramResult(family, idx, M.name, "pass" if same else "fail", ranks)
    except (NotInvertible, IllDefined, RestrictionFailure, ValueError) as exc:
        return DiagramResult(family, idx, M.name, "error", {}, str(exc))


def check_preaction_diagrams(n: int, r: int, test_modules: Sequence[Comodule], families: Sequence[int] = range(1, 11)) -> DiagramReport:
    results = []
    for fam in families:
        for idx in family_indices(fam, n):
            for M in test_modules:
                if M.n != n or M.r != r:
                    raise ValueError(f"{M!r} is not an A(delta;{r}) comodule at n={n}")
                results.append(check_diagram(fam, idx, M))
    results.sort(key=lambda x: (x.family, x.indices, x.module))
    return DiagramReport(n, r, results)
