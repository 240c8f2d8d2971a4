"""Exact rational scalars, parameters and sparse linear algebra.

Everything here works over the rationals with ``fractions.Fraction``. Vectors
are sparse dicts ``{key: Fraction}`` whose keys are any mutually comparable
hashables (ints, tuples of ints), and elimination always pivots on the
smallest key of a row, so every result is deterministic.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import prod
from typing import Hashable, Iterable, Mapping, Sequence

if os.environ.get("QHECKE_PURE"):
    from ._pykernel import rref

    BACKEND = "python"
else:
    try:
        from ._ckernel import rref

        BACKEND = "compiled"
    except ImportError:  # pragma: no cover - depends on the build
        from ._pykernel import rref

        BACKEND = "python"

Scalar = Fraction
Vector = dict


class QHeckeError(Exception):
    """Base class for all errors raised by this package."""


class NotInvertible(QHeckeError):
    pass


class InvalidShape(QHeckeError):
    pass


class ShapeMismatch(QHeckeError):
    pass


class NonParabolicShape(QHeckeError):
    pass


class FormulaMismatch(QHeckeError):
    pass


class ProductMismatch(QHeckeError):
    pass


class IllDefined(QHeckeError):
    pass


class HypothesisViolated(QHeckeError):
    pass


class DegreeMismatch(QHeckeError):
    pass


class NotDiagonalizable(QHeckeError):
    pass


class RestrictionFailure(QHeckeError):
    pass


class IndexViolation(QHeckeError):
    pass


class BasisMismatch(QHeckeError):
    pass


class ParseError(QHeckeError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def to_scalar(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a string like '3/2'")
    return Fraction(value)


def fmt_scalar(value) -> str:
    return str(Fraction(value))


@dataclass(frozen=True)
class ParamSpec:
    """The two deformation parameters, specialised to nonzero rationals."""

    alpha: Fraction = Fraction(1)
    beta: Fraction = Fraction(1)

    def __post_init__(self):
        a, b = to_scalar(self.alpha), to_scalar(self.beta)
        if a == 0 or b == 0:
            raise ValueError("alpha and beta must be nonzero")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def alpha_inv(self) -> Fraction:
        return 1 / self.alpha

    @property
    def beta_inv(self) -> Fraction:
        return 1 / self.beta

    @property
    def beta_minus_alpha_inv(self) -> Fraction:
        return self.beta - 1 / self.alpha

    @property
    def alpha_inv_beta(self) -> Fraction:
        return self.beta / self.alpha

    def __str__(self):
        return f"(alpha={self.alpha}, beta={self.beta})"


# sparse vector helpers


def vclean(v: Mapping) -> dict:
    return {k: c for k, c in v.items() if c}


def vadd_into(acc: dict, v: Mapping, scale=1) -> dict:
    """acc += scale * v, in place, dropping zeros."""
    if not scale:
        return acc
    for k, c in v.items():
        nv = acc.get(k, 0) + scale * c
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)
    return acc


def vscale(v: Mapping, s) -> dict:
    if not s:
        return {}
    return {k: s * c for k, c in v.items()}


def vsub(a: Mapping, b: Mapping) -> dict:
    return vadd_into(dict(a), b, -1)


# bases


class Basis:
    """An ordered list of hashable labels with a reverse index."""

    def __init__(self, labels: Iterable[Hashable], name: str = ""):
        self.labels = tuple(labels)
        self.name = name
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise ValueError("basis labels must be distinct")

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __getitem__(self, i):
        return self.labels[i]

    def index(self, label) -> int:
        return self._index[label]

    def __eq__(self, other):
        return isinstance(other, Basis) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return f"Basis({self.name or len(self)})"


class TensorBasis(Basis):
    """Product basis; labels are tuples of factor indices in mixed radix.

    Labels are generated lazily, so large tensor powers cost nothing until
    enumerated.
    """

    def __init__(self, factors: Sequence[Basis]):
        self.factors = tuple(factors)
        self.dims = tuple(len(f) for f in self.factors)
        self.name = " ⊗ ".join(f.name or str(len(f)) for f in self.factors)
        self._size = prod(self.dims)

    @property
    def labels(self):
        return tuple(product(*(range(d) for d in self.dims)))

    def __len__(self):
        return self._size

    def __iter__(self):
        return iter(product(*(range(d) for d in self.dims)))

    def __getitem__(self, i):
        return self.label(i)

    def index(self, label) -> int:
        out = 0
        for d, x in zip(self.dims, label):
            if not 0 <= x < d:
                raise KeyError(label)
            out = out * d + x
        return out

    def label(self, i: int) -> tuple:
        out = []
        for d in reversed(self.dims):
            i, x = divmod(i, d)
            out.append(x)
        return tuple(reversed(out))

    def __eq__(self, other):
        if isinstance(other, TensorBasis):
            return self.factors == other.factors
        return isinstance(other, Basis) and len(self) == len(other) and self.labels == other.labels

    def __hash__(self):
        return hash(self.factors)


def standard_basis(n: int, name: str = "") -> Basis:
    return Basis(range(n), name)


# linear maps


class LinearMap:
    """An exact matrix between based spaces, stored column-sparse.

    ``columns[j]`` is the image of the j-th domain basis vector as a dict
    ``{row_index: Fraction}``.
    """

    __slots__ = ("domain", "codomain", "columns")

    def __init__(self, domain: Basis, codomain: Basis, columns: Sequence[Mapping[int, Fraction]]):
        if len(columns) != len(domain):
            raise ValueError("one column per domain basis vector is required")
        self.domain = domain
        self.codomain = codomain
        rows = len(codomain)
        cols = []
        for col in columns:
            c = {int(i): to_scalar(v) for i, v in col.items() if v}
            if any(not 0 <= i < rows for i in c):
                raise ValueError("row index out of range")
            cols.append(c)
        self.columns = tuple(cols)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], domain: Basis | None = None, codomain: Basis | None = None):
        nrows = len(rows)
        ncols = len(rows[0]) if rows else (len(domain) if domain is not None else 0)
        domain = domain if domain is not None else standard_basis(ncols)
        codomain = codomain if codomain is not None else standard_basis(nrows)
        cols = [{i: to_scalar(rows[i][j]) for i in range(nrows) if rows[i][j]} for j in range(ncols)]
        return cls(domain, codomain, cols)

    @classmethod
    def identity(cls, basis: Basis):
        return cls(basis, basis, [{i: Fraction(1)} for i in range(len(basis))])

    @classmethod
    def zero(cls, domain: Basis, codomain: Basis):
        return cls(domain, codomain, [{} for _ in range(len(domain))])

    @property
    def rows(self) -> int:
        return len(self.codomain)

    @property
    def cols(self) -> int:
        return len(self.domain)

    def entry(self, i: int, j: int) -> Fraction:
        return self.columns[j].get(i, Fraction(0))

    def dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                out[i][j] = v
        return out

    def row_dicts(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                out[i][j] = v
        return out

    def apply(self, vec: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for j, c in vec.items():
            vadd_into(out, self.columns[j], c)
        return out

    def compose(self, inner: "LinearMap") -> "LinearMap":
        """Return ``self ∘ inner``."""
        if inner.codomain != self.domain:
            raise BasisMismatch(f"cannot compose: {inner.codomain!r} != {self.domain!r}")
        return LinearMap(inner.domain, self.codomain, [self.apply(col) for col in inner.columns])

    __matmul__ = compose

    def __add__(self, other: "LinearMap") -> "LinearMap":
        self._check_same(other)
        return LinearMap(self.domain, self.codomain, [vadd_into(dict(a), b) for a, b in zip(self.columns, other.columns)])

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        self._check_same(other)
        return LinearMap(self.domain, self.codomain, [vsub(a, b) for a, b in zip(self.columns, other.columns)])

    def scale(self, s) -> "LinearMap":
        return LinearMap(self.domain, self.codomain, [vscale(c, to_scalar(s)) for c in self.columns])

    def _check_same(self, other):
        if self.domain != other.domain or self.codomain != other.codomain:
            raise BasisMismatch("maps live between different bases")

    def tensor(self, other: "LinearMap") -> "LinearMap":
        dom = TensorBasis([self.domain, other.domain])
        cod = TensorBasis([self.codomain, other.codomain])
        cols = []
        for a in self.columns:
            for b in other.columns:
                col = {}
                for i, x in a.items():
                    for k, y in b.items():
                        col[i * other.rows + k] = x * y
                cols.append(col)
        return LinearMap(dom, cod, cols)

    def equals(self, other: "LinearMap") -> bool:
        return self.rows == other.rows and self.cols == other.cols and self.columns == other.columns

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.domain == other.domain and self.codomain == other.codomain and self.columns == other.columns

    __hash__ = None  # type: ignore[assignment]

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(col == {j: 1} for j, col in enumerate(self.columns))

    def is_zero(self) -> bool:
        return not any(self.columns)

    def __repr__(self):
        return f"LinearMap({self.rows}x{self.cols})"


def nullspace(equations: Iterable[Mapping], unknowns: Iterable) -> list[dict]:
    """Basis of the solutions of ``sum_k eq[k] x_k = 0`` for every equation.

    The result is in reduced echelon form, ordered by pivot key.
    """
    reduced, pivots = rref(equations)
    pivset = set(pivots)
    vectors = []
    for f in sorted(set(unknowns)):
        if f in pivset:
            continue
        v = {f: Fraction(1)}
        for row, p in zip(reduced, pivots):
            c = row.get(f)
            if c:
                v[p] = -c
        vectors.append(v)
    rows, _ = rref(vectors)
    return rows


def kernel(m: LinearMap) -> list[tuple[Fraction, ...]]:
    """Dense kernel basis of ``m``, echelonised and ordered by pivot column."""
    vecs = nullspace(m.row_dicts(), range(m.cols))
    return [tuple(v.get(j, Fraction(0)) for j in range(m.cols)) for v in vecs]


def rank(m: LinearMap) -> int:
    return len(rref(m.columns)[1])


def vectors_rank(vectors: Iterable[Mapping]) -> int:
    return len(rref(vectors)[1])


def invert(m: LinearMap) -> LinearMap:
    """Exact inverse; raises NotInvertible unless ``m`` is square of full rank."""
    n = m.rows
    if m.cols != n:
        raise NotInvertible(f"map is {m.rows}x{m.cols}, not square")
    aug = []
    for i, row in enumerate(m.row_dicts()):
        r = dict(row)
        r[n + i] = Fraction(1)
        aug.append(r)
    reduced, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise NotInvertible(f"rank {sum(1 for p in pivots if p < n)} < {n}")
    cols: list[dict[int, Fraction]] = [{} for _ in range(n)]
    for i, row in enumerate(reduced[:n]):
        for k, v in row.items():
            if k >= n:
                cols[k - n][i] = v
    return LinearMap(m.codomain, m.domain, cols)


@dataclass
class Subspace:
    """A subspace of a sparse ambient space, kept in reduced echelon form.

    ``coords`` reads coordinates off the pivot keys and then verifies the
    reconstruction, so membership is always checked exactly.
    """

    rows: list
    pivots: list
    _pivot_pos: dict = field(default_factory=dict, repr=False)

    @classmethod
    def span(cls, vectors: Iterable[Mapping]) -> "Subspace":
        rows, pivots = rref(vectors)
        return cls(rows, pivots, {p: i for i, p in enumerate(pivots)})

    @property
    def dim(self) -> int:
        return len(self.rows)

    def coords(self, v: Mapping) -> dict[int, Fraction]:
        out = {}
        for p, c in v.items():
            i = self._pivot_pos.get(p)
            if i is not None and c:
                out[i] = c
        if self.embed(out) != vclean(v):
            raise RestrictionFailure("vector does not lie in the subspace")
        return out

    def contains(self, v: Mapping) -> bool:
        try:
            self.coords(v)
        except RestrictionFailure:
            return False
        return True

    def embed(self, coords: Mapping[int, Fraction]) -> dict:
        out: dict = {}
        for i, c in coords.items():
            vadd_into(out, self.rows[i], c)
        return out

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.pivots == other.pivots and self.rows == other.rows

    def issubspace(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.rows)
