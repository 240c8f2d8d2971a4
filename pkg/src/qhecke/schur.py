"""The algebra dual to A(delta;r) and the comodule-to-module dictionary."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .coalg import GradedCoalgebra, delta, graded_coalgebra
from .comod import Comodule
from .exactmath import ParamSpec, ShapeMismatch, fmt_scalar, vadd_into
from .freealg import omega_to_word, word_to_omega


@dataclass(eq=False)
class DualAlgebra:
    """Dual basis xi_k of A(delta;r); xi_p xi_q = sum_k Delta_k[p, q] xi_k."""

    coalgebra: GradedCoalgebra
    table: dict  # (p, q) -> {k: coeff}
    unit: dict  # {k: coeff}

    @property
    def dim(self) -> int:
        return self.coalgebra.dim

    def index(self, word) -> int:
        """Position of a normal word such as ((2, 1), (1, 1))."""
        return self.coalgebra.index[tuple(tuple(g) for g in word)]

    def index_omega(self, omega) -> int:
        return self.index(omega_to_word(omega))

    def multiply(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> dict:
        out: dict = {}
        for p, c in x.items():
            for q, d in y.items():
                prod = self.table.get((p, q))
                if prod:
                    vadd_into(out, prod, c * d)
        return out

    def is_associative(self) -> bool:
        m = self.dim
        for a in range(m):
            for b in range(m):
                ab = self.table.get((a, b), {})
                for c in range(m):
                    left = self.multiply(ab, {c: 1})
                    right = self.multiply({a: 1}, self.table.get((b, c), {}))
                    if left != right:
                        return False
        return True

    def unit_ok(self) -> bool:
        return all(
            self.multiply(self.unit, {k: 1}) == {k: 1} and self.multiply({k: 1}, self.unit) == {k: 1}
            for k in range(self.dim)
        )

    def weight_idempotents(self) -> list[int]:
        return [k for k, w in enumerate(self.coalgebra.words) if all(i == j for i, j in w)]

    def label(self, k: int) -> str:
        w = self.coalgebra.words[k]
        return "xi[" + (" ".join(f"{i}{j}" for i, j in w) or "1") + "]"

    def to_json(self) -> dict:
        C = self.coalgebra
        om = [[list(r) for r in word_to_omega(w, C.n)] for w in C.words]
        return {
            "n": C.n,
            "r": C.r,
            "dim": self.dim,
            "basis": om,
            "unit": [{"basis": k, "coeff": fmt_scalar(c)} for k, c in sorted(self.unit.items())],
            "products": [
                {"left": p, "right": q, "result": [{"basis": k, "coeff": fmt_scalar(c)} for k, c in sorted(v.items())]}
                for (p, q), v in sorted(self.table.items())
            ],
            "associative": self.is_associative(),
            "unit_ok": self.unit_ok(),
        }


def schur_algebra(n: int, r: int, params: ParamSpec | None = None, check: bool = True) -> DualAlgebra:
    params = params or ParamSpec()
    C = graded_coalgebra(n, delta(n), r, params)
    table: dict = {}
    for k in range(C.dim):
        for (p, q), c in C.delta[k].items():
            vadd_into(table.setdefault((p, q), {}), {k: c})
    table = {key: v for key, v in table.items() if v}
    unit = {k: e for k, e in enumerate(C.eps) if e}
    A = DualAlgebra(C, table, unit)
    if check and not (A.is_associative() and A.unit_ok()):
        raise ArithmeticError("dual algebra fails associativity or unit")
    return A


@dataclass(eq=False)
class Module:
    """Left module over the dual algebra: ``action[k][(q, p)]`` is xi_k on m_p."""

    algebra: DualAlgebra
    dim: int
    action: tuple

    def act(self, x: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> dict:
        out: dict = {}
        for k, c in x.items():
            for (q, p), a in self.action[k].items():
                if p in v:
                    vadd_into(out, {q: c * a * v[p]})
        return out

    def is_module(self) -> bool:
        A = self.algebra
        for p in range(self.dim):
            e = {p: Fraction(1)}
            if self.act(A.unit, e) != e:
                return False
            for a in range(A.dim):
                for b in range(A.dim):
                    lhs = self.act({a: 1}, self.act({b: 1}, e))
                    rhs = self.act(A.table.get((a, b), {}), e)
                    if lhs != rhs:
                        return False
        return True


def comodule_to_module(M: Comodule, algebra: DualAlgebra | None = None) -> Module:
    """xi acts by (id (x) xi) rho."""
    C = M.coalgebra
    if M.side != "right" or C.shape != delta(C.n):
        raise ShapeMismatch("expected a right A(delta;r)-comodule")
    A = algebra or schur_algebra(C.n, C.r, C.params)
    action = [dict() for _ in range(C.dim)]
    for p, row in enumerate(M.coaction):
        for (q, k), c in row.items():
            action[k][(q, p)] = c
    mod = Module(A, M.dim, tuple(action))
    if not mod.is_module():
        raise ArithmeticError("action is not a module structure")
    return mod


def module_to_comodule(mod: Module, name: str = "") -> Comodule:
    C = mod.algebra.coalgebra
    rows = [dict() for _ in range(mod.dim)]
    for k, act in enumerate(mod.action):
        for (q, p), c in act.items():
            rows[p][(q, k)] = c
    return Comodule(C, tuple(rows), name=name)
