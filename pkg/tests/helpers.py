"""Small constructors shared by the test modules."""

from __future__ import annotations

from qhecke.coalg import comultiply, delta, graded_coalgebra, param_iso
from qhecke.comod import Comodule
from qhecke.exactmath import ParamSpec
from qhecke.freealg import algebra, basis


def w(*gens: str) -> tuple:
    """w("11", "22") is the normal word c11 c22."""
    return tuple(sorted((int(g[0]), int(g[1])) for g in gens))


def explicit(n: int, r: int, rows, params: ParamSpec | None = None) -> Comodule:
    """Right A(delta;r)-comodule from rows [{(q, word): coeff}]."""
    C = graded_coalgebra(n, delta(n), r, params or ParamSpec())
    return Comodule(C, tuple({(q, C.index[word]): c for (q, word), c in row.items()} for row in rows))


def explicit_F2_k110(params: ParamSpec | None = None) -> Comodule:
    """The two-dimensional comodule spanned by 1(x)c22 and 1(x)c23."""
    return explicit(3, 2, [
        {(0, w("11", "22")): 1, (1, w("11", "32")): 1},
        {(1, w("11", "33")): 1},
    ], params)


def explicit_F1F2_k110(params: ParamSpec | None = None) -> Comodule:
    """The three-dimensional comodule with basis w, v, u written out explicitly."""
    return explicit(3, 2, [
        {(0, w("11", "22")): 1, (1, w("11", "32")): 1, (2, w("21", "32")): 1, (2, w("22", "31")): -1},
        {(1, w("11", "33")): 1, (2, w("21", "33")): 1},
        {(2, w("22", "33")): 1},
    ], params)


def transports(n, r, frm, to, iso=param_iso):
    """phi (x) phi after Delta_frm equals Delta_to after phi, on a basis of A(n;r)."""
    A = algebra(n, None, frm)
    for word in basis(n, None, r):
        x = A.element({word: 1})
        lhs = comultiply(iso(x, frm, to), legs=(None, None))
        rhs = {}
        for (w1, w2), c in comultiply(x, legs=(None, None)).items():
            a = iso(A.element({w1: 1}), frm, to)
            b = iso(A.element({w2: 1}), frm, to)
            for u, e in a.terms.items():
                for v, f in b.terms.items():
                    rhs[(u, v)] = rhs.get((u, v), 0) + c * e * f
        if lhs != {k: v for k, v in rhs.items() if v}:
            return False
    return True
