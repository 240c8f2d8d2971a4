"""End-to-end acceptance checks, one group per numbered criterion.

Every comparison is exact. The terminal summary prints one
``criterion N: PASS|FAIL`` line per group.
"""

from __future__ import annotations

import time
from fractions import Fraction
from itertools import product
from math import comb

import pytest
from helpers import explicit_F2_k110, explicit_F1F2_k110, transports, w

from qhecke.charpoly import CharPoly
from qhecke.coalg import a_shape, delta, graded_coalgebra, is_grouplike, is_parabolic, multi_projection, shape_plus
from qhecke.comod import (
    character,
    check_exact_sequence,
    find_isomorphism,
    regular,
    weight_basis,
    weight_module,
    weights,
)
from qhecke.exactmath import ParamSpec, nullspace, rank
from qhecke.freealg import (
    basis,
    check_diamond,
    determinant_column_form,
    determinant_commutation_defects,
    determinant_row_form,
    quantum_determinant,
)
from qhecke.functors import (
    apply_F,
    apply_word,
    check_preaction_diagrams,
    edge_map,
    family_indices,
    family_paths,
    rho_ind,
    t_map,
    tau,
    tensor_identity,
)
from qhecke.heckedem import compare_character, demazure_word
from qhecke.schur import comodule_to_module, module_to_comodule, schur_algebra

SPECS = [ParamSpec(1, 1), ParamSpec(2, 3), ParamSpec(2, Fraction(1, 2))]
IDS = ["1,1", "2,3", "2,1/2"]
P11 = ParamSpec(1, 1)


def lines(n, r, params):
    return [weight_module(a, params) for a in product(range(r + 1), repeat=n) if sum(a) == r]


# (n, r, specs, families) exercised by the diagram criterion
DIAGRAM_CASES = [
    (3, 1, SPECS, range(1, 11)),
    (3, 2, SPECS, range(1, 11)),
    (4, 1, SPECS, range(1, 11)),
    (5, 1, SPECS[:2], (7, 8)),
    (6, 1, SPECS[:2], (9,)),
]


# 1


@pytest.mark.criterion(1)
def test_c1_diamond_lemma():
    start = time.perf_counter()
    checked = 0
    for params in SPECS:
        for n in (2, 3):
            for b in [None, delta(n)] + [a_shape(n, i) for i in range(1, n)]:
                rep = check_diamond(n, b, params)
                assert rep.passed, (n, b, params, rep.failures[:2])
                checked += rep.checked
    elapsed = time.perf_counter() - start
    print(f"criterion 1: {checked} ambiguities resolved in {elapsed:.2f}s")
    assert elapsed < 5


# 2


@pytest.mark.criterion(2)
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_c2_basis_dimensions(n):
    m = n * (n + 1) // 2
    for r in range(5):
        assert len(basis(n, delta(n), r)) == comb(r + m - 1, r)
        for i in range(1, n):
            assert len(basis(n, a_shape(n, i), r)) == comb(r + m, r)


# 3


@pytest.mark.criterion(3)
@pytest.mark.parametrize("params", SPECS, ids=IDS)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_c3_quantum_determinant(n, params):
    shapes = [None, delta(n)] + [a_shape(n, i) for i in range(1, n)]
    for b in shapes:
        assert determinant_row_form(n, params, b) == determinant_column_form(n, params, b)
        d = quantum_determinant(n, params, b)
        if b is None or is_parabolic(b):
            assert is_grouplike(d)
        assert determinant_commutation_defects(n, params, b) == []


# 4


def exact_cases():
    for b in product(range(1, 4), repeat=3):
        if list(b) != sorted(b):
            continue
        for l in range(1, 4):
            b2 = list(b)
            b2[l - 1] -= 1
            if b2[l - 1] >= 1 and b2 == sorted(b2):
                yield b, l


@pytest.mark.criterion(4)
@pytest.mark.parametrize("params", SPECS, ids=IDS)
def test_c4_exact_sequences(params):
    count = 0
    for b, l in exact_cases():
        for r in range(4):
            rep = check_exact_sequence(b, l, r, params)
            f_cols, pi_cols, pi_rows = rep.dims
            assert rep.ranks["f"] == f_cols
            assert rep.ranks["pi"] == pi_rows
            assert f_cols + pi_rows == pi_cols
            assert rep.passed, (b, l, r, rep.failed())
            count += 1
    assert count == 4 * len(list(exact_cases()))


# 5


@pytest.mark.criterion(5)
def test_c5_small_functor_values():
    k110 = weight_module((1, 1, 0))
    F1 = apply_F(1, k110)
    assert F1.dim == 1 and find_isomorphism(F1, k110) is not None
    F2 = apply_F(2, k110)
    assert F2.dim == 2 and find_isomorphism(F2, explicit_F2_k110()) is not None
    assert apply_F(2, weight_module((1, 0, 1))).dim == 0
    F12 = apply_word(k110, (2, 1))
    assert F12.dim == 3
    assert set(weights(F12)) == {(1, 1, 0), (1, 0, 1), (0, 1, 1)}
    assert find_isomorphism(F12, explicit_F1F2_k110()) is not None


def solve_structure_element():
    """Solve Delta(f) = f(x)c11c22 + t c21c33(x)c11c32 + c22c33(x)f with pi(f) = 0."""
    C = graded_coalgebra(3, delta(3), 2, P11)
    e1, e2 = C.index[w("11", "22")], C.index[w("22", "33")]
    rhs = (C.index[w("21", "33")], C.index[w("11", "32")])
    t = C.dim
    eqs: dict = {}

    def add(key, unknown, c):
        row = eqs.setdefault(key, {})
        row[unknown] = row.get(unknown, 0) + c

    for k in range(C.dim):
        for key, c in C.delta[k].items():
            add(key, k, c)
        add((k, e1), k, -1)
        add((e2, k), k, -1)
    add(rhs, t, -1)
    torus = [{k: 1} for k, word in enumerate(C.words) if all(i == j for i, j in word)]
    sols = nullspace(list(eqs.values()) + torus, range(C.dim + 1))
    return C, sols, t


@pytest.mark.criterion(5)
def test_c5_structure_element_from_equation():
    C, sols, t = solve_structure_element()
    assert len(sols) == 1
    (sol,) = sols
    assert sol[t] != 0
    f = {C.words[k]: c / sol[t] for k, c in sol.items() if k != t}
    assert f == {w("21", "32"): 1, w("22", "31"): -1}


@pytest.mark.criterion(5)
def test_c5_structure_element_read_off_the_module():
    N, ws = weight_basis(apply_word(weight_module((1, 1, 0)), (2, 1)))
    C = N.coalgebra
    iw, iv, iu = (ws.index(a) for a in [(1, 1, 0), (1, 0, 1), (0, 1, 1)])

    def leg(p, q):
        return {C.words[k]: c for (qq, k), c in N.coaction[p].items() if qq == q}

    h, f, g = leg(iw, iv), leg(iw, iu), leg(iv, iu)
    assert set(h) == {w("11", "32")} and set(g) == {w("21", "33")}
    target = {w("21", "32"): 1, w("22", "31"): -1}
    # proportional with one free scalar
    s = f[w("21", "32")]
    assert s and {k: c / s for k, c in f.items()} == target
    # rescaling v and u so that h = c11c32 and g = c21c33 leaves no freedom
    scale = h[w("11", "32")] * g[w("21", "33")]
    assert {k: c / scale for k, c in f.items()} == target


# 6


@pytest.mark.criterion(6)
@pytest.mark.parametrize("n,r,specs,families", DIAGRAM_CASES, ids=[f"n{c[0]}r{c[1]}" for c in DIAGRAM_CASES])
def test_c6_preaction_diagrams(n, r, specs, families):
    for params in specs:
        rep = check_preaction_diagrams(n, r, lines(n, r, params), families)
        bad = [x for x in rep.results if x.status != "pass"]
        assert not bad, bad[:3]
        assert rep.results
        for x in rep.results:
            assert x.ranks["path1"] == x.ranks["path2"] == x.ranks["source"] == x.ranks["target"]
    expected = {3: {1, 2, 3, 6}, 4: {1, 2, 3, 4, 5, 6, 10}, 5: {7, 8}, 6: {9}}[n]
    assert rep.families() == expected


@pytest.mark.criterion(6)
def test_c6_every_family_is_exercised():
    covered = set()
    for n, r, _, families in DIAGRAM_CASES:
        covered |= {f for f in families if family_indices(f, n)}
    assert covered == set(range(1, 11))


# 7


def full(ranks):
    return len(set(ranks.values())) == 1


@pytest.mark.criterion(7)
@pytest.mark.parametrize("n,r,specs,families", DIAGRAM_CASES, ids=[f"n{c[0]}r{c[1]}" for c in DIAGRAM_CASES])
def test_c7_every_structure_map_is_invertible(n, r, specs, families):
    seen_t = set()
    for params in specs:
        for M in lines(n, r, params):
            for fam in families:
                for idx in family_indices(fam, n):
                    _, p1, p2 = family_paths(fam, idx)
                    for e in p1 + p2:
                        N = apply_word(M, tuple(reversed(e.inner)))
                        inst = tau(e.kind, e.indices, N)
                        assert full(inst.ranks), (e, inst.ranks)
                        if e.kind == "ii":
                            assert full(rho_ind(e.indices[0], N).ranks)
                        else:
                            seen_t.add((e.kind, e.indices, params))
                        phi = edge_map(M, e)
                        assert phi.rank() == phi.source.dim == phi.target.dim
    for kind, idx, params in seen_t:
        ranks = t_map(kind, idx, n, r, params).ranks
        assert full(ranks), (kind, idx, ranks)


@pytest.mark.criterion(7)
@pytest.mark.parametrize("params", SPECS[:2], ids=IDS[:2])
def test_c7_golden_structure_maps(params):
    k = weight_module((1, 1, 0), params)
    for i in (1, 2):
        assert full(rho_ind(i, k).ranks)
        assert full(rho_ind(i, apply_F(2, k)).ranks)
    for i in (1, 2):
        M = regular(graded_coalgebra(3, a_shape(3, i), 1, params))
        for r in (1, 2):
            for N in lines(3, r, params) + [apply_F(2, k)] * (r == 2):
                phi = tensor_identity(i, M, N)
                assert phi.rank() == phi.source.dim == phi.target.dim


@pytest.mark.criterion(7)
@pytest.mark.parametrize("n,r", [(3, 1), (3, 2), (4, 1)])
def test_c7_comultiplication_legs(n, r):
    d = delta(n)
    cases = [(shape_plus(d, i, i, i + 1), [(i + 1, i, i + 1), (i, i + 1, i)]) for i in range(1, n - 1)]
    cases += [(shape_plus(d, i, j), [(i, j), (j, i)]) for i in range(1, n) for j in range(i + 2, n)]
    assert cases
    for b, orders in cases:
        for letters in orders:
            rho = multi_projection(b, [a_shape(n, l) for l in letters], r, ParamSpec(2, 3))
            assert rank(rho) == rho.cols == len(basis(n, b, r))


# 8


WORDS = [wd for k in range(4) for wd in product((1, 2), repeat=k)]


@pytest.mark.criterion(8)
@pytest.mark.parametrize("lam", [(1, 1, 0), (2, 1, 0), (1, 0, 0)])
def test_c8_characters_follow_demazure(lam):
    unverified = []
    for word in WORDS:
        rep = compare_character(word, lam, 3)
        assert rep.status != "fail", (word, rep.to_json())
        for step in rep.steps:
            if step.status == "pass":
                assert step.character == step.expected
        if rep.status == "unverified":
            unverified.append(word)
    print(f"criterion 8: lambda={lam}, unlicensed chains {unverified}")
    assert unverified == ([(1, 2, 2), (2, 1, 1)] if lam == (2, 1, 0) else [])


@pytest.mark.criterion(8)
def test_c8_worked_characters():
    k = weight_module((1, 1, 0))
    x12, x13, x23 = (CharPoly.monomial(a) for a in [(1, 1, 0), (1, 0, 1), (0, 1, 1)])
    assert character(apply_F(1, k)) == x12 == demazure_word((1,), x12)
    assert character(apply_F(2, k)) == x12 + x13 == demazure_word((2,), x12)
    assert character(apply_word(k, (2, 1))) == x12 + x13 + x23 == demazure_word((2, 1), x12)


# 9


@pytest.mark.criterion(9)
@pytest.mark.parametrize("params", SPECS, ids=IDS)
def test_c9_schur_algebra(params):
    for n in (1, 2, 3):
        for r in range(4):
            A = schur_algebra(n, r, params)
            assert A.is_associative() and A.unit_ok()
            assert A.dim == len(basis(n, delta(n), r))


@pytest.mark.criterion(9)
def test_c9_borel_products():
    A = schur_algebra(2, 1)
    x11, x21 = A.index(((1, 1),)), A.index(((2, 1),))
    assert A.multiply({x11: 1}, {x21: 1}) == {}
    assert A.multiply({x21: 1}, {x11: 1}) == {x21: 1}


@pytest.mark.criterion(9)
def test_c9_round_trip_on_golden_comodules():
    k = weight_module((1, 1, 0))
    golden = [k, apply_F(1, k), apply_F(2, k), apply_word(k, (2, 1)), explicit_F2_k110(), explicit_F1F2_k110(), weight_module((1, 0, 1))]
    for M in golden:
        mod = comodule_to_module(M)
        assert mod.is_module()
        assert module_to_comodule(mod).coaction == M.coaction


# 10


@pytest.mark.criterion(10)
@pytest.mark.parametrize("n,r", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2)])
def test_c10_parameter_change(n, r):
    P23 = ParamSpec(2, 3)
    assert transports(n, r, P23, ParamSpec(1, 6))
    assert transports(n, r, P23, ParamSpec(3, 2))
