from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from helpers import explicit_F2_k110, w

from qhecke.charpoly import CharPoly
from qhecke.coalg import a_shape, delta, graded_coalgebra, shape_plus
from qhecke.comod import (
    Comodule,
    character,
    check_exact_sequence,
    cotensor,
    direct_sum,
    find_isomorphism,
    hom_space,
    left_coaction,
    one_dim,
    regular,
    right_coaction,
    tensor,
    validate,
    weight_basis,
    weight_decompose,
    weight_module,
    weights,
)
from qhecke.exactmath import DegreeMismatch, HypothesisViolated, ParamSpec
from qhecke.functors import induction_data

P23 = ParamSpec(2, 3)


def test_one_dim():
    k = weight_module((1, 1, 0))
    C = k.coalgebra
    assert k.coaction == ({(0, C.index[w("11", "22")]): 1},)
    assert validate(weight_module((0, 0, 0)))
    assert validate(weight_module((2, 0, 1), P23))
    with pytest.raises(DegreeMismatch):
        one_dim((1, 0, 0), C)


def test_regular_and_corruption():
    C = graded_coalgebra(2, delta(2), 1, P23)
    R = regular(C)
    assert validate(R)
    rows = [dict(r) for r in R.coaction]
    key = next(iter(rows[1]))
    rows[1][key] += 1
    assert not validate(Comodule(C, tuple(rows)))


def test_tensor_of_lines():
    for a, b in [((1, 0, 0), (0, 1, 1)), ((2, 0, 1), (1, 1, 0))]:
        ka, kb = weight_module(a, P23), weight_module(b, P23)
        T = tensor(ka, kb)
        s = tuple(x + y for x, y in zip(a, b))
        assert find_isomorphism(T, weight_module(s, P23)) is not None
        assert character(T) == character(ka) * character(kb)
    M = right_coaction((2, 2, 3), delta(3), 1, P23)
    T0 = tensor(M, weight_module((0, 0, 0), P23))
    assert T0.coaction == M.coaction


def test_tensor_associative():
    a, b, c = (weight_module(x, P23) for x in [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    M = right_coaction(delta(3), delta(3), 1, P23)
    left = tensor(tensor(M, a), b)
    right = tensor(M, tensor(a, b))
    assert left.coaction == right.coaction
    assert tensor(tensor(a, b), c).coaction == tensor(a, tensor(b, c)).coaction


def test_cotensor_with_coalgebra_is_identity():
    C = graded_coalgebra(3, delta(3), 2, P23)
    M = direct_sum(weight_module((1, 1, 0), P23), weight_module((0, 1, 1), P23))
    X = cotensor(M, regular(C, "left"), regular(C))
    assert X.dim == M.dim
    assert find_isomorphism(M, X.comodule) is not None
    # the embedding is rho_M itself
    for p in range(M.dim):
        assert X.subspace.contains(M.coaction[p])


def test_cotensor_golden():
    left, right = induction_data(3, 2, 2, ParamSpec())
    X = cotensor(weight_module((1, 1, 0)), left, right)
    assert X.dim == 2
    phi = find_isomorphism(X.comodule, explicit_F2_k110())
    assert phi is not None and phi.is_iso()
    assert cotensor(weight_module((1, 0, 1)), left, right).dim == 0


def test_left_coaction():
    assert validate(left_coaction(a_shape(3, 2), delta(3), 1))
    D = left_coaction(delta(3), delta(3), 2, P23)
    C = graded_coalgebra(3, delta(3), 2, P23)
    assert D.coaction == tuple(dict(C.delta[k]) for k in range(C.dim))
    with pytest.raises(HypothesisViolated):
        left_coaction((2, 2, 3), a_shape(3, 2), 1)


def test_left_coaction_over_a3():
    b = shape_plus(delta(4), 1, 3)  # (2,2,4,4): no component equals 3
    assert validate(left_coaction(b, a_shape(4, 3), 1, P23))


def test_weights_golden():
    from qhecke.functors import apply_F, apply_word

    F2 = apply_F(2, weight_module((1, 1, 0)))
    ws = weight_decompose(F2)
    assert {a: len(v) for a, v in ws.items()} == {(1, 1, 0): 1, (1, 0, 1): 1}
    assert character(F2) == CharPoly(3, {(1, 1, 0): 1, (1, 0, 1): 1})
    F12 = apply_word(weight_module((1, 1, 0)), (2, 1))
    assert weights(F12) == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
    assert character(weight_module((1, 1, 0))) == CharPoly.monomial((1, 1, 0))


@pytest.mark.parametrize("b", [(1, 2, 3), (2, 2, 3), (1, 3, 3), (3, 3, 3)])
def test_weight_spaces_fill_the_module(b, params):
    M = right_coaction(b, delta(3), 2, params)
    assert sum(len(v) for v in weight_decompose(M).values()) == M.dim
    N, ws = weight_basis(M)
    assert validate(N) and len(ws) == M.dim


def test_hom_space_between_lines():
    a, b = weight_module((1, 1, 0)), weight_module((1, 0, 1))
    assert len(hom_space(a, a)) == 1
    assert hom_space(a, b) == []
    assert find_isomorphism(a, b) is None


def test_json_round_trip():
    M = explicit_F2_k110()
    back = Comodule.from_json(M.to_json(), ParamSpec())
    assert back.coaction == M.coaction and back.side == M.side
    L = left_coaction(a_shape(3, 1), delta(3), 1, P23)
    back = Comodule.from_json(L.to_json(), P23)
    assert back.coaction == L.coaction and back.side == "left"


def exact_cases(n=3, rmax=3):
    for b in product(range(1, n + 1), repeat=n):
        if any(b[k] > b[k + 1] for k in range(n - 1)):
            continue
        for l in range(1, n + 1):
            b2 = list(b)
            b2[l - 1] -= 1
            if b2[l - 1] < 1 or any(b2[k] > b2[k + 1] for k in range(n - 1)):
                continue
            for r in range(rmax + 1):
                yield b, l, r


def test_exact_sequence_examples():
    rep = check_exact_sequence(a_shape(3, 2), 2, 2)
    assert rep.dims == (7, 28, 21) and rep.passed
    rep0 = check_exact_sequence((2, 3, 3), 2, 0)
    assert rep0.dims == (0, 1, 1) and rep0.passed
    assert check_exact_sequence((2, 3, 3), 2, 1).passed


@pytest.mark.parametrize("spec", [ParamSpec(1, 1), P23], ids=["1,1", "2,3"])
def test_exact_sequences_all(spec):
    for b, l, r in exact_cases():
        rep = check_exact_sequence(b, l, r, spec)
        assert rep.passed, (b, l, r, rep.failed())


@pytest.mark.parametrize("b,l", [((2, 3, 3), 2), ((3, 3, 3), 1), ((1, 3, 3), 2)])
def test_character_additive_on_exact_sequence(b, l):
    for r in (1, 2, 3):
        b2 = list(b)
        b2[l - 1] -= 1
        mid = character(right_coaction(b, delta(3), r))
        low = character(right_coaction(b, delta(3), r - 1))
        top = character(right_coaction(tuple(b2), delta(3), r))
        e = [0, 0, 0]
        e[b[l - 1] - 1] = 1
        assert mid == CharPoly.monomial(e) * low + top
