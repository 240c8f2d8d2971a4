from __future__ import annotations

import pytest
from helpers import explicit_F2_k110, explicit_F1F2_k110

from qhecke.comod import (
    direct_sum,
    regular,
    right_coaction,
    weight_module,
)
from qhecke.coalg import delta, graded_coalgebra
from qhecke.exactmath import ParamSpec, ShapeMismatch
from qhecke.functors import apply_F, apply_word
from qhecke.schur import comodule_to_module, module_to_comodule, schur_algebra


@pytest.mark.parametrize("n,r", [(1, 0), (1, 3), (2, 1), (2, 2), (3, 1), (3, 2), (2, 3)])
def test_associative_with_unit(n, r, params):
    A = schur_algebra(n, r, params)
    assert A.is_associative() and A.unit_ok()


def test_dimensions():
    assert schur_algebra(2, 1).dim == 3
    assert schur_algebra(1, 5).dim == 1
    assert schur_algebra(3, 2).dim == 21


def test_borel_table_n2():
    A = schur_algebra(2, 1)
    x11, x21 = A.index(((1, 1),)), A.index(((2, 1),))
    assert A.multiply({x21: 1}, {x11: 1}) == {x21: 1}
    assert A.multiply({x11: 1}, {x21: 1}) == {}
    assert A.unit == {x11: 1, A.index(((2, 2),)): 1}
    assert sorted(A.weight_idempotents()) == sorted([x11, A.index(((2, 2),))])


def test_weight_idempotents_orthogonal():
    A = schur_algebra(3, 2, ParamSpec(2, 3))
    es = A.weight_idempotents()
    for a in es:
        for b in es:
            assert A.multiply({a: 1}, {b: 1}) == ({a: 1} if a == b else {})


def golden():
    k = weight_module((1, 1, 0))
    return [k, apply_F(1, k), apply_F(2, k), apply_word(k, (2, 1)), explicit_F2_k110(), explicit_F1F2_k110()]


def test_round_trip_on_golden_comodules():
    for M in golden():
        mod = comodule_to_module(M)
        assert mod.is_module()
        back = module_to_comodule(mod)
        assert back.coaction == M.coaction


def test_round_trip_larger(params):
    C = graded_coalgebra(3, delta(3), 2, params)
    for M in (regular(C), right_coaction((2, 2, 3), delta(3), 2, params),
              direct_sum(weight_module((2, 0, 0), params), weight_module((0, 1, 1), params))):
        assert module_to_comodule(comodule_to_module(M)).coaction == M.coaction


def test_rejects_non_borel():
    M = right_coaction((2, 2, 3), (2, 2, 3), 1)
    with pytest.raises(ShapeMismatch):
        comodule_to_module(M)


def test_json():
    d = schur_algebra(2, 1).to_json()
    assert d["dim"] == 3 and d["associative"] and d["unit_ok"]
    assert {"left": 1, "right": 0, "result": [{"basis": 1, "coeff": "1"}]} in d["products"]
