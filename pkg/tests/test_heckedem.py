from __future__ import annotations

import random
from itertools import permutations, product

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from qhecke.charpoly import CharPoly
from qhecke.heckedem import (
    HeckeElement,
    Permutation,
    compare_character,
    demazure,
    demazure_word,
    hecke_of_word,
    hecke_product,
    licensed,
    reduced_word,
)

X = sympy.symbols("x1:5")


def to_sympy(f: CharPoly):
    return sum((c * sympy.prod([X[i] ** e for i, e in enumerate(a)]) for a, c in f.terms.items()), sympy.Integer(0))


def sympy_demazure(i, expr):
    xi, xj = X[i - 1], X[i]
    swapped = expr.subs({xi: xj, xj: xi}, simultaneous=True)
    q, r = sympy.div(sympy.expand(xi * expr - xj * swapped), xi - xj, *X)
    assert r == 0
    return sympy.expand(q)


def all_perms(n):
    return [Permutation(p) for p in permutations(range(1, n + 1))]


def test_permutation_basics():
    assert Permutation((3, 1, 2)).length() == 2
    assert Permutation.longest(4).length() == 6
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))


def test_hecke_rules():
    T1 = HeckeElement.simple(1, 3)
    T2 = HeckeElement.simple(2, 3)
    assert T1 * T1 == T1
    assert T1 * T2 == HeckeElement(Permutation.simple(1, 3) * Permutation.simple(2, 3))
    w0 = HeckeElement(Permutation.longest(3))
    for i in (1, 2):
        assert w0 * HeckeElement.simple(i, 3) == w0
    assert hecke_product(hecke_product(T1, T2), T1) == w0 == hecke_of_word((1, 2, 1, 2), 3)


def test_reduced_words():
    assert reduced_word(Permutation.identity(3)) == []
    assert reduced_word(Permutation.simple(1, 3)) == [1]
    assert reduced_word(Permutation((3, 2, 1))) == [1, 2, 1]
    for n in (3, 4):
        for w in all_perms(n):
            word = reduced_word(w)
            assert len(word) == w.length()
            p = Permutation.identity(n)
            for k in reversed(word):
                p = p.left_mul(k)
            assert p == w


def test_reduced_word_is_lexicographically_smallest():
    n = 4
    for w in all_perms(n):
        best = None
        for word in product(range(1, n), repeat=w.length()):
            p = Permutation.identity(n)
            for k in reversed(word):
                p = p.left_mul(k)
            if p == w:
                best = list(word)
                break
        assert reduced_word(w) == best


def test_hecke_associative_and_unital():
    els = [HeckeElement(w) for w in all_perms(3)]
    e = HeckeElement.identity(3)
    for a in els:
        assert a * e == a == e * a
        for b in els:
            for c in els:
                assert (a * b) * c == a * (b * c)
    rng = random.Random(0)
    els4 = [HeckeElement(w) for w in all_perms(4)]
    for _ in range(300):
        a, b, c = (rng.choice(els4) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_demazure_examples():
    assert demazure(1, CharPoly.one(3)) == CharPoly.one(3)
    assert demazure(2, CharPoly.monomial((1, 1, 0))) == CharPoly(3, {(1, 1, 0): 1, (1, 0, 1): 1})
    assert demazure(1, CharPoly(3, {(1, 1, 0): 1, (1, 0, 1): 1})) == CharPoly(3, {(1, 1, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1})
    assert demazure_word((), CharPoly.monomial((2, 1, 0))) == CharPoly.monomial((2, 1, 0))
    f = CharPoly.monomial((2, 1, 0))
    assert demazure_word((1, 2, 1), f) == demazure_word((2, 1, 2), f)


def monomials(n, dmax):
    for a in product(range(dmax + 1), repeat=n):
        if sum(a) <= dmax:
            yield a


@pytest.mark.parametrize("n", [2, 3, 4])
def test_demazure_matches_division(n):
    for a in monomials(n, 4 if n < 4 else 3):
        f = CharPoly.monomial(a)
        for i in range(1, n):
            assert to_sympy(demazure(i, f)) == sympy_demazure(i, to_sympy(f)), (a, i)


@pytest.mark.parametrize("n", [3, 4])
def test_zero_hecke_relations(n):
    for a in monomials(n, 4):
        f = CharPoly.monomial(a)
        for i in range(1, n):
            once = demazure(i, f)
            assert demazure(i, once) == once
            if i + 1 < n:
                assert demazure_word((i, i + 1, i), f) == demazure_word((i + 1, i, i + 1), f)
            for j in range(i + 2, n):
                assert demazure_word((i, j), f) == demazure_word((j, i), f)


@given(st.lists(st.integers(1, 3), max_size=6), st.lists(st.integers(1, 3), max_size=6),
       st.tuples(*[st.integers(0, 3)] * 4))
def test_demazure_depends_only_on_hecke_element(w1, w2, a):
    f = CharPoly.monomial(a)
    if hecke_of_word(w1, 4) == hecke_of_word(w2, 4):
        assert demazure_word(w1, f) == demazure_word(w2, f)
    h = hecke_of_word(w1, 4)
    assert demazure_word(w1, f) == demazure_word(list(reversed(reduced_word(h.perm))), f)


def test_charpoly_arithmetic_and_json():
    f = CharPoly(3, {(1, 0, 0): 2, (0, 1, 1): -1})
    g = CharPoly.monomial((0, 0, 1))
    assert f * g == CharPoly(3, {(1, 0, 1): 2, (0, 1, 2): -1})
    assert f - f == CharPoly(3)
    assert CharPoly.from_json(f.to_json()) == f
    assert str(f) == "2*x1 - x2*x3"
    assert f.evaluate([1, 2, 3]) == -4


def test_licensing():
    assert licensed(2, [(1, 1, 0), (1, 0, 1)])
    assert not licensed(2, [(1, 0, 2)])


@pytest.mark.parametrize("word,expected", [
    ((2,), {(1, 1, 0): 1, (1, 0, 1): 1}),
    ((2, 1), {(1, 1, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1}),
    ((1,), {(1, 1, 0): 1}),
])
def test_compare_character_golden(word, expected):
    rep = compare_character(word, (1, 1, 0), 3)
    assert rep.passed
    assert rep.character == CharPoly(3, expected) == rep.expected


def test_compare_character_marks_unlicensed_steps():
    rep = compare_character((1, 2, 2), (2, 1, 0), 3)
    assert [s.status for s in rep.steps] == ["pass", "pass", "unverified"]
    assert rep.status == "unverified"
    assert rep.to_json()["status"] == "unverified"
