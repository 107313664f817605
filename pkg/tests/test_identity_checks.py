from fractions import Fraction

import pytest

from padic_frobenius.errors import BadInput, NotPadicInteger
from padic_frobenius.finite_field import field_create
from padic_frobenius.identity_checks import (
    check_lemma31,
    check_lemma32,
    check_lemma33,
    check_product_formula,
    check_reflection,
    floor_lemma_grid,
    gamma_identity_grid,
    lemma32_sides,
    lemma33_sides,
)
from padic_frobenius.padic import padic_context


def ctx(p, r=1):
    return padic_context(field_create(p, r))


def test_product_formula_examples():
    c = ctx(5)
    res = check_product_formula(1, Fraction(1, 4), c)
    assert res and res.lhs.encoding() == res.rhs.encoding()
    assert check_product_formula(2, 0, c)
    with pytest.raises(BadInput):
        check_product_formula(3, Fraction(1, 2) / 7, c)
    with pytest.raises(BadInput):
        check_product_formula(5, 0, c)


def test_reflection_examples():
    c5 = ctx(5)
    res = check_reflection(0, c5)
    assert res and res.rhs.agrees_with(-1)
    assert check_reflection(Fraction(1, 2), ctx(7))
    assert check_reflection(3, c5)
    with pytest.raises(NotPadicInteger):
        check_reflection(Fraction(1, 5), c5)


def test_lemma31_examples():
    c5, c7 = ctx(5), ctx(7)
    for j in range(4):
        assert check_lemma31(1, j, "eq8", c5)
        assert check_lemma31(1, j, "eq9", c5)
    assert check_lemma31(2, 1, "eq8", c5)
    assert check_lemma31(3, 4, "eq9", c7)
    with pytest.raises(BadInput):
        check_lemma31(5, 1, "eq8", c5)
    with pytest.raises(BadInput):
        check_lemma31(2, 4, "eq8", c5)
    with pytest.raises(BadInput):
        check_lemma31(2, 1, "eq10", c5)


def test_floor_lemma_examples():
    assert lemma32_sides(1, 0, 7, 7, 1) == (0, 0)
    assert check_lemma32(3, 0, ctx(7))
    assert check_lemma32(13, 1, ctx(5, 2))
    assert lemma33_sides(0, 0, 7, 7, 1) == (0, 0)
    assert lemma33_sides(0, 1, 25, 5, 2) == (0, 0)
    assert check_lemma33(2, 0, ctx(5))
    assert check_lemma33(30, 1, ctx(7, 2))
    with pytest.raises(BadInput):
        check_lemma32(0, 0, ctx(7))
    with pytest.raises(BadInput):
        check_lemma33(1, 1, ctx(7))


@pytest.mark.parametrize("p,r", [(5, 1), (7, 2), (11, 2), (5, 3)])
def test_floor_grids(p, r):
    assert all(floor_lemma_grid(p, r))


@pytest.mark.parametrize("p,r", [(5, 1), (7, 1), (13, 1), (5, 2)])
def test_gamma_grids(p, r):
    c = ctx(p, r)
    assert all(gamma_identity_grid(c))
