import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padic_frobenius.errors import DivisionByZero, NotPadicInteger, PrecisionExhausted
from padic_frobenius.finite_field import field_create
from padic_frobenius.padic import (
    GammaTable,
    PadicNum,
    default_precision,
    floor,
    frac,
    gamma_direct,
    gamma_p,
    gamma_table,
    padic_context,
    rat_to_padic,
    teichmuller,
)


def ctx_of(p, N, r=1):
    return padic_context(field_create(p, r), N)


def test_floor_frac_examples():
    assert frac(Fraction(-1, 3)) == Fraction(2, 3)
    assert floor(Fraction(-1, 3)) == -1
    assert frac(Fraction(7, 3)) == Fraction(1, 3)
    assert floor(Fraction(7, 3)) == 2


@given(st.fractions())
def test_floor_frac_decomposition(x):
    assert floor(x) + frac(x) == x
    assert 0 <= frac(x) < 1


def test_arith_examples():
    c5 = ctx_of(5, 4)
    s = PadicNum.from_int(c5, 2) + PadicNum.from_int(c5, 3)
    assert s.valuation == 1 and s.unit[0] == 1
    d = PadicNum.from_int(c5, 1) / PadicNum.from_int(c5, 5)
    assert d.valuation == -1 and d.unit[0] == 1
    c7 = ctx_of(7, 3)
    x = rat_to_padic(3 * 49, c7)
    y = rat_to_padic(Fraction(2, 7), c7)
    prod = x * y
    assert prod.valuation == 1 and prod.unit[0] == 6


def test_division_by_zero():
    c = ctx_of(5, 4)
    with pytest.raises(DivisionByZero):
        c.one() / c.zero()


def test_precision_guard():
    c = ctx_of(5, 6)
    a = rat_to_padic(1, c)
    b = rat_to_padic(1 - 5 ** 5, c)
    with pytest.raises(PrecisionExhausted):
        a - b
    # exact cancellation is not an error: the result is O(p^N)
    z = a - a
    assert z.is_zero and not z.is_exact_zero and z.absprec == 6


def test_rat_to_padic_examples():
    c = ctx_of(5, 2)
    x = rat_to_padic(Fraction(1, 3), c)
    assert x.valuation == 0 and x.unit[0] == 17
    for p, N in [(5, 2), (7, 3), (11, 4)]:
        m1 = rat_to_padic(-1, ctx_of(p, N))
        assert m1.valuation == 0 and m1.unit[0] == p ** N - 1
    ten = rat_to_padic(10, ctx_of(5, 3))
    assert ten.valuation == 1 and ten.unit[0] == 2


@settings(max_examples=200)
@given(st.integers(-10**6, 10**6), st.integers(1, 10**4), st.integers(-10**6, 10**6),
       st.integers(1, 10**4))
def test_embedding_is_additive_and_multiplicative(n1, d1, n2, d2):
    c = ctx_of(7, 6)
    x, y = Fraction(n1, d1), Fraction(n2, d2)
    if x == 0 or y == 0:
        return
    ex, ey = rat_to_padic(x, c), rat_to_padic(y, c)
    assert (ex * ey).agrees_with(rat_to_padic(x * y, c))
    if x + y != 0:
        try:
            s = ex + ey
        except PrecisionExhausted:
            return
        assert s.agrees_with(rat_to_padic(x + y, c))


def test_teichmuller_examples():
    c = ctx_of(5, 2)
    F = c.field
    assert teichmuller(F(1), c) == 1
    assert teichmuller(F(-1), c).unit[0] == 24
    assert teichmuller(F(2), c).unit[0] == 7
    assert teichmuller(F(0), c).is_exact_zero


@pytest.mark.parametrize("p,r", [(5, 1), (7, 1), (13, 1), (5, 2), (7, 2)])
def test_teichmuller_properties(p, r):
    F = field_create(p, r)
    c = padic_context(F)
    for x in F.elements()[1:]:
        w = teichmuller(x, c)
        assert (w ** (F.q - 1)).agrees_with(1)
        assert tuple(u % p for u in w.unit) == x.coeffs
        for y in F.elements()[1:]:
            assert (w * teichmuller(y, c)).agrees_with(teichmuller(x * y, c))


def test_gamma_examples():
    c = ctx_of(5, 2)
    assert gamma_p(0, c) == 1
    assert gamma_p(3, c).unit[0] == 23
    # 1/2 = 13 mod 25
    expected = -(1 * 2 * 3 * 4 * 6 * 7 * 8 * 9 * 11 * 12) % 25
    assert gamma_p(Fraction(1, 2), c).unit[0] == expected
    t = gamma_table(c)
    assert t[0] == 1 and t[1] == 24 and t[5] == 1
    with pytest.raises(NotPadicInteger):
        gamma_p(Fraction(1, 5), c)


@pytest.mark.parametrize("p,N", [(5, 4), (7, 3), (11, 3)])
def test_gamma_table_matches_direct_product(p, N):
    table = gamma_table(ctx_of(p, N))
    rng = random.Random(p * N)
    for n in [0, 1, 2, p, p + 1] + [rng.randrange(p ** N) for _ in range(100)]:
        assert table[n] == gamma_direct(n, p, N)


@pytest.mark.parametrize("p,N", [(5, 5), (7, 4), (13, 3)])
def test_block_method_matches_table(p, N):
    full = GammaTable(p, N)
    blocks = GammaTable(p, N, bound=1)
    assert blocks.table is None
    rng = random.Random(N)
    for n in [0, 1, p - 1, p, p ** 2, p ** N - 1] + [rng.randrange(p ** N) for _ in range(200)]:
        assert blocks[n] == full[n]


def test_functional_equation():
    p, N = 7, 3
    t = gamma_table(ctx_of(p, N))
    m = p ** N
    for n in range(1, m - 1):
        expected = -n * t[n] if n % p else -t[n]
        assert t[n + 1] == expected % m


@pytest.mark.parametrize("p,r", [(5, 1), (7, 1), (5, 2)])
def test_reflection_on_grid(p, r):
    F = field_create(p, r)
    c = padic_context(F)
    for j in range(F.q - 1):
        x = Fraction(j, F.q - 1)
        x0 = x.numerator * pow(x.denominator, -1, p) % p or p
        assert (gamma_p(x, c) * gamma_p(1 - x, c)).agrees_with((-1) ** x0)


@pytest.mark.parametrize("p,r", [(5, 1), (7, 1), (5, 2)])
def test_precision_contract(p, r):
    F = field_create(p, r)
    c = padic_context(F)
    hi = c.with_precision(c.N + 2)
    for j in range(F.q - 1):
        x = Fraction(j, F.q - 1)
        assert gamma_p(x, hi).truncate(c.N).encoding() == gamma_p(x, c).encoding()
    for x in F.elements()[1:]:
        assert teichmuller(x, hi).truncate(c.N).encoding() == teichmuller(x, c).encoding()


def test_default_precision_covers_hasse_window():
    for p, r in [(5, 1), (7, 1), (23, 1), (5, 2), (7, 2), (13, 2)]:
        q = p ** r
        N = default_precision(q, p, r)
        assert p ** (N - r - 2) > 4 * q ** 0.5


def test_inexact_zero_propagation():
    c = ctx_of(5, 4)
    z = c.one() - c.one()
    assert z.is_zero and z.absprec == 4
    w = z * rat_to_padic(Fraction(1, 25), c)
    assert w.absprec == 2
    assert (z + c.one()).agrees_with(1)


def test_repr_and_negative_powers():
    c = ctx_of(5, 3)
    x = rat_to_padic(Fraction(2, 5), c)
    assert repr(x) == "2 * 5^-1 + O(5^2)"
    assert (x ** -2 * x ** 2).agrees_with(1)
