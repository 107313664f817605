import itertools

import pytest

from padic_frobenius.errors import DegenerateCurve, JInvariant1728, JInvariantZero, PrecisionExhausted
from padic_frobenius.finite_field import E1, E2, ShortW, field_create, quadratic_character, trace_bruteforce
from padic_frobenius.gfunction import GammaCache
from padic_frobenius.padic import PadicNum, padic_context
from padic_frobenius.trace_formulas import (
    Method,
    check_corollary15,
    padic_to_hasse_integer,
    trace_brute_report,
    trace_thm12,
    trace_thm13,
    trace_thm14,
    trace_thm_E1,
    trace_thm_E2,
    transform_to_E1,
    transform_to_E2,
)

F5, F7 = field_create(5), field_create(7)


def test_transform_examples():
    k, e1 = transform_to_E1(F7(2), F7(1))
    assert k == 2 and (e1.c, e1.d) == (6, 6)
    assert transform_to_E1(F5(1), F5(1)) is None
    assert trace_bruteforce(ShortW(F7(2), F7(1))) == trace_bruteforce(e1) == 3
    h, e2 = transform_to_E2(F7(2), F7(4))
    assert h == 1 and (e2.f, e2.g) == (3, 5)
    assert transform_to_E2(F5(1), F5(1)) is None
    assert trace_bruteforce(ShortW(F7(2), F7(4))) == trace_bruteforce(e2) == -2
    with pytest.raises(JInvariantZero):
        transform_to_E1(F7(0), F7(1))
    with pytest.raises(JInvariant1728):
        transform_to_E2(F7(1), F7(0))


def test_E1_examples():
    assert trace_thm_E1(F7(6), F7(6)).value == 3
    # 4 c^3 d + 27 d^2 = 135 = 0 mod 5, so E1(3, 1) over F_5 is singular
    with pytest.raises(DegenerateCurve):
        trace_thm_E1(F5(3), F5(1))
    rep = trace_thm_E1(F5(3), F5(2))
    assert rep.value == trace_bruteforce(E1(F5(3), F5(2)))
    bad_d = F5(-4) / 27
    with pytest.raises(DegenerateCurve):
        trace_thm_E1(F5(1), bad_d)
    with pytest.raises(DegenerateCurve):
        trace_thm_E1(F5(0), F5(1))


def test_E2_examples():
    # E2(3, 5) over F_7 has trace -2; the formula as printed gives +2
    # because it omits phi(f) = phi(3) = -1.
    assert trace_bruteforce(E2(F7(3), F7(5))) == -2
    assert trace_thm_E2(F7(3), F7(5)).value == 2
    assert trace_thm_E2(F7(3), F7(5), corrected=True).value == -2
    with pytest.raises(DegenerateCurve):
        trace_thm_E2(F5(2), F5(1))
    rep = trace_thm_E2(F5(1), F5(1))
    assert rep.value == trace_bruteforce(E2(F5(1), F5(1)))


def test_thm13_examples():
    rep = trace_thm13(F7(2), F7(1))
    assert rep.applicable and rep.value == 3
    assert rep.gvalue.args.t == 2
    assert not trace_thm13(F5(1), F5(1)).applicable
    with pytest.raises(JInvariantZero):
        trace_thm13(F7(0), F7(1))


def test_thm14_examples():
    rep = trace_thm14(F7(2), F7(4))
    assert rep.applicable and rep.gvalue.args.t == 3
    assert rep.value == 2
    assert trace_thm14(F7(2), F7(4), corrected=True).value == -2
    assert not trace_thm14(F5(1), F5(1)).applicable
    with pytest.raises(JInvariant1728):
        trace_thm14(F7(1), F7(0))


def test_thm12_examples():
    rep = trace_thm12(F5(1), F5(1))
    assert rep.value == -3 and rep.gvalue.args.t == 2
    assert trace_thm12(F7(2), F7(1)).value == 3
    with pytest.raises(JInvariantZero):
        trace_thm12(F7(0), F7(1))
    with pytest.raises(JInvariant1728):
        trace_thm12(F7(1), F7(0))
    assert trace_brute_report(ShortW(F7(2), F7(1))).method is Method.BruteForce


def test_corollary_examples():
    rep = check_corollary15(F7(2), F7(1))
    assert rep.k_branch == "pass"
    rep = check_corollary15(F7(2), F7(4), corrected=True)
    assert rep.h_branch == "pass"
    rep = check_corollary15(F5(1), F5(1))
    assert (rep.k_branch, rep.h_branch) == ("not-applicable", "not-applicable")


def test_hasse_decoding_examples():
    c7 = padic_context(F7, 3)
    assert padic_to_hasse_integer(PadicNum.from_int(c7, 3), 7) == 3
    assert padic_to_hasse_integer(PadicNum.from_int(c7, 7 ** 3 - 2), 7) == -2
    c5 = padic_context(F5, 3)
    assert padic_to_hasse_integer(PadicNum.from_int(c5, 17), 5) is None
    with pytest.raises(PrecisionExhausted):
        padic_to_hasse_integer(PadicNum.from_int(padic_context(F5, 1), 1), 5)


@pytest.mark.parametrize("p,r", [(5, 1), (7, 1), (11, 1), (13, 1), (5, 2)])
def test_unaffected_formulas_match_brute_force(p, r):
    Fq = field_create(p, r)
    ctx = padic_context(Fq)
    cache = GammaCache(ctx)
    for a, b in itertools.product(Fq.elements(), repeat=2):
        curve = ShortW(a, b)
        if not curve.is_nonsingular():
            continue
        brute = trace_bruteforce(curve)
        values = []
        if a and b:
            values.append(trace_thm12(a, b, ctx, cache).value)
        if a:
            rep = trace_thm13(a, b, ctx, cache)
            if rep.applicable:
                values.append(rep.value)
                k, e1 = transform_to_E1(a, b)
                assert k ** 3 + a * k + b != 0
                assert trace_bruteforce(e1) == brute
        if b:
            rep = trace_thm14(a, b, ctx, cache, corrected=True)
            if rep.applicable:
                values.append(rep.value)
                h, e2 = transform_to_E2(a, b)
                assert 3 * h * h + a != 0
                assert trace_bruteforce(e2) == brute
        assert all(v == brute for v in values)


@pytest.mark.parametrize("p", [5, 7, 11])
def test_published_h_formula_is_off_by_phi_3h(p):
    """Document the missing factor: the ratio to brute force is exactly phi(3h)."""
    Fq = field_create(p)
    ctx = padic_context(Fq)
    cache = GammaCache(ctx)
    seen_wrong = False
    for a, b in itertools.product(Fq.elements(), Fq.elements()[1:]):
        if not ShortW(a, b).is_nonsingular():
            continue
        rep = trace_thm14(a, b, ctx, cache)
        if not rep.applicable:
            continue
        h = transform_to_E2(a, b)[0]
        brute = trace_bruteforce(ShortW(a, b))
        assert rep.value == quadratic_character(3 * h) * brute
        seen_wrong = seen_wrong or rep.value != brute
    assert seen_wrong


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_corrected_E_forms_exhaustive(p):
    Fq = field_create(p)
    ctx = padic_context(Fq)
    cache = GammaCache(ctx)
    for u, v in itertools.product(Fq.elements()[1:], Fq.elements()):
        if E1(u, v).is_nonsingular():
            assert trace_thm_E1(u, v, ctx, cache).value == trace_bruteforce(E1(u, v))
        if E2(u, v).is_nonsingular():
            rep = trace_thm_E2(u, v, ctx, cache, corrected=True)
            assert rep.value == trace_bruteforce(E2(u, v))


@pytest.mark.parametrize("p", [5, 7, 11])
def test_corollary_all_roots(p):
    Fq = field_create(p)
    ctx = padic_context(Fq)
    cache = GammaCache(ctx)
    for a, b in itertools.product(Fq.elements()[1:], repeat=2):
        if ShortW(a, b).is_nonsingular():
            rep = check_corollary15(a, b, ctx, cache, all_roots=True, corrected=True)
            assert rep.passed
            assert check_corollary15(a, b, ctx, cache, all_roots=True).k_branch != "fail"
