"""Trace of Frobenius through special values of 2G2.

Each ``trace_*`` function evaluates q * phi(.) * 2G2[...] as a p-adic number
and decodes it to the unique integer of the Hasse window congruent to it.
The curve transformations x -> x + k and x -> x + h that turn y^2 = x^3+ax+b
into the E1 / E2 shapes are exposed separately so the sweeps can check that
they preserve the point count.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DegenerateCurve,
    JInvariant1728,
    JInvariantZero,
    NoHasseInteger,
    PrecisionExhausted,
)
from .finite_field import (
    E1,
    E2,
    FqElem,
    ShortW,
    WeierstrassCurve,
    cubic_roots,
    hasse_bound,
    quadratic_character,
    sqrt_in_fq,
    trace_bruteforce,
)
from .gfunction import GammaCache, GArgs, GValue, evaluate_G
from .padic import PadicCtx, PadicNum, padic_context

HALF_HALF = (Fraction(1, 2), Fraction(1, 2))
THIRDS = (Fraction(1, 3), Fraction(2, 3))
QUARTERS = (Fraction(1, 4), Fraction(3, 4))


class Method(enum.Enum):
    BruteForce = "brute"
    Thm12 = "thm12"
    Thm13 = "thm13"
    Thm14 = "thm14"
    ThmE1 = "thmE1"
    ThmE2 = "thmE2"


@dataclass
class TraceReport:
    curve: WeierstrassCurve
    method: Method
    applicable: bool
    value: int | None = None
    gvalue: GValue | None = None
    details: str = ""
    scaled: PadicNum | None = field(default=None, repr=False)


def padic_to_hasse_integer(v: PadicNum, q: int) -> int | None:
    """The integer z with |z| <= floor(2 sqrt q) and z = v mod p^absprec(v).

    Raises PrecisionExhausted when p^absprec is too small for the window to
    contain at most one candidate.
    """
    bound = hasse_bound(q)
    if v.is_exact_zero:
        return 0
    p = v.ctx.p
    if v.absprec == float("inf"):
        raise PrecisionExhausted("value carries no precision bound")  # pragma: no cover
    m = p ** v.absprec
    if m <= 2 * bound:
        raise PrecisionExhausted(
            f"p^{v.absprec} = {m} cannot separate the Hasse window [-{bound}, {bound}]")
    if v.unit is not None and (v.valuation < 0 or any(v.unit[1:])):
        return None
    z = v.residue()
    if z > m // 2:
        z -= m
    return z if abs(z) <= bound else None


def _ctx_for(x: FqElem, ctx: PadicCtx | None) -> PadicCtx:
    return padic_context(x.ctx) if ctx is None else ctx


def _decode(curve, method, t, upper, lower, phi, ctx, cache, details) -> TraceReport:
    gval = evaluate_G(GArgs(upper, lower, t, ctx), cache)
    scaled = gval.value * (ctx.q * phi)
    value = padic_to_hasse_integer(scaled, ctx.q)
    if value is None:
        raise NoHasseInteger(f"{method.value} on {curve!r}: {scaled!r} has no Hasse representative")
    return TraceReport(curve, method, True, value, gval, details, scaled)


def transform_to_E1(a: FqElem, b: FqElem):
    """Shift x -> x + k with 3k^2 + a = 0; returns (k, E1 curve) or None."""
    if not a:
        raise JInvariantZero("a = 0 (j = 0) has no E1 model")
    k = sqrt_in_fq(-a / 3)
    if k is None:
        return None
    return k, E1(3 * k, k ** 3 + a * k + b)


def transform_to_E2(a: FqElem, b: FqElem):
    """Shift x -> x + h with h a (smallest) root of x^3 + a x + b; returns (h, E2) or None."""
    if not b:
        raise JInvariant1728("b = 0 (j = 1728) has no E2 model")
    roots = cubic_roots(a, b)
    if not roots:
        return None
    h = roots[0]
    return h, E2(3 * h, 3 * h * h + a)


def _require_nonsingular(curve: WeierstrassCurve):
    if not curve.is_nonsingular():
        raise DegenerateCurve(f"{curve!r} is singular")


def trace_thm_E1(c: FqElem, d: FqElem, ctx: PadicCtx | None = None,
                 cache: GammaCache | None = None) -> TraceReport:
    """a_q(y^2 = x^3 + c x^2 + d) = q phi(d) 2G2[1/2,1/2; 1/3,2/3 | -27d/(4c^3)]."""
    curve = E1(c, d)
    if not c:
        raise DegenerateCurve("E1 needs c != 0")
    _require_nonsingular(curve)
    ctx = _ctx_for(c, ctx)
    t = -27 * d / (4 * c ** 3)
    return _decode(curve, Method.ThmE1, t, HALF_HALF, THIRDS, quadratic_character(d),
                   ctx, cache, f"t={t!r}")


def trace_thm_E2(f: FqElem, g: FqElem, ctx: PadicCtx | None = None,
                 cache: GammaCache | None = None, corrected: bool = False) -> TraceReport:
    """a_q(y^2 = x^3 + f x^2 + g x) = q phi(-g) 2G2[1/2,1/2; 1/4,3/4 | 4g/f^2].

    As printed this misses a factor phi(f): x -> f X turns E2(f, g) into the
    twist by phi(f) of E2(1, g/f^2) while leaving t and phi(-g) unchanged.
    ``corrected=True`` includes the factor.
    """
    curve = E2(f, g)
    if not f:
        raise DegenerateCurve("E2 needs f != 0")
    _require_nonsingular(curve)
    ctx = _ctx_for(f, ctx)
    t = 4 * g / (f * f)
    sign = quadratic_character(-g)
    if corrected:
        sign *= quadratic_character(f)
    return _decode(curve, Method.ThmE2, t, HALF_HALF, QUARTERS, sign, ctx, cache,
                   f"t={t!r}" + (" corrected" if corrected else ""))


def trace_thm12(a: FqElem, b: FqElem, ctx: PadicCtx | None = None,
                cache: GammaCache | None = None) -> TraceReport:
    """a_q = phi(b) q 2G2[1/4,3/4; 1/3,2/3 | -27b^2/(4a^3)] for j != 0, 1728."""
    curve = ShortW(a, b)
    if not a:
        raise JInvariantZero("Theorem needs j != 0 (a != 0)")
    if not b:
        raise JInvariant1728("Theorem needs j != 1728 (b != 0)")
    _require_nonsingular(curve)
    ctx = _ctx_for(a, ctx)
    t = -27 * b * b / (4 * a ** 3)
    return _decode(curve, Method.Thm12, t, QUARTERS, THIRDS, quadratic_character(b),
                   ctx, cache, f"t={t!r}")


def trace_thm13(a: FqElem, b: FqElem, ctx: PadicCtx | None = None,
                cache: GammaCache | None = None, k: FqElem | None = None) -> TraceReport:
    """Formula through a square root k of -a/3; not applicable if none exists.

    ``k`` may be supplied to test the other root.
    """
    curve = ShortW(a, b)
    if not a:
        raise JInvariantZero("Theorem needs j != 0 (a != 0)")
    _require_nonsingular(curve)
    if k is None:
        found = transform_to_E1(a, b)
        if found is None:
            return TraceReport(curve, Method.Thm13, False, details="-a/3 is a non-residue")
        k = found[0]
    elif 3 * k * k + a != 0:
        raise ValueError("k must satisfy 3k^2 + a = 0")
    ctx = _ctx_for(a, ctx)
    s = k ** 3 + a * k + b
    assert s, "nonsingularity forces k^3 + a k + b != 0"
    t = -s / (4 * k ** 3)
    return _decode(curve, Method.Thm13, t, HALF_HALF, THIRDS, quadratic_character(s),
                   ctx, cache, f"k={k!r} t={t!r}")


def trace_thm14(a: FqElem, b: FqElem, ctx: PadicCtx | None = None,
                cache: GammaCache | None = None, h: FqElem | None = None,
                corrected: bool = False) -> TraceReport:
    """Formula through a root h of x^3 + a x + b; not applicable if none exists.

    Inherits the missing phi(f) = phi(3h) of :func:`trace_thm_E2`;
    ``corrected=True`` restores it.
    """
    curve = ShortW(a, b)
    if not b:
        raise JInvariant1728("Theorem needs j != 1728 (b != 0)")
    _require_nonsingular(curve)
    if h is None:
        found = transform_to_E2(a, b)
        if found is None:
            return TraceReport(curve, Method.Thm14, False, details="cubic has no root")
        h = found[0]
    elif h ** 3 + a * h + b != 0:
        raise ValueError("h must be a root of x^3 + a x + b")
    ctx = _ctx_for(a, ctx)
    s = 3 * h * h + a
    assert s, "nonsingularity forces 3h^2 + a != 0"
    t = 4 * s / (9 * h * h)
    sign = quadratic_character(-s)
    if corrected:
        sign *= quadratic_character(3 * h)
    return _decode(curve, Method.Thm14, t, HALF_HALF, QUARTERS, sign, ctx, cache,
                   f"h={h!r} t={t!r}" + (" corrected" if corrected else ""))


def trace_brute_report(curve: WeierstrassCurve) -> TraceReport:
    return TraceReport(curve, Method.BruteForce, True, trace_bruteforce(curve))


@dataclass
class CorollaryReport:
    a: FqElem
    b: FqElem
    k_branch: str
    h_branch: str
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return "fail" not in (self.k_branch, self.h_branch)


def check_corollary15(a: FqElem, b: FqElem, ctx: PadicCtx | None = None,
                      cache: GammaCache | None = None, all_roots: bool = False,
                      corrected: bool = False) -> CorollaryReport:
    """Compare 2G2[1/4,3/4; 1/3,2/3 | -27b^2/(4a^3)] with the two rewritten forms.

    Each branch is ``pass``, ``fail`` or ``not-applicable``.  With
    ``all_roots`` every k and every h is tried, not just the smallest.
    ``corrected`` multiplies the h-branch by phi(3h), see :func:`trace_thm14`.
    """
    curve = ShortW(a, b)
    if not a or not b:
        raise DegenerateCurve("need a, b nonzero")
    _require_nonsingular(curve)
    ctx = _ctx_for(a, ctx)
    cache = cache or GammaCache(ctx)
    lhs = evaluate_G(GArgs(QUARTERS, THIRDS, -27 * b * b / (4 * a ** 3), ctx), cache).value
    details = {"lhs": lhs}

    ks = []
    k0 = sqrt_in_fq(-a / 3)
    if k0 is not None:
        ks = [k0, -k0] if all_roots and k0 else [k0]
    k_status = "not-applicable"
    for k in ks:
        s = k ** 3 + a * k + b
        rhs = evaluate_G(GArgs(HALF_HALF, THIRDS, -s / (4 * k ** 3), ctx), cache).value
        rhs = rhs * quadratic_character(b * s)
        details[f"k={k!r}"] = rhs
        ok = lhs.agrees_with(rhs)
        k_status = "pass" if ok and k_status != "fail" else "fail"

    hs = cubic_roots(a, b)
    if not all_roots:
        hs = hs[:1]
    h_status = "not-applicable"
    for h in hs:
        s = 3 * h * h + a
        rhs = evaluate_G(GArgs(HALF_HALF, QUARTERS, 4 * s / (9 * h * h), ctx), cache).value
        rhs = rhs * quadratic_character(-b * s * (3 * h if corrected else 1))
        details[f"h={h!r}"] = rhs
        ok = lhs.agrees_with(rhs)
        h_status = "pass" if ok and h_status != "fail" else "fail"
    return CorollaryReport(a, b, k_status, h_status, details)
