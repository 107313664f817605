"""Numerical checks of the Gamma_p product and reflection formulas and the
auxiliary identities used to evaluate the trace character sums.

Gamma identities are compared as p-adic numbers at the context precision;
the floor identities are exact integer statements.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadInput, NotPadicInteger
from .padic import PadicCtx, PadicNum, floor, frac, gamma_p, teichmuller


class Identity(enum.Enum):
    ProductFormula = "product-formula"
    Reflection = "reflection"
    Lemma31a = "lemma31-eq8"
    Lemma31b = "lemma31-eq9"
    Lemma32 = "lemma32"
    Lemma33 = "lemma33"
    Orthogonality = "orthogonality"
    GaussInverse = "gauss-inverse"
    ThetaExpansion = "theta-expansion"
    DavenportHasse = "davenport-hasse"


@dataclass
class IdentityResult:
    identity: Identity
    params: str
    lhs: object
    rhs: object
    passed: bool

    def __bool__(self):
        return self.passed


def _gamma_prod(args, ctx: PadicCtx) -> PadicNum:
    out = ctx.one()
    for x in args:
        out = out * gamma_p(frac(x), ctx)
    return out


def _omega_power(m: int, e: int, ctx: PadicCtx) -> PadicNum:
    """omega(m^e) for an integer m prime to p and any integer exponent e."""
    return teichmuller(ctx.field(m) ** e, ctx)


def check_product_formula(m: int, x, ctx: PadicCtx) -> IdentityResult:
    """prod_i prod_h Gamma(<(x+h)p^i/m>) = omega(m^((1-x)(1-q))) prod_i Gamma(<x p^i>) prod_h Gamma(<h p^i/m>)."""
    x = Fraction(x)
    p, r, q = ctx.p, ctx.r, ctx.q
    if m < 1 or m % p == 0:
        raise BadInput(f"m = {m} must be positive and prime to p")
    if not 0 <= x <= 1 or ((q - 1) * x).denominator != 1:
        raise BadInput(f"x = {x} must lie in [0, 1] with (q-1)x integral")
    lhs = _gamma_prod([(x + h) * p ** i / m for i in range(r) for h in range(m)], ctx)
    exponent = (1 - x) * (1 - q)
    assert exponent.denominator == 1
    rhs = _omega_power(m, int(exponent), ctx)
    rhs = rhs * _gamma_prod([x * p ** i for i in range(r)], ctx)
    rhs = rhs * _gamma_prod([Fraction(h * p ** i, m) for i in range(r) for h in range(1, m)], ctx)
    return IdentityResult(Identity.ProductFormula, f"q={q} m={m} x={x}", lhs, rhs,
                          lhs.agrees_with(rhs))


def check_reflection(x, ctx: PadicCtx) -> IdentityResult:
    """Gamma_p(x) Gamma_p(1-x) = (-1)^x0 with x0 in {1..p}, x0 = x mod p."""
    x = Fraction(x)
    p = ctx.p
    if x.denominator % p == 0:
        raise NotPadicInteger(f"{x} is not a {p}-adic integer")
    lhs = gamma_p(x, ctx) * gamma_p(1 - x, ctx)
    x0 = x.numerator * pow(x.denominator, -1, p) % p or p
    rhs = PadicNum.from_int(ctx, (-1) ** x0)
    return IdentityResult(Identity.Reflection, f"p={p} x={x} x0={x0}", lhs, rhs,
                          lhs.agrees_with(rhs))


def check_lemma31(t: int, j: int, variant: str, ctx: PadicCtx) -> IdentityResult:
    """Both product identities for Gamma_p at shifted arguments j/(q-1).

    ``variant`` is ``"eq8"``::

        omega(t^(tj)) prod_i Gamma(<t p^i j/(q-1)>) prod_h Gamma(<h p^i/t>)
            = prod_i prod_{h<t} Gamma(<p^i h/t + p^i j/(q-1)>)

    or ``"eq9"``, the mirror image with omega(t^(-tj)), -j and (1+h)/t.
    """
    p, r, q = ctx.p, ctx.r, ctx.q
    if t < 1 or t % p == 0:
        raise BadInput(f"t = {t} must be positive and prime to p")
    if not 0 <= j <= q - 2:
        raise BadInput(f"j = {j} outside [0, q-2]")
    s = Fraction(j, q - 1)
    inner = [Fraction(h * p ** i, t) for i in range(r) for h in range(1, t)]
    if variant == "eq8":
        lhs = _omega_power(t, t * j, ctx)
        lhs = lhs * _gamma_prod([t * p ** i * s for i in range(r)], ctx) * _gamma_prod(inner, ctx)
        rhs = _gamma_prod([p ** i * (Fraction(h, t) + s) for i in range(r) for h in range(t)], ctx)
        identity = Identity.Lemma31a
    elif variant == "eq9":
        lhs = _omega_power(t, -t * j, ctx)
        lhs = lhs * _gamma_prod([-t * p ** i * s for i in range(r)], ctx) * _gamma_prod(inner, ctx)
        rhs = _gamma_prod([p ** i * (Fraction(1 + h, t) - s) for i in range(r) for h in range(t)],
                          ctx)
        identity = Identity.Lemma31b
    else:
        raise BadInput(f"unknown variant {variant!r}")
    return IdentityResult(identity, f"q={q} t={t} j={j}", lhs, rhs, lhs.agrees_with(rhs))


def _floor_inputs(l, i, q, p, r, lo):
    if not lo <= l <= q - 2:
        raise BadInput(f"l = {l} outside [{lo}, q-2]")
    if not 0 <= i <= r - 1:
        raise BadInput(f"i = {i} outside [0, r-1]")
    return Fraction(l * p ** i, q - 1), p ** i


def lemma32_sides(l: int, i: int, q: int, p: int, r: int) -> tuple[int, int]:
    x, pi = _floor_inputs(l, i, q, p, r, 1)
    lhs = floor(-x) - 2 * floor(-2 * x) - floor(3 * x) - 1
    rhs = (-2 * floor(frac(Fraction(pi, 2)) - x) - floor(frac(Fraction(-pi, 3)) + x)
           - floor(frac(Fraction(-2 * pi, 3)) + x))
    return lhs, rhs


def lemma33_sides(l: int, i: int, q: int, p: int, r: int) -> tuple[int, int]:
    x, pi = _floor_inputs(l, i, q, p, r, 0)
    lhs = floor(2 * x) + 2 * floor(-x) - 2 * floor(-2 * x) - floor(4 * x)
    rhs = (-2 * floor(frac(Fraction(pi, 2)) - x) - floor(frac(Fraction(-pi, 4)) + x)
           - floor(frac(Fraction(-3 * pi, 4)) + x))
    return lhs, rhs


def check_lemma32(l: int, i: int, ctx) -> IdentityResult:
    lhs, rhs = lemma32_sides(l, i, ctx.q, ctx.p, ctx.r)
    return IdentityResult(Identity.Lemma32, f"q={ctx.q} l={l} i={i}", lhs, rhs, lhs == rhs)


def check_lemma33(l: int, i: int, ctx) -> IdentityResult:
    lhs, rhs = lemma33_sides(l, i, ctx.q, ctx.p, ctx.r)
    return IdentityResult(Identity.Lemma33, f"q={ctx.q} l={l} i={i}", lhs, rhs, lhs == rhs)


# --- grids used by the verification suites --------------------------------------

def floor_lemma_grid(p: int, r: int) -> list[IdentityResult]:
    """Every (l, i) for both floor identities over q = p^r.

    Accepts any object with ``p``, ``r`` and ``q`` attributes as context, so no
    field needs to be built for large q.
    """
    q = p ** r
    ctx = _Plain(p, r, q)
    out = [check_lemma32(l, i, ctx) for i in range(r) for l in range(1, q - 1)]
    out += [check_lemma33(l, i, ctx) for i in range(r) for l in range(0, q - 1)]
    return out


@dataclass(frozen=True)
class _Plain:
    p: int
    r: int
    q: int


def gamma_identity_grid(ctx: PadicCtx, ms=(2, 3, 4, 6), ts=range(1, 7)) -> list[IdentityResult]:
    """Reflection, product formula and both shifted-product identities on the j/(q-1) grid."""
    q, p = ctx.q, ctx.p
    out = [check_reflection(Fraction(j, q - 1), ctx) for j in range(q - 1)]
    for m in ms:
        if m % p:
            out += [check_product_formula(m, Fraction(j, q - 1), ctx) for j in range(q)]
    for t in ts:
        if t % p:
            for j in range(q - 1):
                out.append(check_lemma31(t, j, "eq8", ctx))
                out.append(check_lemma31(t, j, "eq9", ctx))
    return out
