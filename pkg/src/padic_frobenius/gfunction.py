"""The p-adic hypergeometric function nGn[a; b | t]_q.

All fractional parts and floors are evaluated exactly: every parameter and
every ``j/(q-1)`` is written over one common denominator D, so ``<x>`` and
``floor(x)`` reduce to integer ``%`` and ``//``.  Gamma values are read mod
p^N and the character sum is accumulated in Z_q after scaling by p^(n r),
which clears the most negative power of p any summand can carry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .errors import BadParameter, MixedFields
from .finite_field import FqElem
from .padic import (
    PadicCtx,
    PadicNum,
    gamma_table,
    padic_context,
    padic_integer_residue,
    teichmuller,
    zq_mul,
)


class GammaCache:
    """Memo of Gamma_p(x) mod p^N keyed by the exact rational x.

    ``misses`` counts cold evaluations, which is what the cache is meant to
    bound.
    """

    def __init__(self, ctx: PadicCtx):
        self.ctx = ctx
        self._table = gamma_table(ctx)
        self._values: dict[Fraction, int] = {}
        self.misses = 0

    def __call__(self, x: Fraction) -> int:
        value = self._values.get(x)
        if value is None:
            self.misses += 1
            value = self._table[padic_integer_residue(x, self.ctx)]
            self._values[x] = value
        return value

    def __len__(self):
        return len(self._values)


def gamma_quotient_cache(args: GArgs) -> GammaCache:
    return GammaCache(args.ctx)


@dataclass(frozen=True)
class GArgs:
    """Parameters (a_1..a_n; b_1..b_n), argument t and the p-adic context."""

    upper: tuple[Fraction, ...]
    lower: tuple[Fraction, ...]
    t: FqElem
    ctx: PadicCtx = field(default=None)

    def __post_init__(self):
        upper = tuple(Fraction(a) for a in self.upper)
        lower = tuple(Fraction(b) for b in self.lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "lower", lower)
        if self.ctx is None:
            object.__setattr__(self, "ctx", padic_context(self.t.ctx))
        elif self.ctx.field is not self.t.ctx:
            raise MixedFields("t does not live in the residue field of ctx")
        p = self.ctx.p
        for x in upper + lower:
            if x.denominator % p == 0:
                raise BadParameter(f"parameter {x} is not a {p}-adic integer")
        if len(upper) != len(lower) or not upper:
            raise BadParameter("need n >= 1 upper and n lower parameters")

    @property
    def n(self) -> int:
        return len(self.upper)


@dataclass(frozen=True)
class GValue:
    value: PadicNum
    args: GArgs

    @property
    def valuation(self):
        return self.value.valuation


class _Summands:
    """Per-call precomputation shared by every j."""

    def __init__(self, args: GArgs, cache: GammaCache):
        ctx = args.ctx
        self.args = args
        self.cache = cache
        p, r, q = ctx.p, ctx.r, ctx.q
        self.D = D = lcm(q - 1, *(x.denominator for x in args.upper + args.lower))
        self.step = D // (q - 1)
        # (a p^k mod D, -b p^k mod D, p^k) for every (i, k)
        self.slots = []
        den = 1
        for a, b in zip(args.upper, args.lower):
            A, B = a.numerator * (D // a.denominator), b.numerator * (D // b.denominator)
            for k in range(r):
                pk = p ** k
                Ak, Bk = A * pk % D, -B * pk % D
                self.slots.append((Ak, Bk, pk))
                den = den * cache(Fraction(Ak, D)) * cache(Fraction(Bk, D)) % ctx.pN
        self.den_inv = pow(den, -1, ctx.pN)

    def parts(self, j: int):
        """(sign, exponent of p, Gamma numerator residue) for the j-th summand."""
        D, cache, pN = self.D, self.cache, self.args.ctx.pN
        J = j * self.step
        e = 0
        g = self.den_inv
        for Ak, Bk, pk in self.slots:
            Jk = J * pk
            e -= (Ak - Jk) // D + (Bk + Jk) // D
            g = g * cache(Fraction((Ak - Jk) % D, D)) * cache(Fraction((Bk + Jk) % D, D)) % pN
        sign = -1 if (j * self.args.n + e) % 2 else 1
        return sign, e, g


def summand(args: GArgs, j: int, cache: GammaCache | None = None) -> PadicNum:
    """The j-th term of the defining sum (without the -1/(q-1) prefactor)."""
    ctx = args.ctx
    if args.t.code == 0:
        return ctx.zero()
    cache = cache or GammaCache(ctx)
    sign, e, g = _Summands(args, cache).parts(j)
    w = teichmuller(args.t, ctx)
    return PadicNum.from_int(ctx, sign * g) * w ** -j * _p_power(ctx, e)


def _p_power(ctx: PadicCtx, e: int) -> PadicNum:
    return PadicNum(ctx, e, (1,) + (0,) * (ctx.r - 1), ctx.N)


def evaluate_G(args: GArgs, cache: GammaCache | None = None) -> GValue:
    """nGn[a_1..a_n; b_1..b_n | t]_q to absolute precision N - n r.

    t = 0 gives the exact zero, since every summand carries the character
    value at 0.
    """
    ctx = args.ctx
    if args.t.code == 0:
        return GValue(ctx.zero(), args)
    cache = cache or GammaCache(ctx)
    terms = _Summands(args, cache)
    p, r, q, pN = ctx.p, ctx.r, ctx.q, ctx.pN
    shift = args.n * r

    w = teichmuller(args.t, ctx).inverse().unit
    w_pow = (1,) + (0,) * (r - 1)
    total = [0] * r
    for j in range(q - 1):
        sign, e, g = terms.parts(j)
        scale = p ** (e + shift)
        if scale < pN:
            c = sign * g * scale
            for i, wi in enumerate(w_pow):
                total[i] += c * wi
        w_pow = zq_mul(ctx, w_pow, w)
    factor = -pow(q - 1, -1, pN)
    vec = tuple(factor * c % pN for c in total)
    return GValue(PadicNum.from_vector(ctx, vec, -shift, ctx.N - shift), args)


def G(upper, lower, t: FqElem, ctx: PadicCtx | None = None) -> PadicNum:
    """Shorthand returning the p-adic value directly."""
    return evaluate_G(GArgs(tuple(upper), tuple(lower), t, ctx)).value
