"""Fixed-precision arithmetic in Q_q, Teichmuller lifts and Morita's p-adic gamma.

Q_q is modelled as Q_p[x]/(M(x)) where M is the integer lift of the finite
field modulus (same coefficients, read in Z).  A nonzero :class:`PadicNum` is
``unit * p^valuation`` with ``unit`` a vector of r residues mod ``p^prec``
that is not divisible by p.  Zero comes in two flavours: the exact zero, and
``O(p^k)``, a value only known to vanish modulo ``p^k``.  The latter shows
up when a character sum cancels completely (e.g. a supersingular trace).
"""

from __future__ import annotations

import math
import threading
from array import array
from fractions import Fraction
from functools import lru_cache

from .errors import DivisionByZero, MixedFields, NotPadicInteger, PrecisionExhausted
from .finite_field import FieldCtx, FqElem

GAMMA_TABLE_BOUND = 2 ** 23
DEFAULT_GUARD = 3


# --- exact rational helpers ---------------------------------------------------

def floor(x) -> int:
    """Greatest integer <= x for ints and Fractions."""
    x = Fraction(x)
    return x.numerator // x.denominator


def frac(x) -> Fraction:
    """Fractional part x - floor(x), always in [0, 1)."""
    x = Fraction(x)
    return x - floor(x)


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def hasse_digits(q: int, p: int) -> int:
    """Smallest e with p^e >= 4 sqrt(q) + 1, decided in integers."""
    e = 0
    while p ** e < 1 or (p ** e - 1) ** 2 < 16 * q:
        e += 1
    return e


def default_precision(q: int, p: int, r: int) -> int:
    """ceil(log_p(4 sqrt(q) + 1)) + r + 2 digits."""
    return hasse_digits(q, p) + r + 2


# --- Z_q vectors mod p^k -------------------------------------------------------

def _zq_mul(a, b, modulus, m):
    r = len(a)
    if r == 1:
        return (a[0] * b[0] % m,)
    prod = [0] * (2 * r - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for top in range(2 * r - 2, r - 1, -1):
        c = prod[top]
        if c:
            shift = top - r
            for k in range(r):
                prod[shift + k] -= c * modulus[k]
    return tuple(c % m for c in prod[:r])


def _vec_valuation(vec, p) -> int | None:
    vals = [valuation(c, p) for c in vec if c]
    return min(vals) if vals else None


class PadicCtx:
    """Precision context: prime p, degree r, default relative precision N."""

    def __init__(self, field: FieldCtx, N: int, guard: int = DEFAULT_GUARD):
        if N < 1:
            raise ValueError("precision N must be at least 1")
        self.field = field
        self.p = field.p
        self.r = field.r
        self.q = field.q
        self.N = N
        self.guard = guard
        self.modulus = field.modulus
        self.pN = self.p ** N

    def same_ring(self, other: PadicCtx) -> bool:
        return self.field is other.field

    def zero(self) -> PadicNum:
        return PadicNum(self, math.inf, None, 0)

    def one(self) -> PadicNum:
        return PadicNum.from_int(self, 1)

    def with_precision(self, N: int) -> PadicCtx:
        return padic_context(self.field, N, self.guard)

    def __repr__(self):
        return f"PadicCtx(p={self.p}, r={self.r}, N={self.N})"


@lru_cache(maxsize=None)
def _padic_context(field: FieldCtx, N: int, guard: int) -> PadicCtx:
    return PadicCtx(field, N, guard)


def padic_context(field: FieldCtx, N: int | None = None, guard: int = DEFAULT_GUARD) -> PadicCtx:
    """Cached context; N defaults to the Hasse-separating precision."""
    if N is None:
        N = default_precision(field.q, field.p, field.r)
    return _padic_context(field, N, guard)


class PadicNum:
    """``unit * p^valuation`` with ``prec`` significant digits, or a zero."""

    __slots__ = ("ctx", "valuation", "unit", "prec")

    def __init__(self, ctx: PadicCtx, valuation, unit, prec: int):
        self.ctx = ctx
        self.valuation = valuation
        self.unit = unit
        self.prec = prec

    # -- constructors
    @classmethod
    def from_int(cls, ctx: PadicCtx, n: int, prec: int | None = None) -> PadicNum:
        if n == 0:
            return ctx.zero()
        prec = ctx.N if prec is None else prec
        v = valuation(n, ctx.p)
        u = (n // ctx.p ** v) % ctx.p ** prec
        return cls(ctx, v, (u,) + (0,) * (ctx.r - 1), prec)

    @classmethod
    def from_vector(cls, ctx: PadicCtx, vec, shift: int, absprec: int) -> PadicNum:
        """The value ``vec * p^shift`` where ``vec`` is known modulo p^(absprec - shift)."""
        m = ctx.p ** (absprec - shift) if absprec > shift else 1
        vec = tuple(c % m for c in vec)
        v = _vec_valuation(vec, ctx.p)
        if v is None:
            return cls(ctx, absprec, None, 0)
        pv = ctx.p ** v
        prec = absprec - shift - v
        mod = ctx.p ** prec
        return cls(ctx, shift + v, tuple((c // pv) % mod for c in vec), prec)

    # -- predicates
    @property
    def is_zero(self) -> bool:
        return self.unit is None

    @property
    def is_exact_zero(self) -> bool:
        return self.unit is None and self.valuation == math.inf

    @property
    def absprec(self):
        """Known digits: the value is determined modulo p^absprec."""
        return self.valuation if self.unit is None else self.valuation + self.prec

    @property
    def mantissa(self):
        return self.unit

    def _check(self, other) -> PadicNum:
        if isinstance(other, int):
            return PadicNum.from_int(self.ctx, other)
        if isinstance(other, Fraction):
            return rat_to_padic(other, self.ctx)
        if not isinstance(other, PadicNum):
            raise TypeError(f"cannot combine PadicNum with {type(other).__name__}")
        if not self.ctx.same_ring(other.ctx):
            raise MixedFields("p-adic values live in different rings")
        return other

    # -- arithmetic
    def __neg__(self):
        if self.unit is None:
            return self
        m = self.ctx.p ** self.prec
        return PadicNum(self.ctx, self.valuation, tuple(-c % m for c in self.unit), self.prec)

    def __add__(self, other):
        other = self._check(other)
        if self.is_exact_zero:
            return other
        if other.is_exact_zero:
            return self
        ctx, p = self.ctx, self.ctx.p
        absprec = min(self.absprec, other.absprec)
        if self.unit is None or other.unit is None:
            x = other if self.unit is None else self
            if x.unit is None or x.valuation >= absprec:
                return PadicNum(ctx, absprec, None, 0)
            return x._truncate_abs(absprec)
        vmin = min(self.valuation, other.valuation)
        if absprec <= vmin:
            return PadicNum(ctx, absprec, None, 0)
        s1 = p ** (self.valuation - vmin)
        s2 = p ** (other.valuation - vmin)
        vec = tuple(a * s1 + b * s2 for a, b in zip(self.unit, other.unit))
        result = PadicNum.from_vector(ctx, vec, vmin, absprec)
        if result.unit is not None and result.prec < ctx.guard <= min(self.prec, other.prec):
            raise PrecisionExhausted(
                f"cancellation left {result.prec} significant digits (guard {ctx.guard})")
        return result

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) + (-self)

    def __mul__(self, other):
        other = self._check(other)
        ctx = self.ctx
        if self.is_exact_zero or other.is_exact_zero:
            return ctx.zero()
        if self.unit is None or other.unit is None:
            # O(p^k) times anything of valuation v is O(p^(k+v))
            return PadicNum(ctx, self.valuation + other.valuation, None, 0)
        prec = min(self.prec, other.prec)
        m = ctx.p ** prec
        unit = _zq_mul(self.unit, other.unit, ctx.modulus, m)
        return PadicNum(ctx, self.valuation + other.valuation, unit, prec)

    __rmul__ = __mul__

    def inverse(self) -> PadicNum:
        if self.unit is None:
            raise DivisionByZero("inverse of a p-adic zero")
        ctx = self.ctx
        unit = _zq_inverse(ctx, self.unit, self.prec)
        return PadicNum(ctx, -self.valuation, unit, self.prec)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = PadicNum.from_int(self.ctx, 1, self.prec if self.unit is not None else None)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- precision management
    def _truncate_abs(self, absprec) -> PadicNum:
        if self.unit is None:
            return PadicNum(self.ctx, min(self.valuation, absprec), None, 0)
        if absprec <= self.valuation:
            return PadicNum(self.ctx, absprec, None, 0)
        prec = min(self.prec, absprec - self.valuation)
        m = self.ctx.p ** prec
        return PadicNum(self.ctx, self.valuation, tuple(c % m for c in self.unit), prec)

    def truncate(self, prec: int) -> PadicNum:
        """Keep at most ``prec`` significant digits."""
        if self.unit is None:
            return self
        return self._truncate_abs(self.valuation + min(prec, self.prec))

    def agrees_with(self, other, absprec=None) -> bool:
        """True if the two values coincide modulo p^absprec (default: common precision)."""
        other = self._check(other)
        if absprec is None:
            absprec = min(self.absprec, other.absprec)
        if absprec == math.inf:
            return self.is_exact_zero and other.is_exact_zero
        diff = self._truncate_abs(absprec) + (-other._truncate_abs(absprec))
        return diff.unit is None

    def __eq__(self, other):
        if not isinstance(other, (PadicNum, int, Fraction)):
            return NotImplemented
        return self.agrees_with(other)

    __hash__ = None

    def encoding(self):
        """Canonical (valuation, mantissa, prec) triple."""
        return (self.valuation, self.unit, self.prec)

    def residue(self) -> int:
        """The value modulo p^absprec as an integer in [0, p^absprec), for Z_p values."""
        if self.unit is None:
            return 0
        if self.valuation < 0:
            raise ValueError("value is not integral")
        if any(self.unit[1:]):
            raise ValueError("value does not lie in Z_p")
        return self.unit[0] * self.ctx.p ** self.valuation % self.ctx.p ** self.absprec

    def __repr__(self):
        if self.is_exact_zero:
            return "0"
        if self.unit is None:
            return f"O({self.ctx.p}^{self.valuation})"
        u = self.unit[0] if self.ctx.r == 1 else list(self.unit)
        return f"{u} * {self.ctx.p}^{self.valuation} + O({self.ctx.p}^{self.absprec})"


def _zq_inverse(ctx: PadicCtx, unit, prec: int):
    """Inverse of a unit of Z_q modulo p^prec by Newton iteration from F_q."""
    p = ctx.p
    m = p ** prec
    if ctx.r == 1:
        return (pow(unit[0], -1, m),)
    field = ctx.field
    inv0 = field.from_code(field.code_of([c % p for c in unit])).inverse().coeffs
    x = tuple(inv0)
    known = 1
    while known < prec:
        known = min(2 * known, prec)
        mk = p ** known
        ux = _zq_mul(unit, x, ctx.modulus, mk)
        two_minus = tuple(((2 if i == 0 else 0) - c) % mk for i, c in enumerate(ux))
        x = _zq_mul(x, two_minus, ctx.modulus, mk)
    return tuple(c % m for c in x)


def zq_mul(ctx: PadicCtx, a, b, m: int | None = None):
    """Product of two Z_q vectors modulo m (default p^N)."""
    return _zq_mul(a, b, ctx.modulus, ctx.pN if m is None else m)


def rat_to_padic(x, ctx: PadicCtx) -> PadicNum:
    """Embed a rational number into Q_q with relative precision N."""
    x = Fraction(x)
    if x == 0:
        return ctx.zero()
    p = ctx.p
    num, den = x.numerator, x.denominator
    v = valuation(num, p) - valuation(den, p)
    num //= p ** valuation(num, p)
    den //= p ** valuation(den, p)
    u = num * pow(den, -1, ctx.pN) % ctx.pN
    return PadicNum(ctx, v, (u,) + (0,) * (ctx.r - 1), ctx.N)


# --- Teichmuller character ------------------------------------------------------

@lru_cache(maxsize=None)
def _teichmuller_vector(ctx: PadicCtx, code: int):
    m = ctx.pN
    z = tuple(ctx.field.coeffs_of(code))
    for _ in range(ctx.N + 1):
        nxt = _zq_pow(ctx, z, ctx.q, m)
        if nxt == z:
            return z
        z = nxt
    raise AssertionError("Teichmuller iteration did not stabilise")  # pragma: no cover


def _zq_pow(ctx, z, e, m):
    result = (1,) + (0,) * (ctx.r - 1)
    while e:
        if e & 1:
            result = _zq_mul(result, z, ctx.modulus, m)
        z = _zq_mul(z, z, ctx.modulus, m)
        e >>= 1
    return result


def teichmuller(x: FqElem, ctx: PadicCtx) -> PadicNum:
    """omega(x): the (q-1)-th root of unity congruent to x mod p; omega(0) = 0."""
    if x.ctx is not ctx.field:
        raise MixedFields("element is not in the residue field of this context")
    if x.code == 0:
        return ctx.zero()
    return PadicNum(ctx, 0, _teichmuller_vector(ctx, x.code), ctx.N)


# --- Morita's p-adic gamma function ----------------------------------------------

class GammaTable:
    """Gamma_p(n) mod p^N for 0 <= n < p^N.

    Small moduli get a full table from the running product
    ``Gamma_p(n+1) = -n Gamma_p(n)`` (or ``-Gamma_p(n)`` when p | n).  Larger
    ones use block polynomials: for X in p^k Z,
    ``f_k(X) = prod_{0<u<p^k, p!|u} (X + u)`` only needs its terms of degree
    below N/k, so each block of p^k consecutive factors costs one short
    polynomial evaluation.
    """

    def __init__(self, p: int, N: int, bound: int = GAMMA_TABLE_BOUND):
        self.p = p
        self.N = N
        self.modulus = p ** N
        self.table = None
        self._blocks = None
        if self.modulus <= bound:
            self.table = self._build_table()
        else:
            self._blocks = self._build_blocks()

    def _build_table(self):
        p, m = self.p, self.modulus
        table = array("q", bytes(8 * m)) if m <= 2 ** 31 else [0] * m
        g = 1
        for n in range(m):
            table[n] = g
            g = (g * -n if n % p else -g) % m
        return table

    def _build_blocks(self):
        p, N, m = self.p, self.N, self.modulus
        blocks = [None]
        f = [1]
        for u in range(1, p):
            f = _poly_mul_trunc(f, [u, 1], N, m)
        blocks.append(f)
        for k in range(1, N - 1):
            deg = -(-N // (k + 1))
            step = p ** k
            g = [1]
            for s in range(p):
                g = _poly_mul_trunc(g, _poly_shift(f, s * step, m), deg, m)
            f = g
            blocks.append(f)
        return blocks

    def _product_below(self, n: int) -> int:
        p, N, m = self.p, self.N, self.modulus
        digits = [(n // p ** k) % p for k in range(N)]
        acc, base = 1, 0
        for k in range(N - 1, 0, -1):
            f = self._blocks[k]
            step = p ** k
            for _ in range(digits[k]):
                val = 0
                for c in reversed(f):
                    val = (val * base + c) % m
                acc = acc * val % m
                base += step
        for j in range(base, base + digits[0]):
            if j % p:
                acc = acc * j % m
        return acc

    def __getitem__(self, n: int) -> int:
        n %= self.modulus
        if self.table is not None:
            return self.table[n]
        value = self._product_below(n)
        return (-value if n & 1 else value) % self.modulus

    def __len__(self):
        return self.modulus


def _poly_mul_trunc(f, g, deg, m):
    out = [0] * min(len(f) + len(g) - 1, deg)
    for i, a in enumerate(f):
        if a and i < deg:
            for j, b in enumerate(g):
                if i + j >= deg:
                    break
                out[i + j] = (out[i + j] + a * b) % m
    return out


def _poly_shift(f, c, m):
    """Coefficients of f(X + c) modulo m (Horner-style Taylor shift)."""
    out = []
    for coeff in reversed(f):
        # out <- out * (X + c) + coeff
        new = [0] * (len(out) + 1)
        for i, a in enumerate(out):
            new[i + 1] = (new[i + 1] + a) % m
            new[i] = (new[i] + a * c) % m
        new[0] = (new[0] + coeff) % m
        out = new
    return out


_gamma_lock = threading.Lock()
_gamma_tables: dict[tuple[int, int], GammaTable] = {}


def gamma_table(ctx: PadicCtx) -> GammaTable:
    """The shared Gamma_p table for (p, N); built once, even under concurrency."""
    key = (ctx.p, ctx.N)
    table = _gamma_tables.get(key)
    if table is None:
        with _gamma_lock:
            table = _gamma_tables.get(key)
            if table is None:
                table = GammaTable(ctx.p, ctx.N)
                _gamma_tables[key] = table
    return table


def padic_integer_residue(x, ctx: PadicCtx) -> int:
    """The integer n in [0, p^N) with n = x mod p^N, for x in Q with p !| den."""
    x = Fraction(x)
    if x.denominator % ctx.p == 0:
        raise NotPadicInteger(f"{x} is not a p-adic integer for p = {ctx.p}")
    return x.numerator * pow(x.denominator, -1, ctx.pN) % ctx.pN


def gamma_residue(x, ctx: PadicCtx) -> int:
    """Gamma_p(x) mod p^N as an integer residue."""
    return gamma_table(ctx)[padic_integer_residue(x, ctx)]


def gamma_p(x, ctx: PadicCtx) -> PadicNum:
    """Morita's Gamma_p(x) for rational x with p !| den(x); always a unit."""
    return PadicNum(ctx, 0, (gamma_residue(x, ctx),) + (0,) * (ctx.r - 1), ctx.N)


def gamma_direct(n: int, p: int, N: int) -> int:
    """(-1)^n prod_{0<j<n, p!|j} j mod p^N by the defining product (test oracle)."""
    m = p ** N
    acc = 1
    for j in range(1, n):
        if j % p:
            acc = acc * j % m
    return (-acc if n % 2 else acc) % m
