"""Arithmetic in F_q = F_p[x]/(m(x)), quadratic character, curves and point counts.

Elements are stored by their *code* ``c_0 + c_1 p + ... + c_{r-1} p^{r-1}``
where ``c_0 + c_1 x + ...`` is the polynomial-basis representative.  The code
order coincides with the lexicographic order of ``(c_{r-1}, ..., c_0)`` and is
used for every deterministic tie-break (square roots, cubic roots, generator).

Multiplication goes through discrete log / exponential tables built once per
field, which is cheap because q is bounded (2048 by default).
"""

from __future__ import annotations

import os
import threading
from functools import lru_cache
from math import isqrt

from .errors import (
    CompositeP,
    DivisionByZero,
    MixedFields,
    SingularCurve,
    SizeExceeded,
    UnsupportedP,
)

DEFAULT_MAX_Q = 2048
MAX_Q_ENV = "PADIC_FROBENIUS_MAX_Q"


def max_field_size() -> int:
    """Upper bound on q; overridable through ``PADIC_FROBENIUS_MAX_Q``."""
    value = os.environ.get(MAX_Q_ENV)
    return int(value) if value else DEFAULT_MAX_Q


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, isqrt(n) + 1, 2))


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over F_p, coefficient lists low -> high ---------------------

def _trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_mulmod(f, g, mod, p):
    """``f*g mod mod`` over F_p; ``mod`` must be monic."""
    prod = [0] * (len(f) + len(g) - 1) if f and g else []
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                prod[i + j] = (prod[i + j] + a * b) % p
    return poly_rem(prod, mod, p)


def poly_rem(f, mod, p):
    """Remainder of ``f`` by ``mod`` via long division (``mod`` monic)."""
    f = [c % p for c in f]
    d = len(mod) - 1
    for top in range(len(f) - 1, d - 1, -1):
        c = f[top]
        if c:
            shift = top - d
            for k, mk in enumerate(mod):
                f[shift + k] = (f[shift + k] - c * mk) % p
    return _trim(f[:d] if len(f) > d else f)


def poly_powmod(f, e, mod, p):
    result = [1]
    base = poly_rem(f, mod, p)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, mod, p)
        base = poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def poly_gcd(f, g, p):
    f, g = _trim([c % p for c in f]), _trim([c % p for c in g])
    while g:
        inv = pow(g[-1], -1, p)
        g = [c * inv % p for c in g]
        f, g = g, poly_rem(f, g, p)
    return f


def is_irreducible(mod, p) -> bool:
    """Rabin's gcd-based irreducibility test for a monic polynomial over F_p."""
    r = len(mod) - 1
    if r <= 1:
        return r == 1
    x = [0, 1]
    if poly_powmod(x, p ** r, mod, p) != poly_rem(x, mod, p):
        return False
    for ell in prime_factors(r):
        h = poly_powmod(x, p ** (r // ell), mod, p)
        h = h + [0] * (2 - len(h))
        h[1] = (h[1] - 1) % p
        g = poly_gcd(mod, h, p)
        if len(g) > 1:
            return False
    return True


def smallest_irreducible(p: int, r: int):
    """Lexicographically smallest monic irreducible of degree r, low -> high."""
    for code in range(p ** r):
        lower = [(code // p ** i) % p for i in range(r)]
        mod = lower + [1]
        if is_irreducible(mod, p):
            return tuple(mod)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FieldCtx:
    """The finite field F_{p^r} with a fixed modulus and multiplicative generator.

    Instances are immutable; obtain them through :func:`field_create` so that
    repeated requests share one context.
    """

    def __init__(self, p: int, r: int, modulus: tuple[int, ...]):
        self.p = p
        self.r = r
        self.q = p ** r
        self.modulus = modulus
        q = self.q
        self._exp: list[int] = []
        self._log: list[int] = [-1] * q
        self.generator_code = self._find_generator()
        code = 1
        for k in range(q - 1):
            self._exp.append(code)
            self._log[code] = k
            code = self._mul_codes_slow(code, self.generator_code)
        self._lock = threading.Lock()
        self._sqrt_table = None

    # -- code <-> coefficient helpers
    def coeffs_of(self, code: int) -> tuple[int, ...]:
        p = self.p
        return tuple((code // p ** i) % p for i in range(self.r))

    def code_of(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.r:
            coeffs = poly_rem(coeffs, list(self.modulus), self.p)
        return sum((c % self.p) * self.p ** i for i, c in enumerate(coeffs))

    def _mul_codes_slow(self, a: int, b: int) -> int:
        if self.r == 1:
            return a * b % self.p
        prod = poly_mulmod(list(self.coeffs_of(a)), list(self.coeffs_of(b)),
                           list(self.modulus), self.p)
        return self.code_of(prod)

    def _pow_code_slow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_codes_slow(result, base)
            base = self._mul_codes_slow(base, base)
            e >>= 1
        return result

    def _find_generator(self) -> int:
        n = self.q - 1
        factors = prime_factors(n)
        for g in range(1, self.q):
            if all(self._pow_code_slow(g, n // ell) != 1 for ell in factors):
                return g
        raise AssertionError("F_q^x has no generator")  # pragma: no cover

    # -- fast code arithmetic
    def add_codes(self, a: int, b: int) -> int:
        p = self.p
        if self.r == 1:
            return (a + b) % p
        out, scale = 0, 1
        for _ in range(self.r):
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def neg_code(self, a: int) -> int:
        p = self.p
        if self.r == 1:
            return -a % p
        out, scale = 0, 1
        for _ in range(self.r):
            out += (-(a % p) % p) * scale
            a //= p
            scale *= p
        return out

    def mul_codes(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def log(self, code: int) -> int:
        """Discrete log of a nonzero element with respect to the generator."""
        if code == 0:
            raise DivisionByZero("log of zero")
        return self._log[code]

    def exp(self, k: int) -> int:
        return self._exp[k % (self.q - 1)]

    # -- element constructors
    def __call__(self, value) -> FqElem:
        if isinstance(value, FqElem):
            if value.ctx is not self:
                raise MixedFields("element belongs to another field")
            return value
        if isinstance(value, int):
            return FqElem(self, value % self.p)
        return FqElem(self, self.code_of(value))

    def from_code(self, code: int) -> FqElem:
        if not 0 <= code < self.q:
            raise ValueError(f"code {code} outside [0, {self.q})")
        return FqElem(self, code)

    def elements(self):
        """All elements in ascending order."""
        return [FqElem(self, c) for c in range(self.q)]

    @property
    def generator(self) -> FqElem:
        return FqElem(self, self.generator_code)

    @property
    def x(self) -> FqElem:
        """The class of the polynomial variable (equal to 0 when r = 1)."""
        return self([0, 1])

    def sqrt_table(self) -> dict[int, int]:
        """Map square -> smallest root, built once by exhaustive squaring."""
        if self._sqrt_table is None:
            with self._lock:
                if self._sqrt_table is None:
                    table: dict[int, int] = {}
                    for c in range(self.q):
                        table.setdefault(self.mul_codes(c, c), c)
                    self._sqrt_table = table
        return self._sqrt_table

    def __repr__(self):
        return f"FieldCtx(p={self.p}, r={self.r}, modulus={self.modulus})"


class FqElem:
    """An element of F_q bound to its :class:`FieldCtx`."""

    __slots__ = ("ctx", "code")

    def __init__(self, ctx: FieldCtx, code: int):
        self.ctx = ctx
        self.code = code

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.coeffs_of(self.code)

    def _coerce(self, other) -> FqElem | None:
        if isinstance(other, FqElem):
            if other.ctx is not self.ctx:
                raise MixedFields("operands belong to different fields")
            return other
        if isinstance(other, int):
            return FqElem(self.ctx, other % self.ctx.p)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FqElem(self.ctx, self.ctx.add_codes(self.code, other.code))

    __radd__ = __add__

    def __neg__(self):
        return FqElem(self.ctx, self.ctx.neg_code(self.code))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FqElem(self.ctx, self.ctx.mul_codes(self.code, other.code))

    __rmul__ = __mul__

    def inverse(self) -> FqElem:
        if self.code == 0:
            raise DivisionByZero("inverse of zero in F_q")
        ctx = self.ctx
        return FqElem(ctx, ctx.exp(-ctx.log(self.code)))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        ctx = self.ctx
        if self.code == 0:
            if e < 0:
                raise DivisionByZero("negative power of zero")
            return FqElem(ctx, 1 if e == 0 else 0)
        return FqElem(ctx, ctx.exp(ctx.log(self.code) * e))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.code == other % self.ctx.p
        if isinstance(other, FqElem):
            return self.ctx is other.ctx and self.code == other.code
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.r, self.code))

    def __lt__(self, other):
        return self.code < self._coerce(other).code

    def __bool__(self):
        return self.code != 0

    def __int__(self):
        if self.ctx.r != 1:
            raise TypeError("only prime-field elements convert to int")
        return self.code

    def __repr__(self):
        if self.ctx.r == 1:
            return f"{self.code}"
        terms = [f"{c}*x^{i}" if i else f"{c}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


@lru_cache(maxsize=None)
def _field_create(p: int, r: int) -> FieldCtx:
    return FieldCtx(p, r, smallest_irreducible(p, r))


def field_create(p: int, r: int = 1, max_q: int | None = None) -> FieldCtx:
    """Return the (cached) context for F_{p^r}."""
    if not is_prime(p):
        raise CompositeP(f"{p} is not prime")
    if p <= 3:
        raise UnsupportedP(f"p must exceed 3, got {p}")
    if r < 1:
        raise ValueError("degree r must be positive")
    bound = max_field_size() if max_q is None else max_q
    if p ** r > bound:
        raise SizeExceeded(f"q = {p}^{r} exceeds bound {bound}")
    return _field_create(p, r)


def quadratic_character(x: FqElem) -> int:
    """phi(x) in {-1, 0, 1}, with phi(0) = 0."""
    if x.code == 0:
        return 0
    ctx = x.ctx
    half = ctx.exp(ctx.log(x.code) * ((ctx.q - 1) // 2))
    return 1 if half == 1 else -1


def sqrt_in_fq(x: FqElem) -> FqElem | None:
    """The smaller square root of x, or None if x is a non-residue."""
    root = x.ctx.sqrt_table().get(x.code)
    return None if root is None else FqElem(x.ctx, root)


def cubic_roots(a: FqElem, b: FqElem) -> list[FqElem]:
    """Distinct roots of x^3 + a x + b in ascending order (exhaustive scan)."""
    ctx = a.ctx
    if b.ctx is not ctx:
        raise MixedFields("coefficients belong to different fields")
    return [x for x in ctx.elements() if x * x * x + a * x + b == 0]


# --- curves ------------------------------------------------------------------

class WeierstrassCurve:
    """A curve y^2 = x^3 + A x^2 + B x + C over F_q in one of three shapes.

    ``form`` is ``"ShortW"`` (a, b), ``"E1"`` (c, d) or ``"E2"`` (f, g).
    """

    form = ""

    def __init__(self, u, v):
        if u.ctx is not v.ctx:
            raise MixedFields("coefficients belong to different fields")
        self.coefficients = (u, v)
        self.field = u.ctx

    def cubic(self):
        """Coefficients (A, B, C) of the right-hand side x^3 + A x^2 + B x + C."""
        raise NotImplementedError

    def rhs(self, x: FqElem) -> FqElem:
        A, B, C = self.cubic()
        return ((x + A) * x + B) * x + C

    def is_nonsingular(self) -> bool:
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.form, self.coefficients))

    def __repr__(self):
        u, v = self.coefficients
        return f"{self.form}({u!r}, {v!r}) over F_{self.field.q}"


class ShortW(WeierstrassCurve):
    """y^2 = x^3 + a x + b."""

    form = "ShortW"

    @property
    def a(self):
        return self.coefficients[0]

    @property
    def b(self):
        return self.coefficients[1]

    def cubic(self):
        zero = self.field(0)
        return zero, self.a, self.b

    def is_nonsingular(self):
        return bool(4 * self.a ** 3 + 27 * self.b ** 2)


class E1(WeierstrassCurve):
    """y^2 = x^3 + c x^2 + d (the shape requires c != 0)."""

    form = "E1"

    @property
    def c(self):
        return self.coefficients[0]

    @property
    def d(self):
        return self.coefficients[1]

    def cubic(self):
        return self.c, self.field(0), self.d

    def is_nonsingular(self):
        return bool(self.d) and bool(4 * self.c ** 3 + 27 * self.d)


class E2(WeierstrassCurve):
    """y^2 = x^3 + f x^2 + g x (the shape requires f != 0)."""

    form = "E2"

    @property
    def f(self):
        return self.coefficients[0]

    @property
    def g(self):
        return self.coefficients[1]

    def cubic(self):
        return self.f, self.g, self.field(0)

    def is_nonsingular(self):
        return bool(self.g) and bool(self.f * self.f - 4 * self.g)


def trace_bruteforce(curve: WeierstrassCurve) -> int:
    """a_q = q + 1 - #E(F_q), computed as minus the character sum of the cubic."""
    if not curve.is_nonsingular():
        raise SingularCurve(f"{curve!r} is singular")
    return -sum(quadratic_character(curve.rhs(x)) for x in curve.field.elements())


def count_points(curve: WeierstrassCurve) -> int:
    """#E(F_q) including the point at infinity, by counting (x, y) pairs."""
    squares: dict[int, int] = {}
    for y in curve.field.elements():
        sq = (y * y).code
        squares[sq] = squares.get(sq, 0) + 1
    return 1 + sum(squares.get(curve.rhs(x).code, 0) for x in curve.field.elements())


def hasse_bound(q: int) -> int:
    """floor(2 sqrt(q))."""
    return isqrt(4 * q)


def j_invariant(a: FqElem, b: FqElem) -> FqElem:
    disc = 4 * a ** 3 + 27 * b ** 2
    if not disc:
        raise SingularCurve("4a^3 + 27b^2 = 0")
    return 1728 * 4 * a ** 3 / disc


__all__ = [
    "DEFAULT_MAX_Q", "E1", "E2", "FieldCtx", "FqElem", "ShortW",
    "WeierstrassCurve", "count_points", "cubic_roots", "field_create", "hasse_bound",
    "is_irreducible", "is_prime", "j_invariant", "max_field_size", "quadratic_character",
    "smallest_irreducible", "sqrt_in_fq", "trace_bruteforce",
]
