"""Exact Gauss-sum identities in Z[zeta_m] = Z[x]/(Phi_m).

This module is the independent oracle: it only uses the finite-field tables
and plain integers, never the p-adic code.  With m = p(q-1) one ring hosts
both zeta_p = zeta^(q-1) and zeta_{q-1} = zeta^p.  The multiplicative
character T is fixed by T(g) = zeta_{q-1} for the field generator g.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from .errors import BadModulus, ConductorMismatch, TrivialCharacter, ZeroArgument
from .finite_field import FieldCtx, FqElem
from .identity_checks import Identity, IdentityResult


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Phi_m with integer coefficients (low -> high), by exact division of x^m - 1."""
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _exact_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _exact_div(f, g):
    f = list(f)
    dg = len(g) - 1
    assert g[-1] == 1
    quot = [0] * (len(f) - dg)
    for top in range(len(f) - 1, dg - 1, -1):
        c = f[top]
        quot[top - dg] = c
        if c:
            for k, gk in enumerate(g):
                f[top - dg + k] -= c * gk
    assert not any(f[:dg]), "division was not exact"
    return quot


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


class CycloRing:
    """Z[x]/(Phi_m) with x playing the role of a primitive m-th root of unity."""

    def __init__(self, m: int):
        self.m = m
        self.modulus = cyclotomic_polynomial(m)
        self.phi_m = len(self.modulus) - 1
        assert self.phi_m == euler_phi(m)
        self._powers = []
        cur = [1] + [0] * (self.phi_m - 1)
        for _ in range(m):
            self._powers.append(tuple(cur))
            cur = self._reduce([0] + cur)

    def _reduce(self, coeffs):
        coeffs = list(coeffs)
        n = self.phi_m
        mod = self.modulus
        for top in range(len(coeffs) - 1, n - 1, -1):
            c = coeffs[top]
            if c:
                base = top - n
                for k in range(n):
                    coeffs[base + k] -= c * mod[k]
        coeffs = coeffs[:n]
        return coeffs + [0] * (n - len(coeffs))

    def zeta_power(self, e: int) -> CycloElem:
        return CycloElem(self, self._powers[e % self.m])

    def from_exponents(self, counts: dict[int, int]) -> CycloElem:
        """sum_e counts[e] * zeta^e."""
        acc = [0] * self.phi_m
        for e, c in counts.items():
            if c:
                for k, v in enumerate(self._powers[e % self.m]):
                    if v:
                        acc[k] += c * v
        return CycloElem(self, tuple(acc))

    def scalar(self, n: int) -> CycloElem:
        return CycloElem(self, (n,) + (0,) * (self.phi_m - 1))

    def __repr__(self):
        return f"CycloRing(m={self.m}, degree={self.phi_m})"


@lru_cache(maxsize=None)
def cyclo_ring(m: int) -> CycloRing:
    return CycloRing(m)


class CycloElem:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: CycloRing, coeffs):
        self.ring = ring
        self.coeffs = tuple(coeffs)

    def _lift(self, other):
        if isinstance(other, int):
            return self.ring.scalar(other)
        if other.ring is not self.ring:
            raise ConductorMismatch("elements of different cyclotomic rings")
        return other

    def __add__(self, other):
        other = self._lift(other)
        return CycloElem(self.ring, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.ring, (-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloElem(self.ring, (other * a for a in self.coeffs))
        other = self._lift(other)
        prod = [0] * (2 * self.ring.phi_m - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CycloElem(self.ring, self.ring._reduce(prod))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.scalar(other)
        if not isinstance(other, CycloElem):
            return NotImplemented
        return self.ring is other.ring and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        terms = [f"{c}*z^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


class CharacterTable:
    """Discrete logs and absolute traces for F_q, plus the ring embedding data.

    ``galois`` applies zeta -> zeta^galois to every character value, which
    is how the choice of primitive root is shown to be immaterial.
    """

    def __init__(self, field: FieldCtx, ring: CycloRing | None = None, galois: int = 1):
        p, q = field.p, field.q
        m = p * (q - 1)
        ring = ring or cyclo_ring(m)
        if ring.m % m:
            raise ConductorMismatch(f"ring conductor {ring.m} is not a multiple of {m}")
        if gcd(galois, ring.m) != 1:
            raise ValueError("galois twist must be a unit mod the conductor")
        self.field = field
        self.ring = ring
        self.galois = galois
        self.zp = ring.m // p * galois          # exponent of zeta giving zeta_p
        self.zq1 = ring.m // (q - 1) * galois   # exponent giving zeta_{q-1}
        self.dlog = {c: field.log(c) for c in range(1, q)}
        self.tr = [self._trace(c) for c in range(q)]

    def _trace(self, code: int) -> int:
        x = self.field.from_code(code)
        total = self.field(0)
        y = x
        for _ in range(self.field.r):
            total = total + y
            y = y ** self.field.p
        assert all(c == 0 for c in total.coeffs[1:]), "trace must lie in F_p"
        return total.coeffs[0]

    def char_exponent(self, k: int, x: FqElem) -> int:
        """Exponent e with T^k(x) = zeta^e (x nonzero)."""
        return k * self.dlog[x.code] * self.zq1

    def char_value(self, k: int, x: FqElem) -> CycloElem:
        if x.code == 0:
            return self.ring.scalar(0)
        return self.ring.zeta_power(self.char_exponent(k, x))

    def theta(self, x: FqElem) -> CycloElem:
        return self.ring.zeta_power(self.tr[x.code] * self.zp)


def gauss_sum(m_char: int, table: CharacterTable, ring: CycloRing | None = None) -> CycloElem:
    """G(T^m) = sum_{x != 0} T^m(x) zeta_p^{tr x}."""
    if ring is not None and ring is not table.ring:
        raise ConductorMismatch("table was built for a different ring")
    ring = table.ring
    m = ring.m
    counts: dict[int, int] = {}
    for code in range(1, table.field.q):
        e = (m_char * table.dlog[code] * table.zq1 + table.tr[code] * table.zp) % m
        counts[e] = counts.get(e, 0) + 1
    return ring.from_exponents(counts)


class _GaussCache:
    def __init__(self, table):
        self.table = table
        self._vals = {}

    def __call__(self, k):
        k %= self.table.field.q - 1
        if k not in self._vals:
            self._vals[k] = gauss_sum(k, self.table)
        return self._vals[k]


def verify_orthogonality(table: CharacterTable) -> IdentityResult:
    """Both orthogonality relations, for every character and every x != 0."""
    field, ring = table.field, table.ring
    n = field.q - 1
    elements = field.elements()
    bad = []
    for k in range(n):
        s = ring.scalar(0)
        for x in elements:
            s = s + table.char_value(k, x)
        if s != (n if k == 0 else 0):
            bad.append(("sum_x", k))
    for x in elements[1:]:
        s = ring.scalar(0)
        for k in range(n):
            s = s + table.char_value(k, x)
        if s != (n if x == 1 else 0):
            bad.append(("sum_chi", x.code))
    return IdentityResult(Identity.Orthogonality, f"q={field.q}", n, bad, not bad)


def verify_gauss_inverse(k: int, table: CharacterTable, gauss=None) -> IdentityResult:
    """G_k G_{-k} = q T^k(-1) for T^k nontrivial."""
    field = table.field
    if k % (field.q - 1) == 0:
        raise TrivialCharacter("T^k is the trivial character")
    gauss = gauss or _GaussCache(table)
    lhs = gauss(k) * gauss(-k)
    rhs = table.char_value(k, field(-1)) * field.q
    return IdentityResult(Identity.GaussInverse, f"q={field.q} k={k}", lhs, rhs, lhs == rhs)


def verify_theta_expansion(alpha: FqElem, table: CharacterTable, gauss=None) -> IdentityResult:
    """(q-1) theta(alpha) = sum_m G_{-m} T^m(alpha)."""
    field = table.field
    if alpha.code == 0:
        raise ZeroArgument("theta expansion needs alpha != 0")
    gauss = gauss or _GaussCache(table)
    lhs = table.theta(alpha) * (field.q - 1)
    rhs = table.ring.scalar(0)
    for m in range(field.q - 1):
        rhs = rhs + gauss(-m) * table.char_value(m, alpha)
    return IdentityResult(Identity.ThetaExpansion, f"q={field.q} alpha={alpha!r}", lhs, rhs,
                          lhs == rhs)


def verify_davenport_hasse(m: int, psi_index: int, table: CharacterTable,
                           gauss=None) -> IdentityResult:
    """prod_{chi^m=1} G(chi psi) = -G(psi^m) psi(m^-m) prod_{chi^m=1} G(chi)."""
    field = table.field
    n = field.q - 1
    if m < 1 or n % m:
        raise BadModulus(f"q = {field.q} is not 1 mod {m}")
    gauss = gauss or _GaussCache(table)
    chis = [s * n // m for s in range(m)]
    lhs = table.ring.scalar(1)
    prod_chi = table.ring.scalar(1)
    for c in chis:
        lhs = lhs * gauss(c + psi_index)
        prod_chi = prod_chi * gauss(c)
    rhs = -gauss(m * psi_index) * table.char_value(psi_index, field(m) ** (-m)) * prod_chi
    return IdentityResult(Identity.DavenportHasse, f"q={field.q} m={m} psi=T^{psi_index}",
                          lhs, rhs, lhs == rhs)


def oracle_suite(field: FieldCtx, dh_moduli=(2, 3), galois: int = 1) -> list[IdentityResult]:
    """Every admissible instance of the four identities over one field."""
    table = CharacterTable(field, galois=galois)
    gauss = _GaussCache(table)
    n = field.q - 1
    out = [verify_orthogonality(table)]
    out += [verify_gauss_inverse(k, table, gauss) for k in range(1, n)]
    out += [verify_theta_expansion(a, table, gauss) for a in field.elements()[1:]]
    for m in dh_moduli:
        if n % m == 0:
            out += [verify_davenport_hasse(m, psi, table, gauss) for psi in range(n)]
    return out
