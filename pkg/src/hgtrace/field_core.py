"""Prime-field contexts, multiplicative characters, and the quadratic extension.

A PrimeFieldCtx bundles a prime p with its least primitive root and a full
discrete-log table, which is the substrate every character sum in this package
is built on. Character values are complex roots of unity taken from a shared
table of powers of zeta = exp(2*pi*i/(p-1)); downstream code snaps rational
quantities back to exact integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _kernels

DEFAULT_P_BOUND = 100_000


class FieldError(ValueError):
    """Bad prime, size overflow, or congruence failure."""


class CongruenceError(FieldError):
    """Raised when p does not satisfy a required p = 1 (mod M) condition."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def least_primitive_root(p: int) -> int:
    """Smallest generator of F_p^*, found by checking prime-divisor orders."""
    if p == 2:
        return 1
    n = p - 1
    # prime factors of p-1
    factors = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            factors.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        factors.append(m)
    for g in range(2, p):
        if all(pow(g, n // q, p) != 1 for q in factors):
            return g
    raise FieldError(f"no primitive root found for {p}")


def nth_primitive_root(p: int, index: int) -> int:
    """The index-th smallest primitive root of p (index 0 = least)."""
    n = p - 1
    found = 0
    for g in range(2, p):
        x, order = g, 1
        while x != 1:
            x = x * g % p
            order += 1
        if order == n:
            if found == index:
                return g
            found += 1
    raise FieldError(f"fewer than {index + 1} primitive roots mod {p}")


@dataclass(frozen=True)
class PrimeFieldCtx:
    """Immutable context for F_p: generator, dlog table, root-of-unity table."""

    p: int
    g: int
    dlog: np.ndarray = field(repr=False, compare=False)
    zeta: np.ndarray = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        """Order of the multiplicative group."""
        return self.p - 1

    def char(self, e: int) -> "MultCharacter":
        return MultCharacter(self, e % self.n)

    @property
    def trivial_char(self) -> "MultCharacter":
        return self.char(0)

    @property
    def quadratic_char(self) -> "MultCharacter":
        return self.char(self.n // 2)

    def legendre(self, x: int) -> int:
        x %= self.p
        if x == 0:
            return 0
        return 1 if self.dlog[x] % 2 == 0 else -1

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(x, self.p - 2, self.p)

    def __reduce__(self):
        # keep multiprocessing pickles small; rebuild tables on the worker
        return (build_ctx, (self.p, max(self.p, DEFAULT_P_BOUND), self.g))


def build_ctx(p: int, bound: int = DEFAULT_P_BOUND, generator: int | None = None) -> PrimeFieldCtx:
    """Construct a PrimeFieldCtx with verified primitive root and dlog table.

    The dlog table is O(p) and character sums over it are O(p^2), so p is
    capped (default 10^5). Passing an explicit generator is supported for
    generator-independence tests; it must itself be a primitive root.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if p == 2:
        raise FieldError("p must be an odd prime")
    if p > bound:
        raise FieldError(f"p = {p} exceeds the configured bound {bound}")
    g = least_primitive_root(p) if generator is None else generator
    dlog = _kernels.dlog_table(p, g)
    if generator is not None and np.count_nonzero(dlog >= 0) != p - 1:
        raise FieldError(f"{generator} is not a primitive root mod {p}")
    n = p - 1
    zeta = np.exp(2j * np.pi * np.arange(n) / n)
    return PrimeFieldCtx(p=p, g=g, dlog=dlog, zeta=zeta)


@lru_cache(maxsize=64)
def cached_ctx(p: int) -> PrimeFieldCtx:
    """Shared default context for p (least primitive root)."""
    return build_ctx(p)


@dataclass(frozen=True)
class MultCharacter:
    """Multiplicative character of F_p^*, represented by its exponent mod p-1.

    value(x) = zeta^(e * dlog(x)) with zeta = exp(2*pi*i/(p-1)), and the
    A(0) = 0 convention for every character including the trivial one.
    """

    ctx: PrimeFieldCtx
    e: int

    def __post_init__(self):
        object.__setattr__(self, "e", self.e % self.ctx.n)

    def __call__(self, x: int) -> complex:
        x %= self.ctx.p
        if x == 0:
            return 0j
        return complex(self.ctx.zeta[(self.e * int(self.ctx.dlog[x])) % self.ctx.n])

    def value_at_minus1(self) -> int:
        """chi(-1) as an exact +-1 (the exponent parity, since dlog(-1) = n/2)."""
        return 1 if (self.e * (self.ctx.n // 2)) % self.ctx.n == 0 else -1

    @property
    def order(self) -> int:
        from math import gcd
        return self.ctx.n // gcd(self.e, self.ctx.n)

    @property
    def is_trivial(self) -> bool:
        return self.e == 0

    def __mul__(self, other: "MultCharacter") -> "MultCharacter":
        if other.ctx.p != self.ctx.p:
            raise FieldError("characters on different fields")
        return MultCharacter(self.ctx, self.e + other.e)

    def inverse(self) -> "MultCharacter":
        return MultCharacter(self.ctx, -self.e)

    conjugate = inverse

    def is_square(self) -> bool:
        """Whether chi = S^2 for some character S (exponent parity; n is even)."""
        return self.e % 2 == 0

    def sqrt(self) -> "MultCharacter":
        if not self.is_square():
            raise FieldError("character is not a square in the character group")
        return MultCharacter(self.ctx, self.e // 2)


def power_residue_char(ctx: PrimeFieldCtx, a: Fraction | int) -> MultCharacter:
    """The character iota(a) attached to a rational a with denominator M | p-1.

    iota(a) has exponent a*(p-1); its value at the chosen generator is
    exp(2*pi*i*a), so iota(1/2) is the quadratic character and integers map to
    the trivial character.
    """
    a = Fraction(a)
    M = a.denominator
    if (ctx.p - 1) % M:
        raise CongruenceError(f"denominator {M} of {a} does not divide p-1 = {ctx.p - 1}")
    e = a.numerator * ((ctx.p - 1) // M)
    return MultCharacter(ctx, e)


def legendre_symbol(ctx: PrimeFieldCtx, x: int) -> int:
    """Quadratic character of x, valued in {-1, 0, +1}."""
    return ctx.legendre(x)


@dataclass(frozen=True)
class QuadExtCtx:
    """F_{p^2} = F_p(sqrt(nu)) with nu a quadratic non-residue.

    Elements are (a, b) pairs meaning a + b*sqrt(nu). Only the handful of
    operations the point counters need are provided.
    """

    base: PrimeFieldCtx
    nu: int

    @property
    def q(self) -> int:
        return self.base.p ** 2

    def mul(self, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        p = self.base.p
        a, b = x
        c, d = y
        return ((a * c + self.nu * b * d) % p, (a * d + b * c) % p)

    def add(self, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        p = self.base.p
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p)

    def pow(self, x: tuple[int, int], e: int) -> tuple[int, int]:
        r = (1, 0)
        while e:
            if e & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            e >>= 1
        return r

    def norm(self, x: tuple[int, int]) -> int:
        p = self.base.p
        return (x[0] * x[0] - self.nu * x[1] * x[1]) % p

    def is_square(self, x: tuple[int, int]) -> int:
        """Legendre-style square indicator in F_{p^2}: x square iff N(x) square in F_p."""
        if x == (0, 0):
            return 0
        return self.base.legendre(self.norm(x))

    def sqrt_of_base(self, v: int) -> tuple[int, int]:
        """A square root of v in F_{p^2} for v in F_p (always exists)."""
        p = self.base.p
        v %= p
        if v == 0:
            return (0, 0)
        if self.base.legendre(v) == 1:
            r = tonelli_sqrt(v, p)
            return (r, 0)
        # v = nu * c^2
        c2 = v * self.base.inv(self.nu) % p
        return (0, tonelli_sqrt(c2, p))


def tonelli_sqrt(v: int, p: int) -> int:
    """Square root mod p of a quadratic residue v (simple Tonelli-Shanks)."""
    v %= p
    if v == 0:
        return 0
    if p % 4 == 3:
        return pow(v, (p + 1) // 4, p)
    # Tonelli-Shanks for p = 1 mod 4
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(v, q, p), pow(v, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def build_quad_ext(ctx: PrimeFieldCtx) -> QuadExtCtx:
    """Quadratic extension with the least non-residue as sqrt generator."""
    for nu in range(2, ctx.p):
        if ctx.legendre(nu) == -1:
            return QuadExtCtx(base=ctx, nu=nu)
    raise FieldError("no quadratic non-residue found (p = 2?)")
