"""Scalar number theory: primality, Legendre and quartic symbols, two-square
decompositions, Jacobsthal sums, permutation signs, perfect-square testing.

Everything here is exact integer arithmetic on machine-word primes; all
functions are pure and PrimeCtx is immutable, so values can be shared freely
across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Deterministic Miller-Rabin witness set, valid for all n < 3.3 * 10^24
# (covers the full 64-bit range and then some).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(m: int) -> bool:
    """Deterministic primality test for machine-word integers."""
    if m < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if m == q:
            return True
        if m % q == 0:
            return False
    d = m - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, m)
        if x == 1 or x == m - 1:
            continue
        for _ in range(r - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def mod_pow(base: int, exp: int, mod: int) -> int:
    """base**exp mod mod for exp >= 0, mod >= 1."""
    if mod <= 0:
        raise ValueError("modulus must be positive")
    if exp < 0:
        raise ValueError("exponent must be non-negative")
    return pow(base, exp, mod)


def legendre(x: int, p: int) -> int:
    """Legendre symbol (x/p) by Euler's criterion; p an odd prime."""
    x %= p
    if x == 0:
        return 0
    return 1 if pow(x, (p - 1) // 2, p) == 1 else -1


def _factor_trial(m: int) -> list[int]:
    """Distinct prime factors by trial division (fine at desk scale)."""
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out.append(m)
    return out


def find_generator(p: int) -> int:
    """Smallest generator of the multiplicative group mod p."""
    if p == 2:
        return 1
    factors = _factor_trial(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise ValueError(f"no generator found for {p}")  # unreachable for prime p


def sqrt_mod(x: int, p: int) -> int | None:
    """A square root of x mod p (Tonelli-Shanks), or None if x is a non-residue.

    Returns the smaller of the two roots for determinism.
    """
    x %= p
    if x == 0:
        return 0
    if p == 2:
        return x
    if legendre(x, p) != 1:
        return None
    # write p - 1 = q * 2^s with q odd
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    if s == 1:
        r = pow(x, (p + 1) // 4, p)
        return min(r, p - r)
    z = 2
    while legendre(z, p) != -1:
        z += 1
    c = pow(z, q, p)
    r = pow(x, (q + 1) // 2, p)
    t = pow(x, q, p)
    m = s
    while t != 1:
        i = 0
        t2 = t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        r = r * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return min(r, p - r)


def is_perfect_square(v: int) -> int | None:
    """The non-negative integer root of v if v is a perfect square, else None."""
    if v < 0:
        return None
    r = math.isqrt(v)
    return r if r * r == v else None


@dataclass(frozen=True)
class TwoSquare:
    """The normalized decomposition p = a^2 + 4*b^2 with a odd, a = 1 (mod 4), b > 0."""

    a: int
    b: int


@dataclass(frozen=True, eq=False)
class PrimeCtx:
    """A validated odd prime with its multiplicative structure precomputed.

    symbols[x] is the Legendre symbol (x/p); dlog[x] the index of x base g
    (dlog[0] = -1 sentinel).  decomp is present exactly when p = 1 (mod 4).
    """

    p: int
    n: int
    cls: int
    g: int
    dlog: tuple[int, ...]
    symbols: tuple[int, ...]
    decomp: TwoSquare | None

    @classmethod
    def for_prime(cls, p: int, g: int | None = None) -> "PrimeCtx":
        if not is_prime(p) or p == 2:
            raise ValueError(f"{p} is not an odd prime")
        if g is None:
            g = find_generator(p)
        else:
            factors = _factor_trial(p - 1)
            if g % p == 0 or any(pow(g, (p - 1) // q, p) == 1 for q in factors):
                raise ValueError(f"{g} does not generate the units mod {p}")
        dlog = [-1] * p
        x = 1
        for t in range(p - 1):
            dlog[x] = t
            x = x * g % p
        symbols = [0] * p
        for r in range(1, p):
            symbols[r] = 1 if dlog[r] % 2 == 0 else -1
        decomp = _two_square(p) if p % 4 == 1 else None
        return cls(p, (p - 1) // 2, p % 4, g, tuple(dlog), tuple(symbols), decomp)

    def legendre(self, x: int) -> int:
        return self.symbols[x % self.p]

    def epsilon(self, d: int) -> int:
        """-1 when d is a quadratic but not biquadratic residue mod p, else +1."""
        if self.cls != 1 or self.legendre(d) != 1:
            return 1
        return -1 if pow(d % self.p, (self.p - 1) // 4, self.p) == self.p - 1 else 1


def _two_square(p: int) -> TwoSquare:
    """p = a^2 + 4 b^2 via sqrt(-1) mod p and Cornacchia's Euclidean descent."""
    r = sqrt_mod(p - 1, p)
    assert r is not None  # -1 is a residue since p = 1 (mod 4)
    a0, b0 = p, r
    while b0 * b0 > p:
        a0, b0 = b0, a0 % b0
    x = b0
    y = math.isqrt(p - x * x)
    assert x * x + y * y == p
    odd, even = (x, y) if x % 2 == 1 else (y, x)
    a = odd if odd % 4 == 1 else -odd
    return TwoSquare(a, even // 2)


def two_square_decompose(ctx: PrimeCtx) -> TwoSquare:
    """The unique (a, b) with p = a^2 + 4 b^2, a = 1 (mod 4), b > 0."""
    if ctx.decomp is None:
        raise ValueError(f"p={ctx.p} is 3 (mod 4): no two-square decomposition")
    return ctx.decomp


def jacobsthal_sum(ctx: PrimeCtx) -> int:
    """sum_{j=1..n} ((1+j^2)/p) (j/p); equals -a for p = 1 (mod 4)."""
    p, sym = ctx.p, ctx.symbols
    return sum(sym[(1 + j * j) % p] * sym[j] for j in range(1, ctx.n + 1))


def perm_sign_cycles(ctx: PrimeCtx, d: int) -> int:
    """Sign of x -> d*x on the quadratic residues, by cycle decomposition."""
    d %= ctx.p
    if ctx.legendre(d) != 1:
        raise ValueError(f"d={d} is not a quadratic residue mod {ctx.p}")
    p = ctx.p
    visited = bytearray(p)
    cycles = 0
    for j in range(1, ctx.n + 1):
        s = j * j % p
        if visited[s]:
            continue
        cycles += 1
        x = s
        while not visited[x]:
            visited[x] = 1
            x = x * d % p
    return -1 if (ctx.n - cycles) % 2 else 1


def perm_sign_formula(ctx: PrimeCtx, d: int) -> int:
    """Sign of the same permutation via d^((p-1)/4) mod p, for p = 1 (mod 4)."""
    d %= ctx.p
    if ctx.legendre(d) != 1:
        raise ValueError(f"d={d} is not a quadratic residue mod {ctx.p}")
    if ctx.cls != 1:
        raise ValueError(f"p={ctx.p} must be 1 (mod 4)")
    t = pow(d, (ctx.p - 1) // 4, ctx.p)
    if t == 1:
        return 1
    if t == ctx.p - 1:
        return -1
    raise ArithmeticError(f"d^((p-1)/4) = {t} is not +-1 mod {ctx.p}")  # unreachable
