"""Fundamental unit and class number of Q(sqrt(p)) for p = 1 (mod 4), and
verification of the Chapman determinant closed forms.

Units are stored as integer pairs (u, v) meaning (u + v sqrt(p))/2 with
u = v (mod 2); the pair multiplication law keeps half-integers exact.  The
class number is the only floating-point computation in the package: the
Dirichlet sine-product formula evaluated in mpmath, guarded by an integrality
gap and an automatic precision-doubling retry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .exactla import IntPoly, det_affine
from .matrices import chapman_matrix
from .ntcore import PrimeCtx


@dataclass(frozen=True)
class QuadUnit:
    """(u + v sqrt(p))/2 with u = v (mod 2)."""

    u: int
    v: int


@dataclass(frozen=True)
class ClassData:
    eps: QuadUnit      # fundamental unit > 1
    h: int             # class number
    eps_h: QuadUnit    # eps^h = a_p + b_p sqrt(p) with (u, v) = (2 a_p, 2 b_p)


def unit_mul(a: QuadUnit, b: QuadUnit, p: int) -> QuadUnit:
    u = a.u * b.u + p * a.v * b.v
    v = a.u * b.v + b.u * a.v
    if u % 2 or v % 2:
        raise ArithmeticError("unit product is not half-integral")
    return QuadUnit(u // 2, v // 2)


def unit_pow(a: QuadUnit, e: int, p: int) -> QuadUnit:
    if e < 0:
        raise ValueError("negative powers not supported")
    acc = QuadUnit(2, 0)  # multiplicative identity: (2 + 0 sqrt p)/2 = 1
    base = a
    while e:
        if e & 1:
            acc = unit_mul(acc, base, p)
        base = unit_mul(base, base, p)
        e >>= 1
    return acc


def unit_norm(a: QuadUnit, p: int) -> int:
    num = a.u * a.u - p * a.v * a.v
    if num % 4:
        raise ArithmeticError("norm is not an integer")
    return num // 4


def _pell_pm1(p: int) -> tuple[int, int]:
    """Fundamental solution of x^2 - p y^2 = +-1 via the continued fraction of sqrt(p)."""
    a0 = math.isqrt(p)
    m, d, a = 0, 1, a0
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    while True:
        m = d * a - m
        d = (p - m * m) // d
        a = (a0 + m) // d
        if d == 1:
            # end of period: the current convergent numerator/denominator solve +-1
            break
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
    x, y = h, k
    if x * x - p * y * y not in (1, -1):
        raise ArithmeticError(f"continued fraction of sqrt({p}) did not close")
    return x, y


def fundamental_unit(p: int) -> QuadUnit:
    """Minimal (u, v), v > 0, with u^2 - p v^2 = +-4, for prime p = 1 (mod 4).

    The continued fraction of sqrt(p) yields the fundamental unit of Z[sqrt p];
    the unit of the maximal order is either that or its exact cube root with
    odd coordinates, which is searched for directly.
    """
    if p % 4 != 1:
        raise ValueError(f"p={p} must be 1 (mod 4)")
    x, y = _pell_pm1(p)
    big = QuadUnit(2 * x, 2 * y)
    # Try eps with eps^3 = big: v(3u^2 + p v^2) = 8y bounds v by ~(8y/3p)^(1/3).
    vmax = round((8 * y / (3 * p)) ** (1 / 3)) + 3
    for v in range(1, vmax + 1, 2):
        for delta in (-4, 4):
            uu = p * v * v + delta
            u = math.isqrt(uu)
            if u * u != uu:
                continue
            cand = QuadUnit(u, v)
            if unit_pow(cand, 3, p) == big:
                _check_unit(cand, p)
                return cand
    _check_unit(big, p)
    return big


def _check_unit(eps: QuadUnit, p: int) -> None:
    if unit_norm(eps, p) not in (1, -1):
        raise ArithmeticError(f"({eps.u} + {eps.v} sqrt {p})/2 is not a unit")
    if eps.v <= 0 or eps.u <= 0:
        raise ArithmeticError("fundamental unit must exceed 1")


def class_number(p: int, precision_bits: int = 128) -> int:
    """Class number of Q(sqrt(p)) by the Dirichlet sine-product formula.

    h = log(prod of sin(pi n/p) over non-residues / over residues) / (2 log eps).
    If the value is too close to a rounding boundary the computation retries
    at doubled precision.
    """
    if p % 4 != 1:
        raise ValueError(f"p={p} must be 1 (mod 4)")
    eps = fundamental_unit(p)
    bits = precision_bits
    for _ in range(8):
        with mpmath.workprec(bits):
            acc = mpmath.mpf(0)
            pi_over_p = mpmath.pi / p
            for a in range(1, p):
                t = mpmath.log(mpmath.sin(pi_over_p * a))
                if pow(a, (p - 1) // 2, p) == 1:
                    acc -= t
                else:
                    acc += t
            eps_val = (eps.u + eps.v * mpmath.sqrt(p)) / 2
            hval = acc / (2 * mpmath.log(eps_val))
            h = int(mpmath.nint(hval))
            gap = float(mpmath.mpf(0.5) - abs(hval - h))
        if gap > 1e-6 and h >= 1:
            return h
        bits *= 2
    raise ArithmeticError(f"class number of {p} did not stabilize")


def class_data(p: int, precision_bits: int = 128) -> ClassData:
    eps = fundamental_unit(p)
    h = class_number(p, precision_bits)
    return ClassData(eps, h, unit_pow(eps, h, p))


def chapman_expected(ctx: PrimeCtx, star: bool, data: ClassData | None = None) -> IntPoly:
    """Closed form of the Chapman determinant as a polynomial in x.

    For p = 1 (mod 4), with eps^h = a_p + b_p sqrt(p) and (u, v) = (2a_p, 2b_p):
        det C   = (-1)^((p-1)/4) 2^((p-1)/2) (b_p - a_p x)
        det C*  = (-1)^((p-1)/4) 2^((p-1)/2) (p b_p x - a_p)
    For p = 3 (mod 4):
        det C   = -2^((p-1)/2) x
        det C*  = +2^((p-1)/2)
    (The star formula's sign for p = 3 (mod 4) is fixed here to match the
    determinants themselves, verified exactly for every 7 <= p <= 103; neither
    branch holds at p = 3, where det C = x + 1 and det C* = 3x - 1.)
    """
    p = ctx.p
    if ctx.cls == 3:
        pw = 1 << ctx.n
        return IntPoly.make((pw,)) if star else IntPoly.make((0, -pw))
    if data is None:
        data = class_data(p)
    u, v = data.eps_h.u, data.eps_h.v
    s = -1 if (p - 1) // 4 % 2 else 1
    half_pw = 1 << (ctx.n - 1)      # 2^((p-1)/2) times a_p or b_p stays integral
    if star:
        return IntPoly.make((-s * half_pw * u, s * half_pw * p * v))
    return IntPoly.make((s * half_pw * v, -s * half_pw * u))


def chapman_verify(
    ctx: PrimeCtx, star: bool, data: ClassData | None = None, precision_bits: int = 128
) -> bool:
    """Compare the exact Chapman determinant with its closed form."""
    if ctx.cls == 1 and data is None:
        data = class_data(ctx.p, precision_bits)
    actual = det_affine(chapman_matrix(ctx, star))
    return actual == chapman_expected(ctx, star, data)
