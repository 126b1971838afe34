"""Multiplicative characters mod p, the eigenvalues of the squares matrix, and
exact cyclotomic arithmetic in Z[zeta_{p-1}].

The eigenvalue of index k is lambda_k = sum_{j=1..n} ((1+j^2)/p) chi^k(j^2),
chi a generator of the character group.  Two evaluation modes exist: exact
cyclotomic (authoritative; coefficient vectors reduced mod x^(p-1) - 1 during
arithmetic and canonicalized mod the cyclotomic polynomial only at comparison
time) and high-precision floating (mpmath for the values, numpy for the
eigenvector residual sweep).  Integrality claims are never decided by floats:
they route through exact determinants.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import mpmath
import numpy as np

from .exactla import det_exact
from .matrices import squares_matrix
from .ntcore import PrimeCtx, is_perfect_square

EXACT_PMAX = 61          # cyclotomic arithmetic stays cheap up to here
RESIDUAL_TOL = 1e-9      # float-mode eigenvector residual
IMAG_REL_TOL = 1e-12     # float-mode relative imaginary part


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients (low first) of the m-th cyclotomic polynomial.

    Computed as (x^m - 1) / prod of the lower-order cyclotomic polynomials,
    all divisions exact.
    """
    if m < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_div_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _poly_div_exact(num: list[int], den: tuple[int, ...]) -> list[int]:
    """Exact division of integer polynomials with monic divisor."""
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c == 0:
            continue
        out[i - dn] = c
        for j, dc in enumerate(den):
            num[i - dn + j] -= c * dc
    if any(num):
        raise ArithmeticError("polynomial division left a remainder")
    return out


def _reduce_mod_cyclotomic(vec, m: int) -> tuple[int, ...]:
    """Canonical form of sum c_t zeta^t: remainder mod the m-th cyclotomic poly."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    rem = list(vec)
    for i in range(len(rem) - 1, deg - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        rem[i] = 0
        for j in range(deg):
            rem[i - deg + j] -= c * phi[j]
    while rem and rem[-1] == 0:
        rem.pop()
    return tuple(rem)


@dataclass(frozen=True)
class CyclotomicElt:
    """Exact element of Z[zeta_m] as a length-m coefficient vector (zeta^t basis)."""

    order: int
    coeffs: tuple[int, ...]

    @staticmethod
    def zero(m: int) -> "CyclotomicElt":
        return CyclotomicElt(m, (0,) * m)

    @staticmethod
    def from_int(m: int, c: int) -> "CyclotomicElt":
        return CyclotomicElt(m, (c,) + (0,) * (m - 1))

    def __add__(self, other: "CyclotomicElt") -> "CyclotomicElt":
        return CyclotomicElt(
            self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "CyclotomicElt") -> "CyclotomicElt":
        return CyclotomicElt(
            self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "CyclotomicElt":
        return CyclotomicElt(self.order, tuple(-a for a in self.coeffs))

    def __mul__(self, other: "CyclotomicElt") -> "CyclotomicElt":
        m = self.order
        out = [0] * m
        b = other.coeffs
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y:
                    t = i + j
                    out[t - m if t >= m else t] += x * y
        return CyclotomicElt(m, tuple(out))

    def conjugate(self) -> "CyclotomicElt":
        """Image under zeta -> zeta^(-1) (complex conjugation)."""
        m = self.order
        out = [0] * m
        for t, c in enumerate(self.coeffs):
            out[(m - t) % m] = c
        return CyclotomicElt(m, tuple(out))

    def canonical(self) -> tuple[int, ...]:
        return _reduce_mod_cyclotomic(self.coeffs, self.order)

    def is_zero(self) -> bool:
        return self.canonical() == ()

    def as_int(self) -> int | None:
        """The value as a rational integer, or None if it is not one."""
        c = self.canonical()
        if c == ():
            return 0
        if len(c) == 1:
            return c[0]
        return None

    def to_float(self, prec_bits: int = 128) -> mpmath.mpc:
        roots = _root_table(self.order, prec_bits)
        with mpmath.workprec(prec_bits):
            return sum(
                (c * roots[t] for t, c in enumerate(self.coeffs) if c),
                start=mpmath.mpc(0),
            )


class CharacterTable:
    """The characters chi^k of (Z/pZ)^*, chi(x) = zeta_{p-1}^dlog(x).

    Values are stored as exponents: chi^k(x) = zeta^(k*dlog(x) mod p-1), and
    chi^k(0) = 0 by convention (exponent None).
    """

    def __init__(self, ctx: PrimeCtx):
        self.ctx = ctx
        self.order = ctx.p - 1

    def exponent(self, k: int, x: int) -> int | None:
        x %= self.ctx.p
        if x == 0:
            return None
        return (k * self.ctx.dlog[x]) % self.order


@functools.lru_cache(maxsize=16)
def _root_table(m: int, prec_bits: int):
    with mpmath.workprec(prec_bits):
        base = mpmath.expjpi(mpmath.mpf(2) / m)
        return tuple(base**t for t in range(m))


def eigenvalue_exact(ctx: PrimeCtx, k: int) -> CyclotomicElt:
    """lambda_k as an exact element of Z[zeta_{p-1}]."""
    p, m = ctx.p, ctx.p - 1
    if not 1 <= k <= ctx.n:
        raise ValueError(f"k={k} out of range 1..{ctx.n}")
    vec = [0] * m
    sym, dlog = ctx.symbols, ctx.dlog
    for j in range(1, ctx.n + 1):
        c = sym[(1 + j * j) % p]
        if c:
            vec[(2 * k * dlog[j]) % m] += c
    return CyclotomicElt(m, tuple(vec))


def eigenvalue_float(ctx: PrimeCtx, k: int, prec_bits: int = 128) -> mpmath.mpc:
    """lambda_k as a high-precision complex number."""
    return eigenvalue_exact(ctx, k).to_float(prec_bits)


@dataclass(frozen=True)
class EigenReport:
    p: int
    mode: str                                   # "exact" | "float"
    lambdas: tuple[float, ...]                  # real parts, index k = 1..n
    residuals: tuple[float, ...]                # per-k eigenvector residual
    max_imag_rel: float
    vandermonde_ok: bool
    exact_ok: bool | None                       # exact-mode identities, else None
    lambdas_exact: tuple[CyclotomicElt, ...] | None

    @property
    def residual(self) -> float:
        return max(self.residuals) if self.residuals else 0.0

    @property
    def ok(self) -> bool:
        if not self.vandermonde_ok or self.max_imag_rel > IMAG_REL_TOL:
            return False
        if self.mode == "exact":
            return bool(self.exact_ok)
        return self.residual < RESIDUAL_TOL

    def rows(self) -> list[dict]:
        """One JSON-ready record per eigenvalue."""
        out = []
        for i, lam in enumerate(self.lambdas):
            row = {"p": self.p, "k": i + 1, "lambda_float": lam}
            if self.lambdas_exact is not None:
                row["lambda_exact"] = list(self.lambdas_exact[i].canonical())
            row["residual"] = self.residuals[i]
            out.append(row)
        return out


def eigen_verify(
    ctx: PrimeCtx,
    exact: bool | None = None,
    prec_bits: int = 128,
) -> EigenReport:
    """Check that the lambda_k are exactly the eigenvalues of the squares matrix.

    Exact mode verifies M v_k = lambda_k v_k in Z[zeta_{p-1}] for every k and
    every component, plus realness of each lambda_k; float mode bounds the
    residual of the same identity in floating point.  Both check that the
    eigenvector matrix is nonsingular (the chi(j^2) are pairwise distinct).
    """
    if ctx.cls != 1:
        raise ValueError(f"p={ctx.p} must be 1 (mod 4)")
    if exact is None:
        exact = ctx.p <= EXACT_PMAX
    p, n, m = ctx.p, ctx.n, ctx.p - 1
    dlog, sym = ctx.dlog, ctx.symbols
    sq_exps = [(2 * dlog[j]) % m for j in range(1, n + 1)]
    vandermonde_ok = len(set(sq_exps)) == n

    lams_exact = tuple(eigenvalue_exact(ctx, k) for k in range(1, n + 1))
    floats = [lam.to_float(prec_bits) for lam in lams_exact]
    with mpmath.workprec(prec_bits):
        max_imag = max(
            float(abs(z.imag) / max(1, abs(z))) for z in floats
        )
    lam_re = tuple(float(z.real) for z in floats)

    if exact:
        ok = all(
            (lam - lam.conjugate()).is_zero() for lam in lams_exact
        )
        M = squares_matrix(ctx, 1).entries
        for ki, lam in enumerate(lams_exact, start=1):
            if not ok:
                break
            for i in range(1, n + 1):
                vec = [0] * m
                row = M[i - 1]
                for j in range(1, n + 1):
                    c = row[j - 1]
                    if c:
                        vec[(2 * ki * dlog[j]) % m] += c
                shift = (2 * ki * dlog[i]) % m
                for t, c in enumerate(lam.coeffs):
                    if c:
                        vec[(t + shift) % m] -= c
                if _reduce_mod_cyclotomic(vec, m) != ():
                    ok = False
                    break
        return EigenReport(
            p, "exact", lam_re, (0.0,) * n, max_imag, vandermonde_ok, ok, lams_exact
        )

    Mf = np.array(squares_matrix(ctx, 1).entries, dtype=np.float64)
    E = np.empty((n, n), dtype=np.int64)
    for k in range(1, n + 1):
        E[:, k - 1] = [(k * e) % m for e in sq_exps]
    V = np.exp(2j * np.pi * E / m)
    lam_arr = np.array(lam_re, dtype=np.float64)
    R = Mf @ V - V * lam_arr[None, :]
    residuals = tuple(float(x) for x in np.abs(R).max(axis=0))
    return EigenReport(
        p, "float", lam_re, residuals, max_imag, vandermonde_ok, None, None
    )


def product_identity(ctx: PrimeCtx) -> tuple[int, int]:
    """(product of all lambda_k reduced to an integer, exact det of the matrix).

    The two values are computed along fully independent routes: cyclotomic
    multiplication on one side, Bareiss elimination on the other.
    """
    if ctx.cls != 1:
        raise ValueError(f"p={ctx.p} must be 1 (mod 4)")
    m = ctx.p - 1
    acc = CyclotomicElt.from_int(m, 1)
    for k in range(1, ctx.n + 1):
        acc = acc * eigenvalue_exact(ctx, k)
    prod = acc.as_int()
    if prod is None:
        raise ArithmeticError("eigenvalue product did not reduce to an integer")
    det = det_exact(squares_matrix(ctx, 1))
    return prod, det


def pair_product_square(ctx: PrimeCtx) -> tuple[int, int]:
    """(det/a, its integer square root): the conjugate-pair product squared.

    lambda_n = -1 and lambda_{n/2} = -a are evaluated exactly; dividing them
    out of the determinant must leave a perfect square (the paired eigenvalues
    multiply to the square of a rational integer).
    """
    if ctx.cls != 1:
        raise ValueError(f"p={ctx.p} must be 1 (mod 4)")
    lam_n = eigenvalue_exact(ctx, ctx.n).as_int()
    lam_half = eigenvalue_exact(ctx, ctx.n // 2).as_int()
    if lam_n is None or lam_half is None:
        raise ArithmeticError("corner eigenvalues did not reduce to integers")
    det = det_exact(squares_matrix(ctx, 1))
    denom = lam_n * lam_half
    quotient, rem = divmod(det, denom)
    if rem != 0:
        raise ArithmeticError(f"det={det} is not divisible by {denom}")
    root = is_perfect_square(quotient)
    if root is None:
        raise ArithmeticError(f"quotient {quotient} is not a perfect square")
    return quotient, root


def row_identity_check(ctx: PrimeCtx) -> bool:
    """sum_i ((i^2+j^2)/p)(i/p) = -a (j/p) for every j = 1..n."""
    if ctx.cls != 1 or ctx.decomp is None:
        raise ValueError(f"p={ctx.p} must be 1 (mod 4)")
    p, n = ctx.p, ctx.n
    sym = np.array(ctx.symbols, dtype=np.int64)
    i = np.arange(1, n + 1, dtype=np.int64)
    sq = i * i % p
    idx = (sq[:, None] + sq[None, :]) % p
    lhs = sym[i] @ sym[idx]
    rhs = -ctx.decomp.a * sym[i]
    return bool(np.array_equal(lhs, rhs))
