import random

import pytest

from conftest import oracle_det_cofactor, oracle_is_prime, oracle_primes
from legdet.exactla import (
    IntPoly,
    char_poly,
    det_affine,
    det_exact,
    det_mod,
    hadamard_bound,
)
from legdet.matrices import carlitz_matrix, chapman_matrix, squares_matrix
from legdet.ntcore import PrimeCtx


def _random_matrix(rng, dim, lo=-1, hi=1):
    return [[rng.randint(lo, hi) for _ in range(dim)] for _ in range(dim)]


def test_det_exact_trivial():
    assert det_exact([]) == 1
    assert det_exact([[7]]) == 7
    assert det_exact([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1


def test_det_exact_known_values():
    assert det_exact(squares_matrix(PrimeCtx.for_prime(5), 1)) == 1
    assert det_exact(squares_matrix(PrimeCtx.for_prime(13), 1)) == -27


def test_det_exact_matches_cofactor_on_1000_random_sign_matrices():
    rng = random.Random(20240)
    for _ in range(1000):
        dim = rng.randint(0, 6)
        m = _random_matrix(rng, dim)
        assert det_exact([row[:] for row in m]) == oracle_det_cofactor(m)


def test_det_exact_transpose_and_row_swap():
    rng = random.Random(5)
    for _ in range(100):
        dim = rng.randint(2, 6)
        m = _random_matrix(rng, dim, -4, 4)
        d = det_exact([row[:] for row in m])
        mt = [list(col) for col in zip(*m)]
        assert det_exact(mt) == d
        i, j = rng.sample(range(dim), 2)
        swapped = [row[:] for row in m]
        swapped[i], swapped[j] = swapped[j], swapped[i]
        assert det_exact(swapped) == -d


def test_det_exact_rejects_non_square():
    with pytest.raises(ValueError):
        det_exact([[1, 2, 3], [4, 5, 6]])


def test_det_mod_examples():
    m13 = squares_matrix(PrimeCtx.for_prime(13), 1)
    assert det_mod(m13, 101) == 74  # -27 mod 101
    assert det_mod([[1, 0], [0, 1]], 97) == 1
    assert det_mod(squares_matrix(PrimeCtx.for_prime(5), 1), 7) == 1


def test_det_mod_agrees_with_det_exact():
    rng = random.Random(99)
    qs = [q for q in range(10**6, 10**6 + 200) if oracle_is_prime(q)][:5]
    for _ in range(60):
        dim = rng.randint(1, 7)
        m = _random_matrix(rng, dim, -5, 5)
        d = det_exact([row[:] for row in m])
        for q in qs:
            assert det_mod(m, q) == d % q


def test_det_affine_examples():
    # 2x2 by hand: (x+1)(x-1) - (x-1)^2 = 2x - 2
    assert det_affine(chapman_matrix(PrimeCtx.for_prime(5))) == IntPoly.make((-2, 2))
    assert det_affine(chapman_matrix(PrimeCtx.for_prime(7))) == IntPoly.make((0, -8))
    # direct 4x4 cofactor expansion gives the constant +8 for the star variant
    c7s = chapman_matrix(PrimeCtx.for_prime(7), star=True)
    assert oracle_det_cofactor(c7s.at(0)) == 8
    assert oracle_det_cofactor(c7s.at(1)) == 8
    assert det_affine(c7s) == IntPoly.make((8,))


def test_det_affine_always_degree_at_most_one():
    for p in oracle_primes(3, 61):
        ctx = PrimeCtx.for_prime(p)
        for star in (False, True):
            poly = det_affine(chapman_matrix(ctx, star))
            assert poly.degree() <= 1


def test_char_poly_carlitz_closed_forms():
    # p = 5: (x^2 - 5)(x^2 - 1) = x^4 - 6x^2 + 5
    assert char_poly(carlitz_matrix(PrimeCtx.for_prime(5))) == IntPoly.make(
        (5, 0, -6, 0, 1)
    )
    # p = 7: (x^2 + 7)^2 (x^2 + 1) = x^6 + 15x^4 + 63x^2 + 49
    assert char_poly(carlitz_matrix(PrimeCtx.for_prime(7))) == IntPoly.make(
        (49, 0, 63, 0, 15, 0, 1)
    )
    assert char_poly([[5]]) == IntPoly.make((-5, 1))


def test_char_poly_against_cofactor_at_fresh_points():
    rng = random.Random(31337)
    for _ in range(60):
        dim = rng.randint(1, 5)
        m = _random_matrix(rng, dim, -3, 3)
        poly = char_poly(m)
        assert poly.degree() == dim and poly.coeffs[-1] == 1
        assert poly.eval_at(0) == (-1) ** dim * det_exact([row[:] for row in m])
        for t in (-2, dim + 3, 17):
            shifted = [
                [(t if i == j else 0) - m[i][j] for j in range(dim)]
                for i in range(dim)
            ]
            assert poly.eval_at(t) == oracle_det_cofactor(shifted)


def test_hadamard_bound():
    assert hadamard_bound([[1, 1], [1, -1]]) == 2
    assert hadamard_bound([[0, 0], [0, 0]]) == 0
    m13 = squares_matrix(PrimeCtx.for_prime(13), 1)
    assert hadamard_bound(m13) >= 27
    rng = random.Random(4)
    for _ in range(200):
        dim = rng.randint(1, 6)
        m = _random_matrix(rng, dim, -3, 3)
        assert abs(det_exact([row[:] for row in m])) <= hadamard_bound(m)


def test_int_poly_basics():
    p = IntPoly.make((1, 2, 0))
    assert p.coeffs == (1, 2)
    assert p.degree() == 1
    assert p.eval_at(3) == 7
    q = IntPoly.make((0, 1))
    assert (q * q).coeffs == (0, 0, 1)
    assert (q**3).coeffs == (0, 0, 0, 1)
    assert (p + IntPoly.make((-1, -2))).coeffs == ()
    assert str(IntPoly.make((-32, 96))) == "96*x - 32"
    assert str(IntPoly.make(())) == "0"
    assert str(IntPoly.make((8,))) == "8"
    assert str(IntPoly.make((5, 0, -6, 0, 1))) == "x^4 - 6*x^2 + 5"
