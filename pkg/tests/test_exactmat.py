import random
from fractions import Fraction as F

import pytest

from galwalk.exactmat import (
    BadPrime,
    DimensionMismatch,
    PrimeFieldPolynomial,
    RationalMatrix,
    RationalPolynomial,
    SingularMatrix,
    char_poly,
    char_poly_cofactor,
    det,
    discriminant,
    exact_poly_root,
    is_rational_square,
    mat_inverse,
    mat_mul,
    poly_divmod,
    poly_gcd,
    radical,
    reduce_poly_mod_p,
    resultant,
)

I2 = RationalMatrix.identity(2)


def rand_matrix(rng, n, lo=-5, hi=5):
    return RationalMatrix([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])


def test_mat_mul_identity():
    a = RationalMatrix([[1, 2], [3, 4]])
    assert mat_mul(I2, a) == a
    assert mat_mul(a, I2) == a


def test_mat_mul_inverse_pair():
    d = RationalMatrix.diagonal([2, 3])
    dinv = RationalMatrix.diagonal([F(1, 2), F(1, 3)])
    assert mat_mul(d, dinv) == I2


def test_mat_mul_involution():
    j = RationalMatrix([[0, 1], [1, 0]])
    assert mat_mul(j, j) == I2


def test_mat_mul_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        mat_mul(I2, RationalMatrix.identity(3))


def test_mat_inverse_examples():
    assert mat_inverse(RationalMatrix.identity(4)) == RationalMatrix.identity(4)
    assert mat_inverse(RationalMatrix.diagonal([2, 3])) == RationalMatrix.diagonal(
        [F(1, 2), F(1, 3)]
    )
    assert mat_inverse(RationalMatrix([[1, 1], [0, 1]])) == RationalMatrix(
        [[1, -1], [0, 1]]
    )


def test_mat_inverse_singular():
    with pytest.raises(SingularMatrix):
        mat_inverse(RationalMatrix([[1, 2], [2, 4]]))


def test_mat_inverse_involution_random():
    rng = random.Random(101)
    for _ in range(40):
        n = rng.choice([2, 3, 4])
        m = rand_matrix(rng, n)
        if det(m) == 0:
            continue
        assert mat_inverse(mat_inverse(m)) == m
        assert mat_mul(m, mat_inverse(m)) == RationalMatrix.identity(n)


def test_char_poly_examples():
    assert char_poly(I2) == RationalPolynomial((1, -2, 1))
    assert char_poly(RationalMatrix.diagonal([2, 3])) == RationalPolynomial((6, -5, 1))
    companion = RationalMatrix([[0, 0, 2], [1, 0, 0], [0, 1, 0]])
    assert char_poly(companion) == RationalPolynomial((-2, 0, 0, 1))


def test_char_poly_monic_and_degree():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.choice([2, 3, 4])
        p = char_poly(rand_matrix(rng, n))
        assert p.degree == n and p.is_monic()


def test_char_poly_against_cofactor_expansion():
    # validation oracle for the Faddeev-LeVerrier recurrence
    rng = random.Random(12345)
    for _ in range(60):
        n = rng.choice([2, 3, 4])
        m = rand_matrix(rng, n)
        assert char_poly(m) == char_poly_cofactor(m)


def test_char_poly_conjugation_invariance():
    rng = random.Random(99)
    checked = 0
    while checked < 30:
        n = rng.choice([2, 3, 4])
        a, b = rand_matrix(rng, n), rand_matrix(rng, n)
        if det(a) == 0:
            continue
        conj = mat_mul(mat_mul(a, b), mat_inverse(a))
        assert char_poly(conj) == char_poly(b)
        checked += 1


def test_det_equals_signed_constant_term():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.choice([2, 3, 4])
        m = rand_matrix(rng, n)
        assert det(m) == (-1) ** n * char_poly(m).coeffs[0]


def test_reduce_poly_mod_p_examples():
    assert reduce_poly_mod_p(RationalPolynomial((6, -5, 1)), 7) == PrimeFieldPolynomial(
        7, (6, 2, 1)
    )
    bad = reduce_poly_mod_p(RationalPolynomial((0, F(-1, 2), 1)), 2)
    assert isinstance(bad, BadPrime)
    assert reduce_poly_mod_p(RationalPolynomial((1, 0, 1)), 5) == PrimeFieldPolynomial(
        5, (1, 0, 1)
    )


def test_reduce_poly_leading_drop():
    f = RationalPolynomial((1, 1, 5))  # leading coefficient 5
    assert isinstance(reduce_poly_mod_p(f, 5), BadPrime)


def test_poly_division_and_gcd():
    f = RationalPolynomial((6, -5, 1))
    g = RationalPolynomial((-2, 1))
    q, r = poly_divmod(f, g)
    assert r.is_zero() and q == RationalPolynomial((-3, 1))
    assert poly_gcd(f, g) == RationalPolynomial((-2, 1))
    sq = RationalPolynomial((1, -2, 1))
    assert poly_gcd(sq, sq.derivative()) == RationalPolynomial((-1, 1))


def test_radical_and_exact_root():
    q = RationalPolynomial((1, -3, 1))
    assert radical(q * q) == q.monic()
    assert exact_poly_root(q * q, 2) == q
    assert exact_poly_root(q * q * q, 3) == q
    assert exact_poly_root(q * q * RationalPolynomial((-5, 1)), 2) is None
    cube = RationalPolynomial((-1, 1))
    assert exact_poly_root(cube * cube * cube * cube, 2) is None  # radical^2 != f
    assert exact_poly_root(q, 1) == q


def test_resultant_and_discriminant():
    # disc(x^2 + bx + c) = b^2 - 4c
    f = RationalPolynomial((3, -5, 1))
    assert discriminant(f) == 25 - 12
    # disc(x^3 + px + q) = -4p^3 - 27q^2
    g = RationalPolynomial((2, -1, 0, 1))
    assert discriminant(g) == -4 * (-1) ** 3 - 27 * 4
    # resultant of coprime polynomials is nonzero; of sharing a root, zero
    assert resultant(RationalPolynomial((-1, 1)), RationalPolynomial((-1, 1))) == 0


def test_is_rational_square():
    assert is_rational_square(F(4))
    assert is_rational_square(F(9, 16))
    assert not is_rational_square(F(6))
    assert not is_rational_square(F(-4))
    assert is_rational_square(F(0))


def test_shift_composition():
    f = RationalPolynomial((0, 0, 1))  # T^2
    g = f.shift(1)  # (T+1)^2
    assert g == RationalPolynomial((1, 2, 1))


def test_commutation_with_mod_p_reduction():
    # char_poly then reduce == reduce then char_poly (good primes)
    from galwalk.finfield import charpoly_mod_p, reduce_matrix

    rng = random.Random(2024)
    for _ in range(50):
        n = rng.choice([2, 3, 4])
        m = rand_matrix(rng, n)
        for p in (5, 13, 97):
            assert reduce_poly_mod_p(char_poly(m), p) == charpoly_mod_p(
                reduce_matrix(m, p), p
            )
