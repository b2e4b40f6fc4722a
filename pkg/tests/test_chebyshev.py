from fractions import Fraction

import pytest

from weakram.chebyshev import (cheb_poly, cheb_poly_recurrence, poly_add,
                               poly_eval, poly_gcd_monic, psi_ideal_check,
                               psi_poly, _shifted)
from weakram.rings import RingError


def test_small_values():
    assert cheb_poly("second", -1) == []
    assert cheb_poly("first", 0) == [1]
    assert cheb_poly("first", 1) == [0, 1]
    assert cheb_poly("first", 2) == [-1, 0, 2]
    assert cheb_poly("second", 1) == [0, 2]
    assert cheb_poly("second", 0) == [1]


def test_binomial_formula_matches_recurrence():
    for j in range(0, 31):
        assert cheb_poly("first", j) == cheb_poly_recurrence("first", j)
    for j in range(-1, 31):
        assert cheb_poly("second", j) == cheb_poly_recurrence("second", j)


def test_degrees_and_leading_coefficients():
    for j in range(1, 25):
        t = cheb_poly("first", j)
        assert len(t) - 1 == j
        assert t[-1] == 2 ** (j - 1)
        s = cheb_poly("second", j - 1)
        assert len(s) - 1 == j - 1
        assert s[-1] == 2 ** (j - 1)


def test_second_kind_at_one():
    for j in range(1, 21):
        assert poly_eval(cheb_poly("second", j - 1), 1) == j


def test_psi_small_primes():
    assert psi_poly(3) == [3, 1]
    assert psi_poly(5) == [5, 5, 1]
    assert psi_poly(7) == [7, 14, 7, 1]


def test_psi_is_eisenstein():
    for p in (3, 5, 7, 11, 13, 17, 19, 23):
        psi = psi_poly(p)
        assert len(psi) - 1 == (p - 1) // 2
        assert psi[-1] == 1
        assert psi[0] == p
        assert all(c % p == 0 for c in psi[:-1])
        assert psi[0] % (p * p) != 0


def test_psi_rejects_bad_input():
    with pytest.raises(RingError):
        psi_poly(2)
    with pytest.raises(RingError):
        psi_poly(9)


def test_ideal_check():
    for p in (3, 5, 7, 11, 13):
        rep = psi_ideal_check(p)
        assert rep["first_kind_divisible"]
        assert rep["second_kind_divisible"]


def test_ideal_check_p3_cofactor():
    # S_2(1 + X/2) = X^2 + 4X + 3 = (X + 3)(X + 1)
    rep = psi_ideal_check(3)
    assert rep["second_cofactor"] == [Fraction(1), Fraction(1)]


def test_psi_generates_the_ideal():
    # independent oracle: psi is the monic gcd of the two shifted polynomials
    for p in (3, 5, 7, 11, 13):
        tp = poly_add(_shifted(cheb_poly("first", p)), [Fraction(-1)])
        sp = _shifted(cheb_poly("second", p - 1))
        gcd = poly_gcd_monic(tp, sp)
        assert gcd == [Fraction(c) for c in psi_poly(p)]


def test_shifted_first_kind_factorization():
    # T_p(1 + X/2) - 1 = (1/2) X psi(X)^2, checked by evaluation
    for p in (3, 5, 7):
        tp = poly_add(_shifted(cheb_poly("first", p)), [Fraction(-1)])
        for x in range(-4, 5):
            lhs = poly_eval(tp, Fraction(x))
            rhs = Fraction(x) * poly_eval(psi_poly(p), Fraction(x)) ** 2 / 2
            assert lhs == rhs
