from fractions import Fraction
from math import comb, factorial

import pytest

from conezeta.special import (UniSeries, bernoulli_number,
                              bernoulli_polynomial, exp_series,
                              format_rational, phi_series, todd_series,
                              zeta_nonpositive)


def test_bernoulli_first_values():
    assert bernoulli_number(0) == 1
    assert bernoulli_number(1) == Fraction(-1, 2)
    assert bernoulli_number(2) == Fraction(1, 6)
    assert bernoulli_number(3) == 0
    assert bernoulli_number(4) == Fraction(-1, 30)
    assert bernoulli_number(12) == Fraction(-691, 2730)


def test_bernoulli_recurrence_oracle():
    # sum_{j=0}^{n} C(n+1, j) B_j = 0 for n >= 1
    for n in range(1, 13):
        s = sum(comb(n + 1, j) * bernoulli_number(j) for j in range(n + 1))
        assert s == 0, n


def test_bernoulli_odd_zeros():
    for k in range(1, 11):
        assert bernoulli_number(2 * k + 1) == 0


def test_bernoulli_polynomials():
    assert bernoulli_polynomial(0) == [1]
    assert bernoulli_polynomial(1) == [Fraction(-1, 2), 1]
    assert bernoulli_polynomial(2) == [Fraction(1, 6), -1, 1]


def test_zeta_nonpositive_values():
    assert zeta_nonpositive(0) == Fraction(-1, 2)
    assert zeta_nonpositive(1) == Fraction(-1, 12)
    assert zeta_nonpositive(2) == 0
    assert zeta_nonpositive(3) == Fraction(1, 120)
    for k in range(1, 6):
        assert zeta_nonpositive(2 * k) == 0


def test_format_rational():
    assert format_rational(Fraction(-157, 80640)) == "-157/80640"
    assert format_rational(Fraction(0)) == "0"
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(1, 288)) == "1/288"


def test_todd_series_matches_bernoulli():
    td = todd_series(12)
    for n in range(13):
        assert factorial(n) * td.coeff(n) == bernoulli_number(n)


def test_phi_series_values():
    phi = phi_series(5)
    assert phi.coeff(0) == Fraction(-1, 2)
    assert phi.coeff(1) == Fraction(-1, 12)
    assert phi.coeff(2) == 0
    assert phi.coeff(3) == Fraction(1, 720)
    assert phi.coeff(5) == Fraction(-1, 30240)


def test_phi_identity():
    # (-1/x + phi(x)) (1 - e^x) = e^x, i.e.
    # x * phi(x) * (1 - e^x) = x e^x + (1 - e^x), checked to order 20
    w = 20
    phi = phi_series(w)
    e = exp_series(w)
    one = UniSeries.constant(1, w)
    lhs_low = phi * (one - e)  # LHS divided by x
    for n in range(w):
        # coefficient of x^{n+1} on both sides
        assert lhs_low.coeff(n) == e.coeff(n) + (one - e).coeff(n + 1), n


def test_uniseries_validity_rules():
    a = UniSeries([1, 2, 3], 2)
    b = UniSeries([1, 1], 5)
    assert (a + b).validity == 2
    assert (a * b).validity == 2
    with pytest.raises(ValueError):
        a.coeff(3)
    assert a.derivative().coeffs == (2, 6)
