import random
from fractions import Fraction

import pytest

from conezeta.mero import (DependentPolesError, InsufficientTruncationError,
                           LinearForm, MeroGerm, NotDivisibleError, PolarTerm,
                           TruncSeries, compose_linear, decompose,
                           divide_exact, germs_equal, pi_minus, pi_plus,
                           taylor_derivative_at_zero)
from conezeta.special import phi_series

E1 = LinearForm({1: 1})
E2 = LinearForm({2: 1})
E12 = LinearForm({1: 1, 2: 1})
W = 16
PHI = phi_series(W + 2)


def phi_at(form: LinearForm, w: int = W) -> TruncSeries:
    return compose_linear(PHI, form, w)


def pole_factor(form: LinearForm, w: int = W) -> MeroGerm:
    """e^{form}/(1 - e^{form}) = -1/form + phi(form)."""
    return MeroGerm(phi_at(form, w),
                    [PolarTerm(TruncSeries.constant(-1, w), [(form, 1)])])


def bracket(*forms, w: int = W) -> MeroGerm:
    germ = MeroGerm.one(w)
    partial: dict = {}
    for f in forms:
        for v, c in f.coeffs.items():
            partial[v] = partial.get(v, Fraction(0)) + c
        germ = germ * pole_factor(LinearForm(partial), w)
    return germ


def test_linear_form_canonicalization():
    f = LinearForm({1: Fraction(-2, 3), 2: Fraction(4, 3)})
    canon, scale = f.canonicalize()
    assert canon.coeffs == {1: 1, 2: -2}
    assert scale == Fraction(-2, 3)
    assert LinearForm({1: Fraction(1, 2), 2: Fraction(-1, 2)}).key() == \
        LinearForm({1: 3, 2: -3}).key()


def test_compose_linear_examples():
    s = compose_linear(PHI, E12, 1)
    assert s.coeff(()) == Fraction(-1, 2)
    assert s.coeff(((1, 1),)) == Fraction(-1, 12)
    assert s.coeff(((2, 1),)) == Fraction(-1, 12)
    half_diff = LinearForm({1: Fraction(1, 2), 2: Fraction(-1, 2)})
    s = compose_linear(PHI, half_diff, 1)
    assert s.coeff(((1, 1),)) == Fraction(-1, 24)
    assert s.coeff(((2, 1),)) == Fraction(1, 24)


def test_divide_exact():
    # (e1+e2)^2 - e2^2 = e1 * (e1 + 2 e2)
    n = (TruncSeries.from_linear_form(E12, 6) *
         TruncSeries.from_linear_form(E12, 6)
         - TruncSeries.from_linear_form(E2, 6) *
         TruncSeries.from_linear_form(E2, 6))
    q = divide_exact(n, E1)
    assert q.coeff(((1, 1),)) == 1
    assert q.coeff(((2, 1),)) == 2
    with pytest.raises(NotDivisibleError):
        divide_exact(TruncSeries.from_linear_form(E2, 6), E1)


def test_mero_mul_dependent_poles():
    a = MeroGerm(TruncSeries.constant(0, 6),
                 [PolarTerm(TruncSeries.constant(1, 6), [(E1, 1)])])
    b = MeroGerm(TruncSeries.constant(0, 6),
                 [PolarTerm(TruncSeries.constant(1, 6),
                            [(LinearForm({1: 2}), 1)])])
    with pytest.raises(DependentPolesError):
        a * b
    one = MeroGerm.one(6)
    assert germs_equal(a * one, a)


def test_pi_plus_one_dimensional():
    g = pole_factor(E1)
    assert pi_plus(g).eq_to_order(phi_at(E1), 12)


def test_pi_plus_pure_fraction_vanishes():
    g = MeroGerm(TruncSeries.constant(0, W),
                 [PolarTerm(TruncSeries.constant(1, W), [(E1, 1), (E12, 1)])])
    assert pi_plus(g).eq_to_order(TruncSeries.constant(0, 12))


def test_pi_plus_single_pole_quotients():
    g = MeroGerm(TruncSeries.constant(0, W),
                 [PolarTerm(phi_at(E12), [(E1, 1)])])
    expected = divide_exact(phi_at(E12) - phi_at(E2), E1)
    assert pi_plus(g).eq_to_order(expected, 12)

    half_diff = LinearForm({1: Fraction(1, 2), 2: Fraction(-1, 2)})
    g = MeroGerm(TruncSeries.constant(0, W),
                 [PolarTerm(phi_at(E1), [(E12, 1)])])
    expected = divide_exact(phi_at(E1) - phi_at(half_diff), E12)
    assert pi_plus(g).eq_to_order(expected, 12)


def _depth2_closed_form(w: int = W) -> TruncSeries:
    half_diff = LinearForm({1: Fraction(1, 2), 2: Fraction(-1, 2)})
    return (phi_at(E1, w) * phi_at(E12, w)
            - divide_exact(phi_at(E12, w) - phi_at(E2, w), E1)
            - divide_exact(phi_at(E1, w) - phi_at(half_diff, w), E12))


def test_depth2_closed_form_to_degree_12():
    holo = pi_plus(bracket(E1, E2))
    assert holo.eq_to_order(_depth2_closed_form(), 12)


def test_depth3_mixed_closed_forms_to_degree_8():
    e3 = LinearForm({3: 1})
    e13 = LinearForm({1: 1, 3: 1})
    e123 = LinearForm({1: 1, 2: 1, 3: 1})
    e23 = LinearForm({2: 1, 3: 1})
    w = 12

    holo = pi_plus(bracket(e13, E2, w=w))
    third = LinearForm({1: Fraction(1, 3), 2: Fraction(-2, 3),
                        3: Fraction(1, 3)})
    closed = (phi_at(e13, w) * phi_at(e123, w)
              - divide_exact(phi_at(e123, w) - phi_at(E2, w), e13)
              - divide_exact(phi_at(e13, w) - phi_at(third, w), e123))
    assert holo.eq_to_order(closed, 8)

    holo = pi_plus(bracket(E1, e23, w=w))
    third = LinearForm({1: Fraction(2, 3), 2: Fraction(-1, 3),
                        3: Fraction(-1, 3)})
    closed = (phi_at(E1, w) * phi_at(e123, w)
              - divide_exact(phi_at(e123, w) - phi_at(e23, w), E1)
              - divide_exact(phi_at(E1, w) - phi_at(third, w), e123))
    assert holo.eq_to_order(closed, 8)


def test_pi_plus_idempotent():
    germ = bracket(E1, E2)
    holo = pi_plus(germ)
    assert pi_plus(MeroGerm(holo)).eq_to_order(holo)
    polar_only = MeroGerm(TruncSeries.constant(0, W), pi_minus(germ))
    again = pi_plus(polar_only)
    assert again.eq_to_order(TruncSeries.constant(0, again.validity))


def test_pi_plus_permutation_independence():
    germ = bracket(E1, E2) * pole_factor(LinearForm({3: 1}))
    reference = decompose(germ)
    rng = random.Random(7)
    for _ in range(5):
        polar = list(germ.polar)
        rng.shuffle(polar)
        shuffled = MeroGerm(germ.holomorphic, polar)
        holo, polar_terms = decompose(shuffled)
        assert holo.eq_to_order(reference[0])
        assert [(t.denominator_key(), t.numerator.terms)
                for t in polar_terms] == \
            [(t.denominator_key(), t.numerator.terms) for t in reference[1]]


def test_mero_mul_commutative_associative():
    a = pole_factor(E1, 10)
    b = pole_factor(E12, 10)
    c = MeroGerm(phi_at(LinearForm({3: 1}), 10))
    assert germs_equal(a * b, b * a, 6)
    assert germs_equal((a * b) * c, a * (b * c), 6)


def test_taylor_derivative_examples():
    holo = pi_plus(bracket(E1, E2))
    assert taylor_derivative_at_zero(holo, (1, 1)) == Fraction(1, 288)
    assert taylor_derivative_at_zero(holo, (2, 1)) == Fraction(-1, 240)
    const = TruncSeries.constant(Fraction(5, 7), 3)
    assert taylor_derivative_at_zero(const, (0, 0)) == Fraction(5, 7)
    with pytest.raises(InsufficientTruncationError):
        taylor_derivative_at_zero(const, (4,))
