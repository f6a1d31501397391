"""Renormalized conical zeta values at non-positive integers.

The value zeta(-a_1, ..., -a_k) attached to a cone is the mixed partial
derivative at zero, with orders a_i, of the canonical holomorphic part
of the cone's exponential-sum germ.  Chen cones give the multiple zeta
values (open cone) and multiple zeta-star values (closed cone).
"""

from __future__ import annotations

from fractions import Fraction

from .coalgebra import (Character, birkhoff_factorize, cone_coalgebra,
                        germ_target)
from .cones import LatticeCone, bracket_germ, chen_cone, exp_sum
from .mero import LinearForm, pi_plus, taylor_derivative_at_zero
from .special import zeta_nonpositive

_holo_cache: dict = {}
_birkhoff_cache: dict = {}


def working_order(exponents, dim: int) -> int:
    """Validity needed to extract |a| derivatives through dim pole factors."""
    return sum(exponents) + dim


def _holomorphic_part(cone: LatticeCone, open_: bool, w: int, path: str):
    key = (cone.key(), open_, w, path)
    if key in _holo_cache:
        return _holo_cache[key]
    if path == "direct":
        holo = pi_plus(exp_sum(cone, open_, w))
    elif path == "birkhoff":
        bkey = (open_, w)
        if bkey not in _birkhoff_cache:
            phi = Character(cone_coalgebra, germ_target(w),
                            lambda c: exp_sum(c, open_, w))
            _birkhoff_cache[bkey] = birkhoff_factorize(phi)
        _, phi2 = _birkhoff_cache[bkey]
        renorm = phi2(cone)
        if renorm.polar:
            raise AssertionError("renormalized character kept a polar part")
        holo = renorm.holomorphic
    else:
        raise ValueError(f"unknown path {path!r}")
    _holo_cache[key] = holo
    return holo


def conical_zeta(cone: LatticeCone, exponents, open_: bool = True,
                 path: str = "direct") -> Fraction:
    """zeta(-a_1, ..., -a_k) for the given cone and exponent vector.

    Argument a_j pairs with the j-th smallest summation coordinate: the
    derivative orders applied to the ambient variables are the exponents
    in reverse.  On Chen cones this is the orientation that reproduces
    the double-zeta tables, and on product cones it is invisible (the
    value factorizes either way).
    """
    exponents = tuple(int(a) for a in exponents)
    if len(exponents) != cone.dim:
        raise ValueError("need one exponent per cone generator")
    if cone.dim != cone.ambient_dim:
        raise ValueError("zeta extraction needs a full-dimensional cone")
    if any(a < 0 for a in exponents):
        raise ValueError("exponents must be non-negative")
    if cone.dim < 1:
        raise ValueError("cone must have dimension >= 1")
    w = working_order(exponents, cone.dim)
    holo = _holomorphic_part(cone, open_, w, path)
    return taylor_derivative_at_zero(holo, tuple(reversed(exponents)))


def mzv(exponents, star: bool = False, path: str = "direct") -> Fraction:
    """Multiple zeta (star) value at non-positive integers -a_i."""
    exponents = tuple(int(a) for a in exponents)
    return conical_zeta(chen_cone(len(exponents)), exponents,
                        open_=not star, path=path)


def mzv_table(depth: int = 2, a_max: int = 6, star: bool = False):
    """Matrix [row a2][column a1] of zeta(-a1, -a2), 1 <= a_i <= a_max.

    The whole table is read off one germ built at the validity the
    largest cell needs.
    """
    if depth != 2:
        raise ValueError("only depth-2 tables are produced")
    w = depth * a_max + depth
    holo = pi_plus(exp_sum(chen_cone(depth), not star, w))
    return [[taylor_derivative_at_zero(holo, (a2, a1))
             for a1 in range(1, a_max + 1)]
            for a2 in range(1, a_max + 1)]


def stuffle_check_depth2(a1: int, a2: int, star: bool = False) -> Fraction:
    """Residual of the depth-2 stuffle identity; zero when it holds.

    zeta(s1) zeta(s2) - zeta(s1,s2) - zeta(s2,s1) - zeta(s1+s2), with the
    last sign flipped for the star values.
    """
    single = {a: mzv((a,), star) for a in {a1, a2, a1 + a2}}
    residual = (single[a1] * single[a2]
                - mzv((a1, a2), star) - mzv((a2, a1), star))
    if star:
        residual += single[a1 + a2]
    else:
        residual -= single[a1 + a2]
    return residual


def mixed_bracket_value(merge_first: bool, exponents, w: int) -> Fraction:
    """Derivative extraction on [e1+e3, e2] or [e1, e2+e3]."""
    if merge_first:
        forms = [LinearForm({1: 1, 3: 1}), LinearForm({2: 1})]
    else:
        forms = [LinearForm({1: 1}), LinearForm({2: 1, 3: 1})]
    holo = pi_plus(bracket_germ(forms, open_=True, w=w))
    return taylor_derivative_at_zero(holo, exponents)


def stuffle_residual_depth3(a1: int, a2: int, a3: int) -> Fraction:
    """LHS minus RHS of the would-be depth-3 stuffle identity.

    zeta(-a1,-a2) zeta(-a3)  vs  zeta(-a3,-a1,-a2) + zeta(-a1,-a3,-a2)
    + zeta(-a1,-a2,-a3) + zeta(-a1-a3,-a2) + zeta(-a1,-a2-a3).

    The subdivision identity behind it only produces the mixed bracket
    germs, whose extracted values differ from the genuine merged-argument
    double zetas used here; that gap is exactly what makes the identity
    fail at higher weight.
    """
    lhs = mzv((a1, a2)) * mzv((a3,))
    rhs = (mzv((a3, a1, a2)) + mzv((a1, a3, a2)) + mzv((a1, a2, a3))
           + mzv((a1 + a3, a2)) + mzv((a1, a2 + a3)))
    return lhs - rhs


def find_first_depth3_violation(max_weight: int = 8):
    """First (a1, a2, 0) with a1 + a2 > 2 violating the depth-3 stuffle.

    Triples are scanned in order of increasing a1 + a2, then a1; returns
    (a1, a2, 0, residual) or None if the scan bound is reached.
    """
    for total in range(3, max_weight + 1):
        for a1 in range(total + 1):
            a2 = total - a1
            r = stuffle_residual_depth3(a1, a2, 0)
            if r != 0:
                return (a1, a2, 0, r)
    return None


def zeta_depth1(a: int) -> Fraction:
    """zeta(-a) through the cone pipeline; equals -B_{a+1}/(a+1)."""
    value = mzv((a,))
    assert value == zeta_nonpositive(a)
    return value
