"""Bernoulli numbers/polynomials, zeta values at non-positive integers,
and the univariate truncated series they generate (Todd and phi).

All values are exact ``fractions.Fraction``; the convention throughout is
the generating function Td(x) = x/(e^x - 1), so B_1 = -1/2.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

_bernoulli_cache: dict[int, Fraction] = {0: Fraction(1)}


def bernoulli_number(n: int) -> Fraction:
    """B_n with B_1 = -1/2, via sum_{j<=n} C(n+1,j) B_j = 0."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n in _bernoulli_cache:
        return _bernoulli_cache[n]
    for m in range(1, n + 1):
        if m in _bernoulli_cache:
            continue
        s = sum(comb(m + 1, j) * _bernoulli_cache[j] for j in range(m))
        _bernoulli_cache[m] = Fraction(-s, m + 1)
    return _bernoulli_cache[n]


def bernoulli_polynomial(n: int) -> list[Fraction]:
    """Coefficients (degree 0 first) of B_n(x) = sum_k C(n,k) B_{n-k} x^k."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return [comb(n, k) * bernoulli_number(n - k) for k in range(n + 1)]


def zeta_nonpositive(k: int) -> Fraction:
    """zeta(-k) = (-1)^k B_{k+1}/(k+1) for k >= 0 (so zeta(0) = -1/2).

    In the B_1 = +1/2 convention this is the familiar -B_{k+1}/(k+1);
    the sign factor translates it to the Todd convention used here.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    return (-1) ** k * bernoulli_number(k + 1) / (k + 1)


def format_rational(x: Fraction) -> str:
    """Canonical rendering: reduced "p/q", integers without "/1"."""
    return str(Fraction(x))


class UniSeries:
    """Univariate Taylor series truncated at a tracked validity order.

    Coefficients above ``validity`` are unknown, not zero.  Instances are
    immutable; all operations return new series.
    """

    __slots__ = ("coeffs", "validity")

    def __init__(self, coeffs, validity: int):
        if validity < 0:
            raise ValueError("validity must be >= 0")
        cs = [Fraction(c) for c in coeffs[:validity + 1]]
        while cs and cs[-1] == 0 and len(cs) > 1:
            cs.pop()
        self.coeffs = tuple(cs) if cs else (Fraction(0),)
        self.validity = validity

    @classmethod
    def constant(cls, c, validity: int = 0) -> "UniSeries":
        return cls([Fraction(c)], validity)

    def coeff(self, n: int) -> Fraction:
        if n > self.validity:
            raise ValueError(f"coefficient {n} beyond validity {self.validity}")
        return self.coeffs[n] if n < len(self.coeffs) else Fraction(0)

    def __add__(self, other: "UniSeries") -> "UniSeries":
        w = min(self.validity, other.validity)
        n = max(len(self.coeffs), len(other.coeffs))
        cs = [(self.coeffs[i] if i < len(self.coeffs) else 0) +
              (other.coeffs[i] if i < len(other.coeffs) else 0)
              for i in range(min(n, w + 1))]
        return UniSeries(cs, w)

    def __neg__(self) -> "UniSeries":
        return UniSeries([-c for c in self.coeffs], self.validity)

    def __sub__(self, other: "UniSeries") -> "UniSeries":
        return self + (-other)

    def __mul__(self, other: "UniSeries") -> "UniSeries":
        w = min(self.validity, other.validity)
        out = [Fraction(0)] * (w + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0 or i > w:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j > w:
                    break
                out[i + j] += a * b
        return UniSeries(out, w)

    def scale(self, c) -> "UniSeries":
        c = Fraction(c)
        return UniSeries([a * c for a in self.coeffs], self.validity)

    def derivative(self) -> "UniSeries":
        if self.validity == 0:
            raise ValueError("cannot differentiate a validity-0 series")
        cs = [i * self.coeffs[i] for i in range(1, len(self.coeffs))]
        return UniSeries(cs or [Fraction(0)], self.validity - 1)

    def eq_to_order(self, other: "UniSeries", order: int | None = None) -> bool:
        w = min(self.validity, other.validity)
        if order is not None:
            w = min(w, order)
        return all(self.coeff(n) == other.coeff(n) for n in range(w + 1))

    def __repr__(self):
        return f"UniSeries({list(self.coeffs)}, validity={self.validity})"


def todd_series(w: int) -> UniSeries:
    """Td(x) = x/(e^x - 1) = sum B_n x^n / n! to order w."""
    return UniSeries([bernoulli_number(n) / factorial(n) for n in range(w + 1)], w)


def phi_series(w: int) -> UniSeries:
    """Holomorphic part phi of e^x/(1-e^x) = -1/x + phi(x).

    phi(x) = -1/2 - sum_{k>=1} B_{2k}/(2k)! x^{2k-1}.
    """
    cs = [Fraction(0)] * (w + 1)
    cs[0] = Fraction(-1, 2)
    k = 1
    while 2 * k - 1 <= w:
        cs[2 * k - 1] = -bernoulli_number(2 * k) / factorial(2 * k)
        k += 1
    return UniSeries(cs, w)


def exp_series(w: int, scale=1) -> UniSeries:
    """e^{scale * x} to order w (test/oracle helper)."""
    s = Fraction(scale)
    return UniSeries([s ** n / factorial(n) for n in range(w + 1)], w)
