"""Univariate Laurent germs with minimal subtraction, regularized
evaluators, and exact Euler-Maclaurin summation for polynomials.

A ``LaurentGerm`` stores exact coefficients a_{-p}..a_W of a meromorphic
germ at zero with finite pole order p and validity W (coefficients above
W are unknown).  ``project_plus``/``project_minus`` realize the minimal
subtraction scheme; both are Rota-Baxter operators of weight -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .special import UniSeries, bernoulli_number, bernoulli_polynomial


class LaurentGerm:
    """Laurent germ sum_{n=-p}^{W} a_n x^n with normalized pole order."""

    __slots__ = ("coeffs", "pole_order", "validity")

    def __init__(self, coeffs: dict, validity: int):
        cs = {n: Fraction(c) for n, c in coeffs.items()
              if c != 0 and n <= validity}
        self.coeffs = cs
        self.pole_order = max(0, -min(cs, default=0))
        self.validity = validity
        if self.validity < 0:
            raise ValueError("validity must be >= 0")

    @classmethod
    def from_series(cls, s: UniSeries) -> "LaurentGerm":
        return cls({n: c for n, c in enumerate(s.coeffs)}, s.validity)

    @classmethod
    def pole(cls, order: int, validity: int, coeff=1) -> "LaurentGerm":
        return cls({-order: Fraction(coeff)}, validity)

    def coeff(self, n: int) -> Fraction:
        if n > self.validity:
            raise ValueError(f"coefficient {n} beyond validity {self.validity}")
        return self.coeffs.get(n, Fraction(0))

    def __add__(self, other: "LaurentGerm") -> "LaurentGerm":
        w = min(self.validity, other.validity)
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out.get(n, Fraction(0)) + c
        return LaurentGerm(out, w)

    def __neg__(self) -> "LaurentGerm":
        return LaurentGerm({n: -c for n, c in self.coeffs.items()}, self.validity)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "LaurentGerm") -> "LaurentGerm":
        # unknown tail of one factor meets the deepest pole of the other
        w = min(self.validity - other.pole_order,
                other.validity - self.pole_order)
        out: dict[int, Fraction] = {}
        for n, a in self.coeffs.items():
            for m, b in other.coeffs.items():
                if n + m <= w:
                    out[n + m] = out.get(n + m, Fraction(0)) + a * b
        return LaurentGerm(out, w)

    def derivative(self) -> "LaurentGerm":
        return LaurentGerm({n - 1: n * c for n, c in self.coeffs.items() if n != 0},
                           self.validity - 1)

    def eq_to_order(self, other: "LaurentGerm", order: int | None = None) -> bool:
        w = min(self.validity, other.validity)
        if order is not None:
            w = min(w, order)
        lo = -max(self.pole_order, other.pole_order)
        return all(self.coeffs.get(n, 0) == other.coeffs.get(n, 0)
                   for n in range(lo, w + 1))

    def __repr__(self):
        terms = ", ".join(f"{n}: {c}" for n, c in sorted(self.coeffs.items()))
        return f"LaurentGerm({{{terms}}}, validity={self.validity})"


def project_plus(f: LaurentGerm) -> LaurentGerm:
    """Minimal subtraction: strip all negative-degree coefficients."""
    return LaurentGerm({n: c for n, c in f.coeffs.items() if n >= 0}, f.validity)


def project_minus(f: LaurentGerm) -> LaurentGerm:
    """Polar part: keep only negative-degree coefficients."""
    return LaurentGerm({n: c for n, c in f.coeffs.items() if n < 0}, f.validity)


def residue(f: LaurentGerm, j: int) -> Fraction:
    """j-th residue a_{-j} (zero when j exceeds the pole order)."""
    if j < 1:
        raise ValueError("j must be >= 1")
    return f.coeffs.get(-j, Fraction(0))


@dataclass(frozen=True)
class Evaluator:
    """Regularized evaluator at zero: ev_0 o pi_+ plus weighted residues."""

    weights: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "weights",
                           tuple(Fraction(w) for w in self.weights))


def evaluate_regularized(f: LaurentGerm, evaluator: Evaluator) -> Fraction:
    """pi_+(f)(0) + sum_j mu_j * Res^j(f).

    A weight list shorter than the pole order is an error: silently
    truncating a pole would evaluate a different functional.
    """
    if f.pole_order > len(evaluator.weights):
        raise ValueError(
            f"pole order {f.pole_order} exceeds the {len(evaluator.weights)} "
            "supplied evaluator weights")
    value = f.coeff(0)
    for j, mu in enumerate(evaluator.weights, start=1):
        value += mu * residue(f, j)
    return value


def s_laurent(w: int) -> LaurentGerm:
    """Germ of S(x) = 1/(1 - e^{-x}) = 1/x + 1/2 + sum B_{2k}/(2k)! x^{2k-1}."""
    cs = {-1: Fraction(1), 0: Fraction(1, 2)}
    k = 1
    while 2 * k - 1 <= w:
        cs[2 * k - 1] = bernoulli_number(2 * k) / factorial(2 * k)
        k += 1
    return LaurentGerm(cs, w)


# ---------------------------------------------------------------------------
# exact Euler-Maclaurin summation for polynomials

def _poly_eval(p, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _poly_derivative(p, times: int = 1):
    q = list(p)
    for _ in range(times):
        q = [i * q[i] for i in range(1, len(q))]
    return q or [Fraction(0)]


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _poly_shift(p, n):
    """Coefficients of x -> p(x + n)."""
    out = [Fraction(0)]
    power = [Fraction(1)]  # (x+n)^i
    for c in p:
        for i, pc in enumerate(power):
            if i == len(out):
                out.append(Fraction(0))
            out[i] += c * pc
        power = _poly_mul(power, [Fraction(n), Fraction(1)])
    return out


def _poly_integral_01(p) -> Fraction:
    return sum(Fraction(c, i + 1) for i, c in enumerate(p))


def em_power_sum_poly(k: int) -> list[Fraction]:
    """sum_{n=0}^{N} n^k as a polynomial in N (coefficients, degree 0 first).

    Closed form: N^{k+1}/(k+1) + N^k/2
    + sum_j C(k,2j-1) B_{2j}/(2j) (N^{k-2j+1} - d_{k-2j+1}) + d_k/2,
    where d is the Kronecker delta at 0.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    from math import comb
    p = [Fraction(0)] * (k + 2)
    p[k + 1] += Fraction(1, k + 1)
    p[k] += Fraction(1, 2)
    for j in range(1, (k + 1) // 2 + 1):
        c = comb(k, 2 * j - 1) * bernoulli_number(2 * j) / (2 * j)
        p[k - 2 * j + 1] += c
        if k - 2 * j + 1 == 0:
            p[0] -= c
    if k == 0:
        p[0] += Fraction(1, 2)
    return p


def em_power_sum(k: int, n: int) -> Fraction:
    """Closed-form value of sum_{m=0}^{n} m^k."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _poly_eval(em_power_sum_poly(k), n)


def cutoff_finite_part(k: int) -> Fraction:
    """Constant term of N -> em_power_sum(k, N); equals 1 iff k == 0."""
    return em_power_sum_poly(k)[0]


def em_formula_polynomial(f, a: int, b: int, j_order: int) -> Fraction:
    """sum_{n=a}^{b} f(n) via the Euler-Maclaurin formula with remainder.

    ``f`` is a polynomial as a coefficient list (degree 0 first).  All four
    blocks are computed exactly: boundary average, integral, Bernoulli
    boundary corrections up to J = ``j_order``, and the remainder
    -(1/(2J)!) int_a^b Bbar_{2J}(x) f^{(2J)}(x) dx, evaluated piecewise on
    unit intervals since Bbar_{2J} is 1-periodic.
    """
    if a >= b:
        raise ValueError("require a < b")
    if j_order < 1:
        raise ValueError("J must be >= 1")
    f = [Fraction(c) for c in f]
    total = (_poly_eval(f, a) + _poly_eval(f, b)) / 2
    antider = [Fraction(0)] + [Fraction(c, i + 1) for i, c in enumerate(f)]
    total += _poly_eval(antider, b) - _poly_eval(antider, a)
    for j in range(1, j_order + 1):
        der = _poly_derivative(f, 2 * j - 1)
        total += (bernoulli_number(2 * j) / factorial(2 * j)) * \
            (_poly_eval(der, b) - _poly_eval(der, a))
    b2j = bernoulli_polynomial(2 * j_order)
    f2j = _poly_derivative(f, 2 * j_order)
    remainder = Fraction(0)
    for n in range(a, b):
        remainder += _poly_integral_01(_poly_mul(b2j, _poly_shift(f2j, n)))
    total -= remainder / factorial(2 * j_order)
    return total
