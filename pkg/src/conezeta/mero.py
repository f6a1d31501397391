"""Sparse multivariate truncated series, linear forms, and meromorphic
germs with linearly independent linear poles.

The central operation is the canonical decomposition of such a germ into
a holomorphic part (``pi_plus``) and polar terms whose numerators only
involve directions orthogonal to the pole forms (``pi_minus``), with
respect to the canonical inner product on the variables.  Taylor
coefficients of the holomorphic part are what the rest of the package
extracts as renormalized values.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, gcd, lcm

from . import linalg

# monomials are tuples of (variable index, positive exponent), sorted by index
Monomial = tuple


class NotDivisibleError(ValueError):
    """Formal division by a linear form left a nonzero remainder."""


class DependentPolesError(ValueError):
    """A product created linearly dependent pole forms (out of scope)."""


class InsufficientTruncationError(ValueError):
    """A requested coefficient lies beyond the tracked validity order."""


class LinearForm:
    """Rational linear form sum_v c_v * eps_v on globally indexed variables."""

    __slots__ = ("coeffs", "_key")

    def __init__(self, coeffs: dict):
        cs = {v: Fraction(c) for v, c in coeffs.items() if c != 0}
        self.coeffs = cs
        self._key = None

    def is_zero(self) -> bool:
        return not self.coeffs

    def variables(self):
        return sorted(self.coeffs)

    def coeff(self, v) -> Fraction:
        return self.coeffs.get(v, Fraction(0))

    def dot(self, other: "LinearForm") -> Fraction:
        """Canonical inner product on the variables."""
        small, big = sorted((self.coeffs, other.coeffs), key=len)
        return sum((c * big.get(v, Fraction(0)) for v, c in small.items()),
                   Fraction(0))

    def canonicalize(self):
        """Return (canonical form, scale) with self = scale * canonical.

        The canonical form has coprime integer coefficients and a positive
        coefficient on the lowest variable index.
        """
        if self.is_zero():
            raise ValueError("zero form cannot be canonicalized")
        d = 1
        for c in self.coeffs.values():
            d = lcm(d, c.denominator)
        nums = {v: int(c * d) for v, c in self.coeffs.items()}
        g = 0
        for a in nums.values():
            g = gcd(g, abs(a))
        sign = 1 if nums[min(nums)] > 0 else -1
        canon = LinearForm({v: Fraction(a * sign, g) for v, a in nums.items()})
        return canon, Fraction(sign * g, d)

    def key(self):
        if self._key is None:
            canon, _ = self.canonicalize()
            self._key = tuple(sorted((v, int(c)) for v, c in canon.coeffs.items()))
        return self._key

    def __eq__(self, other):
        return isinstance(other, LinearForm) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __repr__(self):
        parts = [f"{c}*e{v}" for v, c in sorted(self.coeffs.items())]
        return "LinearForm(" + " + ".join(parts or ["0"]) + ")"


class TruncSeries:
    """Multivariate Taylor series truncated by total degree ``validity``.

    Terms are a map monomial -> coefficient; zero coefficients and terms
    above the validity order are never stored.  Coefficients of total
    degree above the validity are unknown, not zero.
    """

    __slots__ = ("terms", "validity")

    def __init__(self, terms: dict, validity: int):
        if validity < 0:
            raise ValueError("validity must be >= 0")
        self.terms = {m: Fraction(c) for m, c in terms.items()
                      if c != 0 and _degree(m) <= validity}
        self.validity = validity

    @classmethod
    def constant(cls, c, validity: int) -> "TruncSeries":
        return cls({(): Fraction(c)}, validity)

    @classmethod
    def from_linear_form(cls, form: LinearForm, validity: int) -> "TruncSeries":
        return cls({((v, 1),): c for v, c in form.coeffs.items()}, validity)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, mono: Monomial) -> Fraction:
        if _degree(mono) > self.validity:
            raise InsufficientTruncationError(
                f"degree {_degree(mono)} beyond validity {self.validity}")
        return self.terms.get(tuple(sorted(mono)), Fraction(0))

    def variables(self):
        vs = set()
        for m in self.terms:
            vs.update(v for v, _ in m)
        return sorted(vs)

    def with_validity(self, w: int) -> "TruncSeries":
        if w > self.validity:
            raise ValueError("cannot raise validity")
        return TruncSeries(self.terms, w)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return TruncSeries(out, min(self.validity, other.validity))

    def __neg__(self) -> "TruncSeries":
        return TruncSeries({m: -c for m, c in self.terms.items()}, self.validity)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        w = min(self.validity, other.validity)
        out: dict = {}
        for m1, c1 in self.terms.items():
            d1 = _degree(m1)
            for m2, c2 in other.terms.items():
                if d1 + _degree(m2) > w:
                    continue
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return TruncSeries(out, w)

    def scale(self, c) -> "TruncSeries":
        c = Fraction(c)
        return TruncSeries({m: a * c for m, a in self.terms.items()}, self.validity)

    def eq_to_order(self, other: "TruncSeries", order: int | None = None) -> bool:
        w = min(self.validity, other.validity)
        if order is not None:
            w = min(w, order)
        for m in set(self.terms) | set(other.terms):
            if _degree(m) <= w and \
                    self.terms.get(m, 0) != other.terms.get(m, 0):
                return False
        return True

    def __repr__(self):
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda t: (_degree(t[0]), t[0])):
            mono = " ".join(f"e{v}^{e}" if e > 1 else f"e{v}" for v, e in m)
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return f"TruncSeries({' + '.join(parts) or '0'}, validity={self.validity})"


def _degree(mono: Monomial) -> int:
    return sum(e for _, e in mono)


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    exps: dict = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def compose_linear(series, form: LinearForm, validity: int) -> TruncSeries:
    """Expand a univariate series at a linear form: s(form), multinomially.

    ``series`` is a ``UniSeries``; the result is truncated at total degree
    ``validity``, which must not exceed the validity of ``series``.
    """
    if validity > series.validity:
        raise ValueError("requested order exceeds the series validity")
    base = TruncSeries.from_linear_form(form, validity)
    out = TruncSeries.constant(series.coeff(0), validity)
    power = TruncSeries.constant(1, validity)
    for n in range(1, validity + 1):
        power = power * base
        if power.is_zero():
            break
        c = series.coeff(n)
        if c != 0:
            out = out + power.scale(c)
    return out


def substitute_linear(series: TruncSeries, mapping: dict) -> TruncSeries:
    """Linear change of variables: each variable maps to a TruncSeries of
    total degree <= 1.  Validity is preserved."""
    w = series.validity
    cache: dict = {}

    def var_power(v, e):
        if (v, e) not in cache:
            if e == 1:
                cache[(v, e)] = mapping.get(
                    v, TruncSeries({((v, 1),): Fraction(1)}, w))
            else:
                cache[(v, e)] = var_power(v, e - 1) * var_power(v, 1)
        return cache[(v, e)]

    out = TruncSeries({}, w)
    for mono, coeff in series.terms.items():
        term = TruncSeries.constant(coeff, w)
        for v, e in mono:
            term = term * var_power(v, e)
        out = out + term
    return out


def divide_exact(numerator: TruncSeries, form: LinearForm) -> TruncSeries:
    """Exact formal division of a truncated series by a linear form.

    Uses lexicographic division with the lowest variable of the form as
    the leading variable.  Raises NotDivisibleError when a nonzero
    remainder (free of that variable) survives.
    """
    if form.is_zero():
        raise ZeroDivisionError("division by the zero form")
    if numerator.validity < 1:
        raise ValueError("numerator validity must be >= 1")
    v0 = min(form.coeffs)
    c0 = form.coeffs[v0]
    rest = [(v, c) for v, c in form.coeffs.items() if v != v0]
    remainder = dict(numerator.terms)
    quotient: dict = {}
    while True:
        lead = None
        for m in remainder:
            exps = dict(m)
            if exps.get(v0, 0) > 0:
                key = (exps[v0], m)
                if lead is None or key > lead[0]:
                    lead = (key, m)
        if lead is None:
            break
        m = lead[1]
        c = remainder.pop(m)
        qm = _mono_shift(m, v0, -1)
        qc = c / c0
        quotient[qm] = quotient.get(qm, Fraction(0)) + qc
        for v, cv in rest:
            mm = _mono_shift(_mono_mul(qm, ((v, 1),)), v0, 0)
            remainder[mm] = remainder.get(mm, Fraction(0)) - qc * cv
            if remainder[mm] == 0:
                del remainder[mm]
    if any(c != 0 for c in remainder.values()):
        raise NotDivisibleError(f"series is not divisible by {form!r}")
    return TruncSeries(quotient, numerator.validity - 1)


def _mono_shift(mono: Monomial, v, delta: int) -> Monomial:
    exps = dict(mono)
    exps[v] = exps.get(v, 0) + delta
    if exps[v] == 0:
        del exps[v]
    return tuple(sorted(exps.items()))


class PolarTerm:
    """numerator / prod_i L_i^{s_i} with canonical, independent forms L_i."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: TruncSeries, denominator):
        denom = []
        num = numerator
        for form, s in denominator:
            if s <= 0:
                raise ValueError("pole exponents must be positive")
            canon, scale = form.canonicalize()
            num = num.scale(Fraction(1) / scale ** s)
            denom.append((canon, int(s)))
        denom.sort(key=lambda fs: fs[0].key())
        keys = [f.key() for f, _ in denom]
        if len(set(keys)) != len(keys):
            raise DependentPolesError("repeated pole form in a denominator")
        vecs = _form_matrix([f for f, _ in denom])
        if linalg.rank(vecs) != len(denom):
            raise DependentPolesError("denominator forms are linearly dependent")
        self.numerator = num
        self.denominator = tuple(denom)

    @property
    def order(self) -> int:
        return sum(s for _, s in self.denominator)

    def denominator_key(self):
        return tuple((f.key(), s) for f, s in self.denominator)

    def __repr__(self):
        dens = " ".join(f"({f!r})^{s}" if s > 1 else f"({f!r})"
                        for f, s in self.denominator)
        return f"PolarTerm({self.numerator!r} / {dens})"


def _form_matrix(forms):
    vs = sorted({v for f in forms for v in f.coeffs})
    return [[f.coeff(v) for v in vs] for f in forms]


class MeroGerm:
    """Holomorphic truncated series plus a list of polar terms."""

    __slots__ = ("holomorphic", "polar")

    def __init__(self, holomorphic: TruncSeries, polar=()):
        self.holomorphic = holomorphic
        merged: dict = {}
        for t in polar:
            if t.numerator.is_zero():
                continue
            k = t.denominator_key()
            if k in merged:
                merged[k] = PolarTerm(merged[k].numerator + t.numerator,
                                      t.denominator)
            else:
                merged[k] = t
        self.polar = tuple(merged[k] for k in sorted(merged))

    @classmethod
    def one(cls, validity: int) -> "MeroGerm":
        return cls(TruncSeries.constant(1, validity))

    @property
    def validity(self) -> int:
        w = self.holomorphic.validity
        for t in self.polar:
            w = min(w, t.numerator.validity - t.order)
        return w

    def __add__(self, other: "MeroGerm") -> "MeroGerm":
        return MeroGerm(self.holomorphic + other.holomorphic,
                        self.polar + other.polar)

    def __neg__(self) -> "MeroGerm":
        return MeroGerm(-self.holomorphic,
                        [PolarTerm(-t.numerator, t.denominator)
                         for t in self.polar])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "MeroGerm") -> "MeroGerm":
        holo = self.holomorphic * other.holomorphic
        polar = []
        for t in self.polar:
            polar.append(PolarTerm(t.numerator * other.holomorphic,
                                   t.denominator))
        for t in other.polar:
            polar.append(PolarTerm(self.holomorphic * t.numerator,
                                   t.denominator))
        for t1 in self.polar:
            for t2 in other.polar:
                # PolarTerm validates independence of the merged forms
                polar.append(PolarTerm(t1.numerator * t2.numerator,
                                       t1.denominator + t2.denominator))
        return MeroGerm(holo, polar)

    def scale(self, c) -> "MeroGerm":
        return MeroGerm(self.holomorphic.scale(c),
                        [PolarTerm(t.numerator.scale(c), t.denominator)
                         for t in self.polar])

    def __repr__(self):
        return f"MeroGerm(holo={self.holomorphic!r}, polar={list(self.polar)!r})"


# ---------------------------------------------------------------------------
# canonical decomposition

_TMP_BASE = 1_000_000  # adapted-coordinate variables live above this index


def decompose(germ: MeroGerm):
    """Canonical (holomorphic, polar) decomposition of a germ.

    Returns a pair ``(TruncSeries, list[PolarTerm])``; the polar terms
    have numerators built solely from directions orthogonal to their pole
    forms, which makes the decomposition unique and comparable.
    """
    holo = germ.holomorphic
    buckets: dict = {}
    for term in germ.polar:
        h, polars = _reduce(term.numerator, term.denominator)
        holo = holo + h
        for p in polars:
            k = p.denominator_key()
            if k in buckets:
                buckets[k] = PolarTerm(buckets[k].numerator + p.numerator,
                                       p.denominator)
            else:
                buckets[k] = p
    polar = [buckets[k] for k in sorted(buckets)
             if not buckets[k].numerator.is_zero()]
    return holo, polar


def pi_plus(germ: MeroGerm) -> TruncSeries:
    """Canonical holomorphic part of a germ."""
    return decompose(germ)[0]


def pi_minus(germ: MeroGerm) -> list:
    """Canonical polar terms of a germ."""
    return decompose(germ)[1]


def _polar_sum_vanishes(polar) -> bool:
    """Whether a list of polar terms sums to zero as a function.

    Distinct denominator sets can cancel through partial-fraction
    relations (e.g. 1/(xy) = 1/(x(x+y)) + 1/(y(x+y))), so the terms are
    put over the product of all pole forms and the combined numerator is
    checked instead of the term list.
    """
    if not polar:
        return True
    powers: dict = {}
    forms: dict = {}
    for t in polar:
        for f, s in t.denominator:
            powers[f.key()] = max(powers.get(f.key(), 0), s)
            forms[f.key()] = f
    validity = min(t.numerator.validity for t in polar)
    total = TruncSeries({}, validity)
    for t in polar:
        piece = t.numerator.with_validity(validity)
        have = dict(t.denominator_key())
        for k, s in powers.items():
            missing = s - have.get(k, 0)
            factor = TruncSeries.from_linear_form(forms[k], validity)
            for _ in range(missing):
                piece = piece * factor
        total = total + piece
    return total.is_zero()


def germs_equal(a: MeroGerm, b: MeroGerm, order: int | None = None) -> bool:
    """Equality of germs: holomorphic parts coefficientwise (optionally
    only to ``order``), polar parts as functions."""
    holo, polar = decompose(a - b)
    if not holo.eq_to_order(TruncSeries.constant(0, holo.validity), order):
        return False
    return _polar_sum_vanishes(polar)


def _reduce(num: TruncSeries, denom):
    """Reduce one polar term to holomorphic plus final polar pieces."""
    if not denom:
        return num, []
    forms = [f for f, _ in denom]
    exponents = [s for _, s in denom]
    variables = sorted(set(num.variables()) |
                       {v for f in forms for v in f.coeffs})
    m = len(forms)
    form_vecs = [[f.coeff(v) for v in variables] for f in forms]
    ortho = linalg.gram_schmidt(form_vecs)
    # rational orthogonal complement of span(forms) inside span(variables)
    comp_raw = []
    for j in range(len(variables)):
        e = [Fraction(1 if i == j else 0) for i in range(len(variables))]
        for u in ortho:
            c = linalg.dot(e, u) / linalg.dot(u, u)
            e = [a - c * b for a, b in zip(e, u)]
        if not linalg.is_zero(e):
            comp_raw.append(e)
    comp = linalg.gram_schmidt(comp_raw)
    matrix = form_vecs + comp
    inverse = linalg.invert(matrix)
    n_new = len(matrix)

    # eps_v expressed in adapted coordinates, and the way back
    to_adapted = {}
    for idx, v in enumerate(variables):
        to_adapted[v] = TruncSeries(
            {((_TMP_BASE + c, 1),): inverse[idx][c] for c in range(n_new)
             if inverse[idx][c] != 0}, num.validity)
    from_adapted = {}
    for c in range(n_new):
        from_adapted[_TMP_BASE + c] = TruncSeries(
            {((v, 1),): matrix[c][i] for i, v in enumerate(variables)
             if matrix[c][i] != 0}, num.validity)

    total_order = sum(exponents)
    adapted = substitute_linear(num, to_adapted)
    holo_tmp = TruncSeries({}, num.validity)  # adapted coordinates
    holo_eps = TruncSeries({}, num.validity - total_order)  # original coords
    polars = []
    for mono, coeff in adapted.terms.items():
        exps = dict(mono)
        alphas = [exps.get(_TMP_BASE + i, 0) for i in range(m)]
        # cancel y_i^{min(alpha_i, s_i)} against the pole
        leftover = dict(exps)
        survives_y = False
        new_denom = []
        for i, s in enumerate(exponents):
            cancel = min(alphas[i], s)
            if cancel:
                leftover[_TMP_BASE + i] -= cancel
                if leftover[_TMP_BASE + i] == 0:
                    del leftover[_TMP_BASE + i]
            if alphas[i] < s:
                new_denom.append((forms[i], s - alphas[i]))
            elif alphas[i] > s:
                survives_y = True
        if not new_denom:
            mkey = tuple(sorted(leftover.items()))
            holo_tmp = holo_tmp + TruncSeries({mkey: coeff}, num.validity)
            continue
        sub_order = sum(s for _, s in new_denom)
        left_valid = num.validity - (total_order - sub_order)
        left_series = substitute_linear(
            TruncSeries({tuple(sorted(leftover.items())): coeff}, left_valid),
            from_adapted).with_validity(left_valid)
        if not survives_y:
            # numerator lies in directions orthogonal to every remaining pole
            polars.append(PolarTerm(left_series, new_denom))
        else:
            h2, p2 = _reduce(left_series, tuple(new_denom))
            holo_eps = holo_eps + h2
            polars.extend(p2)
    # drop the s_i powers already divided out: what's left converts back
    holo = substitute_linear(holo_tmp, from_adapted)
    return holo.with_validity(num.validity - total_order) + holo_eps, polars


def taylor_derivative_at_zero(series: TruncSeries, exponents) -> Fraction:
    """Mixed partial derivative at zero for variables 1..k.

    ``exponents`` lists the order per variable; the result is
    (prod a_i!) times the matching Taylor coefficient.
    """
    total = sum(exponents)
    if total > series.validity:
        raise InsufficientTruncationError(
            f"derivative order {total} beyond validity {series.validity}")
    mono = tuple((i + 1, a) for i, a in enumerate(exponents) if a > 0)
    coeff = series.terms.get(mono, Fraction(0))
    for a in exponents:
        coeff *= factorial(a)
    return coeff
