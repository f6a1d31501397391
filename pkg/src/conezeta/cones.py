"""Unimodular simplicial lattice cones: faces, transverse cones, and the
exponential sum/integral germs attached to them.

A cone is stored through generators that are primitive vectors of its
lattice; by unimodularity the generators then form a Z-basis of the
lattice, so the generator list determines the lattice completely.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from . import linalg
from .mero import LinearForm, MeroGerm, PolarTerm, TruncSeries, compose_linear
from .special import UniSeries, format_rational, phi_series


class NonUnimodularError(ValueError):
    """The generators are not a determinant +-1 basis of the lattice."""


class ConeParseError(ValueError):
    """Malformed cone text; the message carries the offending line number."""


class LatticeCone:
    """Simplicial cone with a lattice, normalized at construction.

    ``generators`` are rational vectors in the ambient space;
    ``lattice_basis`` (default: the generators) must span the same linear
    space.  Construction rescales each generator to be lattice-primitive
    and rejects non-unimodular input, after which the generators are
    themselves a basis of the lattice.
    """

    __slots__ = ("ambient_dim", "generators")

    def __init__(self, ambient_dim: int, generators, lattice_basis=None):
        gens = [tuple(Fraction(x) for x in g) for g in generators]
        for g in gens:
            if len(g) != ambient_dim:
                raise ValueError("generator length differs from ambient dim")
            if all(x == 0 for x in g):
                raise ValueError("zero vector cannot generate a ray")
        if linalg.rank(gens) != len(gens):
            raise ValueError("generators must be linearly independent")
        if lattice_basis is None:
            basis = list(gens)
        else:
            basis = [tuple(Fraction(x) for x in b) for b in lattice_basis]
            if linalg.rank(basis) != len(basis) or len(basis) != len(gens):
                raise ValueError("lattice basis must be independent, with "
                                 "one vector per generator")
        # primitive rescaling: generator coordinates in the lattice basis
        # become coprime integer vectors
        coords = []
        normalized = []
        for g in gens:
            try:
                c = linalg.solve_in_span(basis, g)
            except ValueError:
                raise ValueError("generator outside the lattice span") from None
            content = linalg.content(c)
            coords.append([x / content for x in c])
            normalized.append(tuple(x / content for x in g))
        det = _integer_determinant(coords)
        if det is None or abs(det) != 1:
            raise NonUnimodularError(
                "generators are not a unimodular basis of the lattice")
        self.ambient_dim = ambient_dim
        self.generators = tuple(sorted(normalized))

    @property
    def dim(self) -> int:
        return len(self.generators)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    @property
    def lattice_basis(self):
        return self.generators

    def key(self):
        return (self.ambient_dim, self.generators)

    def __eq__(self, other):
        return isinstance(other, LatticeCone) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.is_zero:
            return f"LatticeCone({self.ambient_dim}, zero)"
        gens = ", ".join("(" + " ".join(map(format_rational, g)) + ")"
                         for g in self.generators)
        return f"LatticeCone({self.ambient_dim}, <{gens}>)"


def _integer_determinant(rows):
    """Determinant if the matrix is integral, else None."""
    n = len(rows)
    if n == 0:
        return 1
    m = [[Fraction(x) for x in r] for r in rows]
    if any(x.denominator != 1 for r in m for x in r):
        return None
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def zero_cone(ambient_dim: int) -> LatticeCone:
    return LatticeCone(ambient_dim, [])


def product_cone(indices, ambient_dim: int | None = None) -> LatticeCone:
    """Cone spanned by the canonical basis vectors e_i for i in indices."""
    idx = sorted(set(indices))
    n = ambient_dim if ambient_dim is not None else (max(idx) if idx else 0)
    for i in idx:
        if not 1 <= i <= n:
            raise ValueError(f"index {i} outside ambient dimension {n}")
    gens = [tuple(Fraction(1 if j == i - 1 else 0) for j in range(n))
            for i in idx]
    return LatticeCone(n, gens)


def chen_cone(k: int) -> LatticeCone:
    """Cone <e1, e1+e2, ..., e1+...+ek> with the standard lattice."""
    if k < 0:
        raise ValueError("depth must be >= 0")
    gens = [tuple(Fraction(1 if j < i else 0) for j in range(k))
            for i in range(1, k + 1)]
    return LatticeCone(k, gens)


def face_cone(cone: LatticeCone, indices) -> LatticeCone:
    """Face spanned by the given generator indices (0-based, any subset)."""
    idx = sorted(set(indices))
    gens = [cone.generators[i] for i in idx]
    return LatticeCone(cone.ambient_dim, gens)


def faces(cone: LatticeCone):
    """All 2^dim faces, one per generator subset, smallest first."""
    out = []
    k = cone.dim
    for mask in range(1 << k):
        idx = [i for i in range(k) if mask >> i & 1]
        out.append(face_cone(cone, idx))
    out.sort(key=lambda f: (f.dim, f.generators))
    return out


def transverse_cone(cone: LatticeCone, face_indices) -> LatticeCone:
    """Orthogonal projection of the cone along one of its faces.

    The non-face generators are projected onto the orthogonal complement
    of the face span inside the cone span; they generate the projected
    lattice (the face generators project to zero), so they serve directly
    as generators and lattice basis of the result.
    """
    idx = sorted(set(face_indices))
    face_gens = [list(cone.generators[i]) for i in idx]
    ortho = linalg.gram_schmidt(face_gens)
    projected = []
    for i, g in enumerate(cone.generators):
        if i in idx:
            continue
        w = [Fraction(x) for x in g]
        for u in ortho:
            c = linalg.dot(w, u) / linalg.dot(u, u)
            w = [a - c * b for a, b in zip(w, u)]
        projected.append(tuple(w))
    return LatticeCone(cone.ambient_dim, projected)


# ---------------------------------------------------------------------------
# exponential sums and integrals as meromorphic germs

def pairing_form(vector) -> LinearForm:
    """<v, eps> as a linear form on the global variables eps_1, eps_2, ..."""
    return LinearForm({j + 1: Fraction(x) for j, x in enumerate(vector)})


def _pole_factor(form: LinearForm, open_: bool, w: int,
                 phi: UniSeries) -> MeroGerm:
    """Germ of e^V/(1-e^V) = -1/V + phi(V), or of 1/(1-e^V) for closed."""
    holo = compose_linear(phi, form, w)
    if not open_:
        holo = holo + TruncSeries.constant(1, w)
    polar = PolarTerm(TruncSeries.constant(-1, w), [(form, 1)])
    return MeroGerm(holo, [polar])


def bracket_germ(forms, open_: bool = True, w: int = 8) -> MeroGerm:
    """Product over partial sums S_j = L_1 + ... + L_j of the pole factor.

    With the canonical forms L_j = eps_j this is the exponential sum of
    the Chen cone; arbitrary forms cover the mixed depth-3 products.
    """
    phi = phi_series(w)
    germ = MeroGerm.one(w)
    partial: dict = {}
    for form in forms:
        for v, c in form.coeffs.items():
            partial[v] = partial.get(v, Fraction(0)) + c
        germ = germ * _pole_factor(LinearForm(partial), open_, w, phi)
    return germ


def exp_sum(cone: LatticeCone, open_: bool = False, w: int = 8) -> MeroGerm:
    """Germ of the lattice-point exponential sum over the cone.

    Closed: product of 1/(1-e^{<g,eps>}) over the primitive generators g;
    open: product of e^{<g,eps>}/(1-e^{<g,eps>}).  The zero cone gives 1.
    """
    phi = phi_series(w)
    germ = MeroGerm.one(w)
    for g in cone.generators:
        germ = germ * _pole_factor(pairing_form(g), open_, w, phi)
    return germ


def exp_integral(cone: LatticeCone, w: int = 8) -> MeroGerm:
    """Germ of the exponential integral: product of -1/<g,eps>."""
    if cone.is_zero:
        return MeroGerm.one(w)
    sign = Fraction(-1) ** cone.dim
    denom = [(pairing_form(g), 1) for g in cone.generators]
    return MeroGerm(TruncSeries.constant(0, w),
                    [PolarTerm(TruncSeries.constant(sign, w), denom)])


# ---------------------------------------------------------------------------
# brute-force oracle: exact exponential sums as polynomials in e^{1/q}

class ExpSumValue:
    """Exact finite sum  sum_p c_p e^{p/q}  with rational coefficients."""

    __slots__ = ("q", "coeffs")

    def __init__(self, q: int, coeffs: dict):
        self.q = q
        self.coeffs = {p: Fraction(c) for p, c in coeffs.items() if c != 0}

    def evaluate(self) -> float:
        from math import exp
        return sum(float(c) * exp(p / self.q) for p, c in self.coeffs.items())


def numeric_oracle_sum(cone: LatticeCone, open_: bool, point,
                       n_max: int) -> ExpSumValue:
    """Brute-force sum of e^{<n, point>} over cone lattice points.

    Enumerates n = sum c_i g_i with integer coefficients 0..n_max (1..n_max
    on every generator for the open cone).  Requires the point to pair
    strictly negatively with every generator so the full sum converges.
    """
    point = [Fraction(x) for x in point]
    pairings = [linalg.dot(g, point) for g in cone.generators]
    if any(p >= 0 for p in pairings):
        raise ValueError("point must pair strictly negatively with every "
                         "generator")
    q = lcm(1, *(p.denominator for p in pairings)) if pairings else 1
    lo = 1 if open_ else 0
    coeffs: dict = {}
    counts = [lo] * cone.dim
    while True:
        exponent = sum(c * p for c, p in zip(counts, pairings))
        key = int(exponent * q)
        coeffs[key] = coeffs.get(key, Fraction(0)) + 1
        i = 0
        while i < cone.dim:
            counts[i] += 1
            if counts[i] <= n_max:
                break
            counts[i] = lo
            i += 1
        else:
            break
    return ExpSumValue(q, coeffs)


# ---------------------------------------------------------------------------
# text format

def parse_cone(text: str) -> LatticeCone:
    """Parse the line-based cone format (ambient/generator/lattice lines)."""
    ambient = None
    generators = []
    lattice = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        word, args = parts[0], parts[1:]
        if word == "ambient":
            if ambient is not None:
                raise ConeParseError(f"line {lineno}: duplicate ambient line")
            if len(args) != 1 or not args[0].isdigit():
                raise ConeParseError(f"line {lineno}: expected 'ambient <k>'")
            ambient = int(args[0])
        elif word in ("generator", "lattice"):
            if ambient is None:
                raise ConeParseError(
                    f"line {lineno}: 'ambient' must come first")
            if len(args) != ambient:
                raise ConeParseError(
                    f"line {lineno}: expected {ambient} coordinates")
            try:
                vec = tuple(Fraction(a) for a in args)
            except (ValueError, ZeroDivisionError):
                raise ConeParseError(
                    f"line {lineno}: malformed rational") from None
            (generators if word == "generator" else lattice).append(vec)
        else:
            raise ConeParseError(f"line {lineno}: unknown directive {word!r}")
    if ambient is None:
        raise ConeParseError("line 1: missing 'ambient' line")
    if lattice and len(lattice) != len(generators):
        raise ConeParseError(
            "line 1: lattice line count must match generator count")
    return LatticeCone(ambient, generators, lattice or None)


def format_cone(cone: LatticeCone) -> str:
    """Render a cone in the text format; parse(format(c)) == c.

    Generator lines show the primitive integer direction of each ray;
    lattice lines carry the exact lattice basis (the stored generators).
    """
    lines = [f"ambient {cone.ambient_dim}"]
    for g in cone.generators:
        direction = [x / linalg.content(g) for x in g]
        lines.append("generator " +
                     " ".join(format_rational(x) for x in direction))
    for g in cone.generators:
        lines.append("lattice " + " ".join(format_rational(x) for x in g))
    return "\n".join(lines) + "\n"
