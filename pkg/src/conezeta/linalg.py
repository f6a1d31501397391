"""Small exact linear algebra helpers over Fraction.

Everything here works on plain lists/tuples of Fractions; matrices are
lists of row vectors.  Nothing is optimized: dimensions stay tiny
(ambient dimension <= 3 or 4 throughout the package).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_zero(v) -> bool:
    return all(x == 0 for x in v)


def gram_schmidt(vectors):
    """Orthogonal (not normalized) basis of the span of ``vectors``.

    Dependent input vectors are dropped.  All arithmetic stays rational:
    projections use <v,u>/<u,u>, no square roots appear.
    """
    basis = []
    for v in vectors:
        w = [Fraction(x) for x in v]
        for u in basis:
            c = dot(w, u) / dot(u, u)
            w = [wi - c * ui for wi, ui in zip(w, u)]
        if not is_zero(w):
            basis.append(w)
    return basis


def rank(vectors) -> int:
    """Rank of the list of row vectors."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def solve_in_span(basis, target):
    """Coordinates of ``target`` in terms of the (independent) ``basis`` rows.

    Raises ValueError if the target is not in the span.
    """
    n = len(basis)
    if n == 0:
        if is_zero(target):
            return []
        raise ValueError("target not in span of empty basis")
    ncols = len(target)
    # augmented system: columns are the basis vectors, rhs is target
    rows = [[Fraction(basis[j][c]) for j in range(n)] + [Fraction(target[c])]
            for c in range(ncols)]
    r = 0
    pivots = []
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    coords = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        coords[c] = rows[i][n] / rows[i][c]
    for i in range(r, len(rows)):
        if rows[i][n] != 0:
            raise ValueError("target not in span")
    # sanity: independent basis must pin down every coordinate
    if len(pivots) != n:
        raise ValueError("basis rows are linearly dependent")
    return coords


def invert(rows):
    """Inverse of a square matrix given as a list of rows."""
    n = len(rows)
    aug = [[Fraction(x) for x in rows[i]] +
           [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = Fraction(1) / aug[c][c]
        aug[c] = [a * inv for a in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def hermite_normal_form(rows):
    """Row-style Hermite normal form of an integer matrix.

    Returns the nonzero rows: pivots positive, entries above a pivot
    reduced modulo it.  Two generating sets of the same subgroup of Z^n
    yield identical output, so the result doubles as a canonical key.
    """
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    m, n = len(rows), len(rows[0])
    r = 0
    for c in range(n):
        while True:
            live = [i for i in range(r, m) if rows[i][c] != 0]
            if len(live) <= 1:
                break
            live.sort(key=lambda i: abs(rows[i][c]))
            i0 = live[0]
            for i in live[1:]:
                q = rows[i][c] // rows[i0][c]
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[i0])]
        live = [i for i in range(r, m) if rows[i][c] != 0]
        if not live:
            continue
        rows[r], rows[live[0]] = rows[live[0]], rows[r]
        if rows[r][c] < 0:
            rows[r] = [-a for a in rows[r]]
        for i in range(r):
            q = rows[i][c] // rows[r][c]
            rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == m:
            break
    return [row for row in rows[:r] if any(row)]


def common_denominator(vectors) -> int:
    d = 1
    for v in vectors:
        for x in v:
            d = lcm(d, Fraction(x).denominator)
    return d


def content(coords) -> Fraction:
    """Positive rational g such that coords/g is a coprime integer vector."""
    d = common_denominator([coords])
    nums = [int(Fraction(x) * d) for x in coords]
    g = 0
    for a in nums:
        g = gcd(g, abs(a))
    if g == 0:
        raise ValueError("zero vector has no content")
    return Fraction(g, d)
