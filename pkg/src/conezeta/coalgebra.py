"""Connected graded coalgebras with convolution, star-inverse, and
algebraic Birkhoff factorization.

Two instances ship: lattice cones under the transverse-cone coproduct
(the production instance) and finite integer subsets under the
complement coproduct (a cheap fixture for testing the generic laws).
The target algebra is abstract: any unit/add/mul triple works, and a
projection is only needed for factorization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cones import LatticeCone, face_cone, transverse_cone
from .mero import MeroGerm, TruncSeries, decompose


@dataclass(frozen=True)
class Coalgebra:
    """Element universe given by a coproduct, a grade, and a bottom."""

    coproduct: object  # element -> list of (left, right) pairs
    grade: object      # element -> non-negative int, 0 only at bottom
    key: object        # element -> hashable canonical key
    bottom_of: object  # element -> the grade-0 bottom of its component

    def counit(self, x) -> Fraction:
        return Fraction(1 if self.grade(x) == 0 else 0)

    def reduced_coproduct(self, x):
        """Pairs of the coproduct with both tensor factors below x."""
        g = self.grade(x)
        return [(a, b) for a, b in self.coproduct(x)
                if self.grade(a) < g and self.grade(b) < g]


def coproduct_cone(cone: LatticeCone):
    """Delta C = sum over faces F of t(C,F) (x) F."""
    pairs = []
    for mask in range(1 << cone.dim):
        idx = [i for i in range(cone.dim) if mask >> i & 1]
        pairs.append((transverse_cone(cone, idx), face_cone(cone, idx)))
    pairs.sort(key=lambda p: (p[1].dim, p[1].key()))
    return pairs


def coproduct_subset(x: frozenset):
    """Delta X = sum over subsets Y of (X minus Y) (x) Y."""
    elems = sorted(x)
    pairs = []
    for mask in range(1 << len(elems)):
        sub = frozenset(e for i, e in enumerate(elems) if mask >> i & 1)
        pairs.append((x - sub, sub))
    pairs.sort(key=lambda p: (len(p[1]), sorted(p[1])))
    return pairs


cone_coalgebra = Coalgebra(
    coproduct=coproduct_cone,
    grade=lambda c: c.dim,
    key=lambda c: c.key(),
    bottom_of=lambda c: LatticeCone(c.ambient_dim, []),
)

subset_coalgebra = Coalgebra(
    coproduct=coproduct_subset,
    grade=len,
    key=lambda s: tuple(sorted(s)),
    bottom_of=lambda s: frozenset(),
)


@dataclass(frozen=True)
class Target:
    """Unital algebra the characters take values in."""

    one: object
    zero: object
    add: object
    mul: object
    scale: object  # (value, Fraction) -> value


def germ_target(w: int) -> Target:
    """MeroGerm target algebra at working validity w."""
    return Target(
        one=MeroGerm.one(w),
        zero=MeroGerm(TruncSeries.constant(0, w)),
        add=lambda a, b: a + b,
        mul=lambda a, b: a * b,
        scale=lambda a, c: a.scale(c),
    )


class Character:
    """Map from coalgebra elements to the target, memoized by key.

    The defining function is only consulted off the bottom; every
    character sends grade-0 elements to the unit.
    """

    def __init__(self, coalgebra: Coalgebra, target: Target, fn):
        self.coalgebra = coalgebra
        self.target = target
        self.fn = fn
        self._cache: dict = {}

    def __call__(self, x):
        if self.coalgebra.grade(x) == 0:
            return self.target.one
        k = self.coalgebra.key(x)
        if k not in self._cache:
            self._cache[k] = self.fn(x)
        return self._cache[k]


def unit_character(coalgebra: Coalgebra, target: Target) -> Character:
    """e = u o counit: unit at the bottom, zero elsewhere."""
    return Character(coalgebra, target, lambda x: target.zero)


def convolve(phi: Character, psi: Character, x):
    """(phi * psi)(x) = sum over Delta x of phi(x') psi(x'')."""
    coalg, target = phi.coalgebra, phi.target
    acc = target.zero
    for left, right in coalg.coproduct(x):
        acc = target.add(acc, target.mul(phi(left), psi(right)))
    return acc


def convolution_character(phi: Character, psi: Character) -> Character:
    return Character(phi.coalgebra, phi.target,
                     lambda x: convolve(phi, psi, x))


def star_inverse_character(phi: Character) -> Character:
    """phi^{*(-1)} by the conilpotent recursion.

    Off the bottom, (phi^{*(-1)} * phi)(x) = 0 unpacks to
    phi^{*(-1)}(x) = -phi(x) - sum phi^{*(-1)}(x') phi(x'') over the
    reduced coproduct; memoization terminates because grades drop.
    """
    coalg, target = phi.coalgebra, phi.target

    def fn(x):
        acc = target.scale(phi(x), -1)
        for left, right in coalg.reduced_coproduct(x):
            acc = target.add(
                acc, target.scale(target.mul(inv(left), phi(right)), -1))
        return acc

    inv = Character(coalg, target, fn)
    return inv


def star_inverse(phi: Character, x):
    return star_inverse_character(phi)(x)


def germ_split(germ: MeroGerm):
    """Canonical (polar, holomorphic) pair of a germ, as germs."""
    holo, polar = decompose(germ)
    return (MeroGerm(TruncSeries.constant(0, holo.validity), polar),
            MeroGerm(holo))


def birkhoff_factorize(phi: Character, split=None):
    """Characters (phi1, phi2) with phi = phi1^{*(-1)} * phi2.

    phi1(x) = -P(phi(x) + sum phi1(x') phi(x'')) over the reduced
    coproduct, phi2 the same bracket under (id - P); both are the unit at
    the bottom.  ``split`` maps a target value to its (P-part, rest)
    decomposition; the default splits a germ into canonical polar and
    holomorphic parts, making phi2 the renormalized pole-free character.
    """
    coalg, target = phi.coalgebra, phi.target
    split = split if split is not None else germ_split
    cache: dict = {}

    def bracket(x):
        acc = phi(x)
        for left, right in coalg.reduced_coproduct(x):
            acc = target.add(acc, target.mul(phi1(left), phi(right)))
        return acc

    def compute(x):
        k = coalg.key(x)
        if k not in cache:
            p_part, rest = split(bracket(x))
            cache[k] = (target.scale(p_part, -1), rest)
        return cache[k]

    phi1 = Character(coalg, target, lambda x: compute(x)[0])
    phi2 = Character(coalg, target, lambda x: compute(x)[1])
    return phi1, phi2
