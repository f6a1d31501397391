"""Exact renormalized conical zeta values on unimodular lattice cones.

The pipeline: exponential-sum germs on cones (``cones``), canonical
holomorphic/polar decomposition of meromorphic germs with linear poles
(``mero``), minimal subtraction and algebraic Birkhoff factorization
over the cone coalgebra (``coalgebra``), and extraction of multiple
zeta (star) values at non-positive integers (``zeta``).  All arithmetic
is exact rational.
"""

from .cones import LatticeCone, chen_cone, product_cone
from .special import bernoulli_number, format_rational, zeta_nonpositive
from .zeta import conical_zeta, mzv, mzv_table

__all__ = [
    "LatticeCone",
    "bernoulli_number",
    "chen_cone",
    "conical_zeta",
    "format_rational",
    "mzv",
    "mzv_table",
    "product_cone",
    "zeta_nonpositive",
]

__version__ = "1.0.0"
