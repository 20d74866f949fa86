"""Exact calculus of regional changes: singular knot diagrams, formal sums,
the word complex, and finite-order invariants."""

from .calculus import (
    FiniteGroup,
    FormalSum,
    GroupProductSystem,
    RegionalChangeSystem,
    Word,
    all_words,
    alternating_sum,
    group_resolve,
    knot_system,
    sign,
    weighted_sum,
)
from .complex import ChainElement, boundary, boundary_letter, chain_matrix, difference_rank, vassiliev_quotient_rank
from .diagram import SingularDiagram, parse_pd, resolve, serialize_pd, validate
from .intmatrix import IntegerMatrix, smith_normal_form
from .invariants import (
    KnotClass,
    conway,
    fingerprint,
    jones,
    jones_series_coefficient,
    kauffman_bracket,
    v2,
    vassiliev_vanishing_check,
    writhe,
)
from .laurent import LaurentPolynomial
from .moves import reidemeister_simplify

__version__ = "0.1.0"
