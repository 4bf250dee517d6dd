"""Alexander polynomials of pretzel knots and links.

Closed-form evaluation in an exact Laurent ring, an independent diagram
oracle, and a search for all-odd pretzel knots with trivial polynomial.
"""

from .closedform import (
    LinkOrientation,
    PretzelClass,
    PretzelKind,
    PretzelSpec,
    alexander,
    classify,
    determinant,
    f_even,
    f_odd,
    has_max_degree,
    is_trivial_alexander,
    symmetrized,
)
from .laurent import LaurentPoly, UnitsClass, format_poly, parse
from .oracle import oracle_alexander, subsetsum_oracle
from .search import SearchQuery, run_search, verify_solution
from .symfun import sigma_all

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly", "UnitsClass", "parse", "format_poly", "sigma_all",
    "PretzelSpec", "PretzelKind", "PretzelClass", "LinkOrientation",
    "classify", "alexander", "f_odd", "f_even", "symmetrized", "determinant",
    "has_max_degree", "is_trivial_alexander",
    "oracle_alexander", "subsetsum_oracle",
    "SearchQuery", "run_search", "verify_solution",
]
