"""Closed-form Alexander polynomials of pretzel knots and two-component links.

Every formula is evaluated by clearing denominators into one Laurent
numerator followed by a single exact division, so divisibility claims are
checked at runtime instead of assumed.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import MissingOrientation, PreconditionViolation, UnsupportedLink
from .laurent import ONE, T, ZERO, LaurentPoly, UnitsClass
from .symfun import binomial, sigma_all

ONE_PLUS_T = ONE + T
T_MINUS_ONE = T - ONE
SQRT_T_DIFF = LaurentPoly.from_doubled({1: 1, -1: -1})  # t^(1/2) - t^(-1/2)


class PretzelKind(enum.Enum):
    ODD_KNOT = "odd-knot"
    EVEN_KNOT = "even-knot"
    ODD_LINK = "odd-link"
    UNSUPPORTED = "unsupported"


class LinkOrientation(enum.Enum):
    CODIRECTED = "co"
    OPPOSITE = "anti"

    @classmethod
    def parse(cls, s: str) -> LinkOrientation:
        key = s.strip().lower()
        aliases = {
            "co": cls.CODIRECTED,
            "codirected": cls.CODIRECTED,
            "parallel": cls.CODIRECTED,
            "anti": cls.OPPOSITE,
            "opposite": cls.OPPOSITE,
            "antiparallel": cls.OPPOSITE,
        }
        if key not in aliases:
            raise ValueError(f"unknown orientation {s!r}")
        return aliases[key]


@dataclass(frozen=True)
class PretzelSpec:
    """Twist parameters ``(q_1, ..., q_n)`` of a pretzel link."""

    q: tuple

    def __post_init__(self):
        q = tuple(int(x) for x in self.q)
        object.__setattr__(self, "q", q)
        if not q:
            raise PreconditionViolation("a pretzel link needs at least one twist region")
        if sum(1 for x in q if x == 0) > 1:
            raise PreconditionViolation("zero is allowed in at most one (the even) slot")

    @property
    def n(self) -> int:
        return len(self.q)

    @classmethod
    def parse(cls, text: str) -> PretzelSpec:
        """Accept ``P(-2,3,7)``, ``(-2, 3, 7)`` or ``-2,3,7``."""
        s = text.strip()
        m = re.fullmatch(r"[Pp]?\s*\((.*)\)", s)
        if m:
            s = m.group(1)
        try:
            q = tuple(int(x) for x in s.split(","))
        except ValueError:
            raise PreconditionViolation(f"cannot parse pretzel notation {text!r}") from None
        return cls(q)

    def __str__(self):
        return "P(" + ",".join(str(x) for x in self.q) + ")"


@dataclass(frozen=True)
class PretzelClass:
    kind: PretzelKind
    even_index: Optional[int] = None  # position of the even parameter (EVEN_KNOT)

    @property
    def is_knot(self) -> bool:
        return self.kind in (PretzelKind.ODD_KNOT, PretzelKind.EVEN_KNOT)


def _as_spec(spec) -> PretzelSpec:
    if isinstance(spec, PretzelSpec):
        return spec
    return PretzelSpec(tuple(spec))


def classify(spec) -> PretzelClass:
    spec = _as_spec(spec)
    evens = [i for i, x in enumerate(spec.q) if x % 2 == 0]
    if len(evens) >= 2:
        return PretzelClass(PretzelKind.UNSUPPORTED)
    if len(evens) == 1:
        return PretzelClass(PretzelKind.EVEN_KNOT, evens[0])
    if spec.n % 2:
        return PretzelClass(PretzelKind.ODD_KNOT)
    return PretzelClass(PretzelKind.ODD_LINK)


def even_first(spec) -> PretzelSpec:
    """Rotate cyclically so the even parameter (if any) comes first."""
    spec = _as_spec(spec)
    cls = classify(spec)
    if cls.kind is not PretzelKind.EVEN_KNOT or cls.even_index == 0:
        return spec
    i = cls.even_index
    return PretzelSpec(spec.q[i:] + spec.q[:i])


def _require_all_odd(q: Sequence[int], parity: int, what: str):
    if any(x % 2 == 0 for x in q):
        raise PreconditionViolation(f"{what} needs every parameter odd, got {tuple(q)}")
    if len(q) % 2 != parity:
        raise PreconditionViolation(
            f"{what} needs an {'odd' if parity else 'even'} number of parameters"
        )


# -- all-odd parameters ------------------------------------------------------


def _odd_sum(q, ks) -> LaurentPoly:
    n = len(q)
    sig = sigma_all(q)
    total = ZERO
    for k in ks:
        if sig[k]:
            total += (T_MINUS_ONE ** k) * (ONE_PLUS_T ** (n - 1 - k)) * sig[k]
    # t^{-(n-1)/2} / 2^{n-1}
    return total.div_coeff_exact(2 ** (n - 1)).shift(-Fraction(n - 1, 2))


def f_odd(q: Sequence[int]) -> LaurentPoly:
    """Symmetrized polynomial for all-odd parameters and odd ``n``."""
    q = tuple(q)
    _require_all_odd(q, 1, "f_odd")
    return _odd_sum(q, range(0, len(q), 2))


def f_even(q: Sequence[int]) -> LaurentPoly:
    """Symmetrized polynomial for all-odd parameters, even ``n``, opposite strands."""
    q = tuple(q)
    _require_all_odd(q, 0, "f_even")
    if not q:
        return ZERO
    return _odd_sum(q, range(1, len(q) + 1, 2))


# -- one even parameter, and co-directed links ---------------------------------


def _torus_terms(qs):
    """Return ``P = prod(1 + t^q)`` and ``S = sum_i t^{q_i} prod_{j != i}(1 + t^{q_j})``."""
    factors = [ONE + T ** q for q in qs]
    prod = ONE
    for f in factors:
        prod = prod * f
    total = ZERO
    for i, q in enumerate(qs):
        term = T ** q
        for j, f in enumerate(factors):
            if j != i:
                term = term * f
        total += term
    return prod, total


def _even_knot_parts(spec) -> tuple:
    spec = even_first(spec)
    cls = classify(spec)
    if cls.kind is not PretzelKind.EVEN_KNOT:
        raise PreconditionViolation(f"{spec} does not have exactly one even parameter")
    return spec.q[0], spec.q[1:]


def knot_even_odd_n(spec) -> UnitsClass:
    """Exactly one even parameter, ``n`` odd."""
    q1, rest = _even_knot_parts(spec)
    n = len(rest) + 1
    if n % 2 == 0:
        raise PreconditionViolation("knot_even_odd_n needs an odd number of parameters")
    prod, total = _torus_terms(rest)
    inner = total - prod * ((n - 1) // 2)
    num = prod + (T ** -1 - T) * inner * (q1 // 2)
    return num.div_exact(ONE_PLUS_T ** (n - 1)).canonicalize()


def knot_even_even_n(spec) -> UnitsClass:
    """Exactly one even parameter, ``n`` even."""
    q1, rest = _even_knot_parts(spec)
    n = len(rest) + 1
    if n % 2:
        raise PreconditionViolation("knot_even_even_n needs an even number of parameters")
    prod, total = _torus_terms(rest)
    half = T ** (q1 // 2)
    inner = total - prod * (n // 2)
    num = half * prod + (half - T ** (-(q1 // 2))) * inner
    return num.div_exact(ONE_PLUS_T ** (n - 1)).canonicalize()


def link_codirected(q: Sequence[int]) -> UnitsClass:
    """Two-component link, all parameters odd, ``n`` even, co-directed strands."""
    q = tuple(q)
    _require_all_odd(q, 0, "link_codirected")
    n = len(q)
    prod, total = _torus_terms(q)
    num = total - prod * (n // 2)
    return num.div_exact(ONE_PLUS_T ** (n - 1)).canonicalize()


# -- dispatch ----------------------------------------------------------------


def alexander(spec, orientation: Optional[LinkOrientation] = None) -> UnitsClass:
    """Alexander polynomial up to units, dispatched on the parity class."""
    spec = _as_spec(spec)
    cls = classify(spec)
    if cls.kind is PretzelKind.UNSUPPORTED:
        raise UnsupportedLink(f"{spec} has more than one even parameter")
    if cls.kind is PretzelKind.ODD_KNOT:
        return f_odd(spec.q).canonicalize()
    if cls.kind is PretzelKind.EVEN_KNOT:
        if spec.n % 2:
            return knot_even_odd_n(spec)
        return knot_even_even_n(spec)
    if orientation is None:
        raise MissingOrientation(f"{spec} is a two-component link; give an orientation")
    if orientation is LinkOrientation.CODIRECTED:
        return link_codirected(spec.q)
    return f_even(spec.q).canonicalize()


def symmetrize(p: LaurentPoly) -> LaurentPoly:
    """Unique ``+-t^k`` multiple of a knot polynomial that is symmetric with value 1 at 1."""
    if p.is_zero():
        raise PreconditionViolation("the zero polynomial has no symmetrized form")
    lo, hi = p.min_exponent(), p.max_exponent()
    centred = p.shift(-Fraction(lo + hi) / 2)
    if centred.substitute_inverse() != centred:
        raise PreconditionViolation(f"{p} is not symmetric up to units")
    if not centred.has_integer_exponents():
        raise PreconditionViolation(f"{p} has no integer-exponent symmetric form")
    value = centred.evaluate(1)
    if value not in (1, -1):
        raise PreconditionViolation(f"{p} does not take the value +-1 at t = 1")
    return centred if value == 1 else -centred


def symmetrized(spec) -> LaurentPoly:
    """Symmetrized Alexander polynomial of a pretzel knot."""
    spec = _as_spec(spec)
    cls = classify(spec)
    if not cls.is_knot:
        raise PreconditionViolation(f"{spec} is not a knot")
    if cls.kind is PretzelKind.ODD_KNOT:
        return f_odd(spec.q)
    return symmetrize(alexander(spec).representative)


# -- corollaries --------------------------------------------------------------


def determinant(spec) -> int:
    """Knot determinant ``|sigma_{n-1}(q)|``."""
    spec = _as_spec(spec)
    if not classify(spec).is_knot:
        raise PreconditionViolation(f"{spec} is not a knot")
    return abs(sigma_all(spec.q)[spec.n - 1])


def genus_alternating(spec) -> int:
    spec = _as_spec(spec)
    q = spec.q
    if any(x % 2 == 0 for x in q) or spec.n % 2 == 0:
        raise PreconditionViolation("genus formula covers all-odd knots only")
    if not (all(x > 0 for x in q) or all(x < 0 for x in q)):
        raise PreconditionViolation("genus formula needs parameters of one sign")
    return (spec.n - 1) // 2


def has_max_degree(q: Sequence[int]) -> bool:
    """True iff the Alexander polynomial of the all-odd knot has span ``n - 1``."""
    q = tuple(q)
    _require_all_odd(q, 1, "has_max_degree")
    sig = sigma_all(q)
    return sum(sig[k] for k in range(0, len(q), 2)) != 0


def trivial_targets(n: int) -> list:
    """Values ``(-1)^k C((n-1)/2, k)`` that the even sigmas must take."""
    if n % 2 == 0:
        raise PreconditionViolation("n must be odd")
    m = (n - 1) // 2
    return [(-1) ** k * binomial(m, k) for k in range(m + 1)]


def is_trivial_alexander(q: Sequence[int]) -> bool:
    q = tuple(q)
    _require_all_odd(q, 1, "is_trivial_alexander")
    sig = sigma_all(q)
    return all(sig[2 * k] == c for k, c in enumerate(trivial_targets(len(q))))
