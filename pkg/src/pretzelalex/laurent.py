"""Sparse Laurent polynomials in ``t`` with half-integer exponents.

Exponents are stored doubled, so ``t^(1/2)`` has key ``1`` and ``t`` has key
``2``.  Coefficients are Python integers, hence arbitrary precision.  Values
are immutable and hashable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import (
    DivideByZero,
    NonIntegerExponent,
    NotDivisible,
    PolySyntaxError,
    ZeroBase,
    ZeroPolynomial,
)

__all__ = [
    "LaurentPoly",
    "UnitsClass",
    "T",
    "ONE",
    "ZERO",
    "canonicalize",
    "doteq",
    "div_exact",
    "div_coeff_exact",
    "eval_rational",
    "span_degree",
    "parse",
    "format_poly",
]


def _double(exp) -> int:
    """Convert an integer or half-integer exponent to a half-unit count."""
    if isinstance(exp, int):
        return 2 * exp
    e2 = Fraction(exp) * 2
    if e2.denominator != 1:
        raise ValueError(f"exponent {exp} is not a half-integer")
    return int(e2)


def _undouble(e2: int):
    return e2 // 2 if e2 % 2 == 0 else Fraction(e2, 2)


class LaurentPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        """Build from a mapping ``{exponent: coefficient}``.

        Exponents may be ``int`` or half-integer ``Fraction``.  Use
        :meth:`from_doubled` when the keys are already half-unit counts.
        """
        d = {}
        if terms:
            for e, c in terms.items():
                k = _double(e)
                d[k] = d.get(k, 0) + int(c)
        self._terms = {k: c for k, c in d.items() if c}
        self._hash = None

    @classmethod
    def from_doubled(cls, terms) -> LaurentPoly:
        p = object.__new__(cls)
        p._terms = {k: c for k, c in terms.items() if c}
        p._hash = None
        return p

    @classmethod
    def _raw(cls, terms) -> LaurentPoly:
        # caller guarantees no zero coefficients
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def monomial(cls, coeff=1, exp=0) -> LaurentPoly:
        return cls.from_doubled({_double(exp): int(coeff)})

    @classmethod
    def constant(cls, c) -> LaurentPoly:
        return cls.from_doubled({0: int(c)})

    @classmethod
    def from_coeffs(cls, coeffs, start=0) -> LaurentPoly:
        """``coeffs[i]`` is the coefficient of ``t^(start + i)``."""
        s = _double(start)
        return cls.from_doubled({s + 2 * i: c for i, c in enumerate(coeffs)})

    # -- inspection ---------------------------------------------------

    @property
    def doubled_terms(self) -> dict:
        """Copy of the ``{half-unit exponent: coefficient}`` map."""
        return dict(self._terms)

    def terms(self):
        """Sorted ``(exponent, coefficient)`` pairs, exponents as int or Fraction."""
        return [(_undouble(k), self._terms[k]) for k in sorted(self._terms)]

    def coeff(self, exp) -> int:
        return self._terms.get(_double(exp), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def min_exponent(self):
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no exponents")
        return _undouble(min(self._terms))

    def max_exponent(self):
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no exponents")
        return _undouble(max(self._terms))

    def has_integer_exponents(self) -> bool:
        return all(k % 2 == 0 for k in self._terms)

    def span_degree(self):
        """Difference between the largest and smallest exponent."""
        if not self._terms:
            raise ZeroPolynomial("span of the zero polynomial is undefined")
        return _undouble(max(self._terms) - min(self._terms))

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        d = dict(self._terms)
        for k, c in other._terms.items():
            v = d.get(k, 0) + c
            if v:
                d[k] = v
            else:
                d.pop(k, None)
        return LaurentPoly._raw(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return LaurentPoly._raw({k: c * other for k, c in self._terms.items()})
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        d = {}
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                d[k] = d.get(k, 0) + ca * cb
        return LaurentPoly.from_doubled(d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1 or next(iter(self._terms.values())) not in (1, -1):
                raise NotDivisible(f"{self} is not a unit, so it has no negative powers")
            ((k, c),) = self._terms.items()
            return LaurentPoly._raw({k * n: c ** (-n)})
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k) -> LaurentPoly:
        """Multiply by ``t^k``; ``k`` may be a half-integer."""
        s = _double(k)
        return self._shift2(s)

    def _shift2(self, s: int) -> LaurentPoly:
        if s == 0:
            return self
        return LaurentPoly._raw({e + s: c for e, c in self._terms.items()})

    def substitute_inverse(self) -> LaurentPoly:
        """The polynomial ``p(1/t)``."""
        return LaurentPoly._raw({-e: c for e, c in self._terms.items()})

    def div_exact(self, den: LaurentPoly) -> LaurentPoly:
        """Quotient ``q`` with ``q * den == self``; raises if none exists."""
        den = _coerce(den)
        if not den._terms:
            raise DivideByZero("division by the zero polynomial")
        if not self._terms:
            return ZERO
        if len(den._terms) == 1:
            ((k, c),) = den._terms.items()
            return self.div_coeff_exact(c)._shift2(-k)
        nlo, nhi = min(self._terms), max(self._terms)
        dlo, dhi = min(den._terms), max(den._terms)
        if nhi - nlo < dhi - dlo:
            raise NotDivisible(f"({self}) / ({den}): degree too small")
        rem = [0] * (nhi - nlo + 1)
        for k, c in self._terms.items():
            rem[k - nlo] = c
        dv = [0] * (dhi - dlo + 1)
        for k, c in den._terms.items():
            dv[k - dlo] = c
        lead = dv[-1]
        dlen = len(dv)
        qlen = len(rem) - dlen + 1
        quot = [0] * qlen
        for i in range(qlen - 1, -1, -1):
            c = rem[i + dlen - 1]
            if not c:
                continue
            q, r = divmod(c, lead)
            if r:
                raise NotDivisible(f"({self}) / ({den}): inexact coefficient")
            quot[i] = q
            for j, dc in enumerate(dv):
                if dc:
                    rem[i + j] -= q * dc
        if any(rem):
            raise NotDivisible(f"({self}) / ({den}): nonzero remainder")
        base = nlo - dlo
        return LaurentPoly.from_doubled({base + i: c for i, c in enumerate(quot)})

    def div_coeff_exact(self, c: int) -> LaurentPoly:
        """Divide every coefficient by the integer ``c`` without remainder."""
        if c == 0:
            raise DivideByZero("division by zero")
        out = {}
        for k, v in self._terms.items():
            q, r = divmod(v, c)
            if r:
                raise NotDivisible(f"coefficient {v} is not a multiple of {c}")
            out[k] = q
        return LaurentPoly._raw(out)

    # -- normal forms ---------------------------------------------------

    def canonicalize(self) -> UnitsClass:
        """Class of ``self`` modulo multiplication by ``+-t^k``."""
        if not self._terms:
            return UnitsClass(ZERO)
        lo = min(self._terms)
        sign = -1 if self._terms[lo] < 0 else 1
        return UnitsClass(
            LaurentPoly._raw({e - lo: sign * c for e, c in self._terms.items()})
        )

    def doteq(self, other) -> bool:
        return self.canonicalize() == _coerce(other).canonicalize()

    def evaluate(self, x) -> Fraction:
        """Exact value at the nonzero rational ``x``."""
        if not self.has_integer_exponents():
            raise NonIntegerExponent(f"{self} has half-integer exponents")
        if not isinstance(x, Rational):
            raise TypeError("evaluation point must be an exact rational")
        x = Fraction(x)
        if x == 0:
            raise ZeroBase("cannot evaluate a Laurent polynomial at 0")
        return sum((c * x ** (k // 2) for k, c in self._terms.items()), Fraction(0))

    # -- comparisons ----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly('{self}')"

    def __str__(self):
        return format_poly(self)


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.constant(x)
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
T = LaurentPoly.monomial(1, 1)


@dataclass(frozen=True)
class UnitsClass:
    """Equivalence class of a Laurent polynomial up to ``+-t^k``.

    The representative has minimum exponent 0 and a positive constant term,
    so two classes compare equal exactly when their representatives do.
    """

    representative: LaurentPoly

    def is_zero(self) -> bool:
        return self.representative.is_zero()

    def is_one(self) -> bool:
        return self.representative == ONE

    def __str__(self):
        return str(self.representative)


# -- functional surface --------------------------------------------------


def canonicalize(a: LaurentPoly) -> UnitsClass:
    return a.canonicalize()


def doteq(a: LaurentPoly, b: LaurentPoly) -> bool:
    return a.doteq(b)


def div_exact(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    return num.div_exact(den)


def div_coeff_exact(a: LaurentPoly, c: int) -> LaurentPoly:
    return a.div_coeff_exact(c)


def eval_rational(a: LaurentPoly, x) -> Fraction:
    return a.evaluate(x)


def span_degree(a: LaurentPoly):
    return a.span_degree()


# -- text format ---------------------------------------------------------


def _format_exp(k: int) -> str:
    if k % 2:
        return f"t^({k}/2)"
    e = k // 2
    if e == 1:
        return "t"
    return f"t^{e}"


def format_poly(a: LaurentPoly) -> str:
    """Render with ascending exponents, e.g. ``t^-2 - t^-1 + 1``."""
    if not a._terms:
        return "0"
    parts = []
    for i, k in enumerate(sorted(a._terms)):
        c = a._terms[k]
        mag = abs(c)
        if k == 0:
            body = str(mag)
        elif mag == 1:
            body = _format_exp(k)
        else:
            body = f"{mag}*{_format_exp(k)}"
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|(t)|([-+*^/()]))")


def _tokenize(s: str):
    pos = 0
    toks = []
    while pos < len(s):
        if s[pos:].strip() == "":
            break
        m = _TOKEN.match(s, pos)
        if not m:
            raise PolySyntaxError(f"unexpected character {s[pos]!r}", pos)
        start = m.start(m.lastindex)
        toks.append((m.group(m.lastindex), start))
        pos = m.end()
    toks.append(("", len(s)))
    return toks


class _Parser:
    def __init__(self, s):
        self.toks = _tokenize(s)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def pos(self):
        return self.toks[self.i][1]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok[0]

    def expect(self, tok):
        if self.peek() != tok:
            raise PolySyntaxError(f"expected {tok!r}", self.pos())
        self.take()

    def integer(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        if not self.peek().isdigit():
            raise PolySyntaxError("expected integer", self.pos())
        return sign * int(self.take())

    def exponent(self) -> int:
        if self.peek() == "(":
            self.take()
            num = self.integer()
            if self.peek() == "/":
                self.take()
                den_pos = self.pos()
                den = self.integer()
                if den not in (1, 2):
                    raise PolySyntaxError("only half-integer exponents are allowed", den_pos)
                k = num * (2 // den)
            else:
                k = 2 * num
            self.expect(")")
            return k
        return 2 * self.integer()

    def term(self):
        start = self.pos()
        coeff = None
        if self.peek().isdigit():
            coeff = int(self.take())
            if self.peek() == "*":
                self.take()
                if self.peek() != "t":
                    raise PolySyntaxError("expected 't' after '*'", self.pos())
        k = 0
        if self.peek() == "t":
            self.take()
            k = 2
            if self.peek() == "^":
                self.take()
                k = self.exponent()
        elif coeff is None:
            raise PolySyntaxError("expected a term", start)
        return k, 1 if coeff is None else coeff

    def poly(self) -> LaurentPoly:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        d = {}
        while True:
            k, c = self.term()
            d[k] = d.get(k, 0) + sign * c
            if self.peek() in ("+", "-"):
                sign = -1 if self.take() == "-" else 1
                continue
            if self.peek() == "":
                break
            raise PolySyntaxError(f"unexpected {self.peek()!r}", self.pos())
        return LaurentPoly.from_doubled(d)


def parse(s: str) -> LaurentPoly:
    """Parse text such as ``"t^-2 - t^-1 + 1"`` or ``"3*t^(1/2)"``."""
    if not s.strip():
        raise PolySyntaxError("empty input", 0)
    return _Parser(s).poly()
