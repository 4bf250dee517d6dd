"""Cross-validation suites shared by ``pretzelalex verify`` and the test-suite.

Each suite returns a :class:`Report` with pass/fail counts and the first
counterexample, so a caller can print one line per suite.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from . import closedform as cf
from .closedform import LinkOrientation, PretzelSpec
from .laurent import ONE, T, LaurentPoly
from .oracle import (
    alexander_from_matrix,
    build_diagram,
    oracle_alexander,
    reference_reduced_matrix,
    reduce_regions,
    rows_equal_up_to_units,
    subsetsum_oracle,
)
from .symfun import binomial, sigma_all

SQRT_T_DIFF = LaurentPoly.from_doubled({1: 1, -1: -1})


@dataclass
class Report:
    name: str
    passed: int = 0
    failed: int = 0
    first_failure: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed > 0

    def record(self, good: bool, detail):
        if good:
            self.passed += 1
        else:
            self.failed += 1
            if self.first_failure is None:
                self.first_failure = str(detail)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = f"[{status}] {self.name}: {self.passed} passed, {self.failed} failed"
        if self.first_failure:
            text += f"; first counterexample {self.first_failure}"
        return text


def odd_values(limit: int) -> list:
    return [x for x in range(-limit, limit + 1) if x % 2]


def even_values(limit: int) -> list:
    return [x for x in range(-limit, limit + 1) if x % 2 == 0]


# -- spec grids --------------------------------------------------------------


def odd_knot_grid(ns: Iterable[int], odd_max: int):
    for n in ns:
        for q in itertools.product(odd_values(odd_max), repeat=n):
            yield PretzelSpec(q), None


def even_knot_grid(ns: Iterable[int], even_max: int, odd_max: int):
    for n in ns:
        for q1 in even_values(even_max):
            for rest in itertools.product(odd_values(odd_max), repeat=n - 1):
                yield PretzelSpec((q1,) + rest), None


def link_grid(ns: Iterable[int], odd_max: int):
    for n in ns:
        for q in itertools.product(odd_values(odd_max), repeat=n):
            for o in LinkOrientation:
                yield PretzelSpec(q), o


def oracle_agrees(spec, orientation=None, reduced=True, rotate=True) -> bool:
    expected = cf.alexander(spec, orientation)
    got = oracle_alexander(spec, orientation, reduced=reduced, rotate=rotate)
    return got == expected


def oracle_grid(name, specs, wirtinger_every: int = 0) -> Report:
    """Closed form against the reduced-region oracle for every spec.

    With ``wirtinger_every = k > 0`` every k-th spec is also checked against
    the full Wirtinger matrix.
    """
    rep = Report(name)
    for idx, (spec, o) in enumerate(specs):
        if sum(abs(x) for x in spec.q) == 0:
            continue
        good = oracle_agrees(spec, o)
        if good and wirtinger_every and idx % wirtinger_every == 0:
            good = oracle_agrees(spec, o, reduced=False, rotate=False)
        rep.record(good, (str(spec), o.value if o else None))
    return rep


def subsetsum_grid(ns, odd_max) -> Report:
    rep = Report("co-directed closed form = subset-sum form")
    for n in ns:
        for q in itertools.product(odd_values(odd_max), repeat=n):
            rep.record(cf.link_codirected(q) == subsetsum_oracle(q), q)
    return rep


# -- property suites ------------------------------------------------------------


def random_odd_tuple(rng: random.Random, n: int, qmax: int) -> tuple:
    return tuple(rng.choice(odd_values(qmax)) for _ in range(n))


def random_knot(rng: random.Random, qmax: int, nmax: int = 7) -> PretzelSpec:
    """Random knot spec drawn evenly from the three formula cases."""
    case = rng.randrange(3)
    if case == 0:
        n = rng.choice(range(1, nmax + 1, 2))
        return PretzelSpec(random_odd_tuple(rng, n, qmax))
    n = rng.choice(range(3 if case == 1 else 2, nmax + 1, 2))
    q1 = rng.choice(even_values(qmax - 1 if qmax % 2 else qmax))
    rest = random_odd_tuple(rng, n - 1, qmax)
    pos = rng.randrange(n)
    q = list(rest)
    q.insert(pos, q1)
    return PretzelSpec(tuple(q))


def symmetry_suite(rng, samples, nmax=9, qmax=15) -> Report:
    rep = Report("f_odd symmetric with value 1 at t=1; f_even antisymmetric")
    for _ in range(samples):
        n = rng.randrange(1, nmax + 1)
        q = random_odd_tuple(rng, n, qmax)
        if n % 2:
            f = cf.f_odd(q)
            good = f.substitute_inverse() == f and f.evaluate(1) == 1
        else:
            f = cf.f_even(q)
            good = f.substitute_inverse() == -f
        rep.record(good, q)
    return rep


def stability_suite(rng, samples, nmax=9, qmax=15) -> Report:
    rep = Report("(1,-1)-stability of f_odd and f_even")
    for _ in range(samples):
        n = rng.randrange(1, nmax - 1)
        q = random_odd_tuple(rng, n, qmax)
        f = cf.f_odd if n % 2 else cf.f_even
        rep.record(f((1, -1) + q) == f(q), q)
    return rep


def skein_suite(rng, samples, nmax=9, qmax=15) -> Report:
    """``f(q1 + 2, rest) = f(q1, rest) + (t^1/2 - t^-1/2) g(rest)`` with f, g swapping parity."""
    rep = Report("skein recursion for f_odd / f_even")
    for _ in range(samples):
        n = rng.randrange(1, nmax + 1)
        q = random_odd_tuple(rng, n, qmax)
        if n % 2:
            lhs = cf.f_odd((q[0] + 2,) + q[1:])
            rhs = cf.f_odd(q) + SQRT_T_DIFF * cf.f_even(q[1:])
        else:
            lhs = cf.f_even((q[0] + 2,) + q[1:])
            rhs = cf.f_even(q) + SQRT_T_DIFF * cf.f_odd(q[1:])
        rep.record(lhs == rhs, q)
    return rep


def binomial_identity_suite(max_m: int) -> Report:
    rep = Report("sum (-1)^k C(m,k)(t-1)^2k (t+1)^(2m-2k) = 4^m t^m")
    for m in range(max_m + 1):
        total = LaurentPoly()
        for k in range(m + 1):
            total += (T - ONE) ** (2 * k) * (T + ONE) ** (2 * m - 2 * k) * ((-1) ** k * binomial(m, k))
        rep.record(total == LaurentPoly.monomial(4 ** m, m), m)
    return rep


def determinant_suite(rng, samples, qmax=99, nmax=7) -> Report:
    rep = Report("|Delta(-1)| = |sigma_(n-1)| over all knot cases")
    for _ in range(samples):
        spec = random_knot(rng, qmax, nmax)
        value = abs(cf.alexander(spec).representative.evaluate(-1))
        rep.record(value == cf.determinant(spec) == abs(sigma_all(spec.q)[spec.n - 1]), spec)
    return rep


def degree_suite(rng, samples, ns=(3, 5, 7), qmax=15) -> Report:
    rep = Report("has_max_degree <=> span = n-1")
    for _ in range(samples):
        q = random_odd_tuple(rng, rng.choice(ns), qmax)
        span = cf.alexander(q).representative.span_degree()
        rep.record(cf.has_max_degree(q) == (span == len(q) - 1), q)
    return rep


def triviality_suite(rng, samples, ns=(3, 5, 7), qmax=7, extra=()) -> Report:
    rep = Report("is_trivial_alexander <=> alexander = 1")
    tuples = [random_odd_tuple(rng, rng.choice(ns), qmax) for _ in range(samples)]
    for q in itertools.chain(tuples, extra):
        rep.record(cf.is_trivial_alexander(q) == cf.alexander(q).is_one(), q)
    return rep


def reference_matrix_suite(rng, samples, qmax=15) -> Report:
    rep = Report("reduced co-directed n=4 matrix matches the reference matrix")
    for _ in range(samples):
        q = random_odd_tuple(rng, 4, qmax)
        d = build_diagram(q, LinkOrientation.CODIRECTED)
        m = reduce_regions(d)
        good = rows_equal_up_to_units(m.entries, reference_reduced_matrix(q))
        good = good and alexander_from_matrix(m, allow_zero=True) == cf.link_codirected(q)
        rep.record(good, q)
    return rep


def run_verify(n_max: int, q_max: int, samples: int, seed: int,
               progress: Optional[Callable[[Report], None]] = None) -> list:
    """Grid plus property suites used by the ``verify`` command."""
    rng = random.Random(seed)
    odd_ns = range(1, n_max + 1, 2)
    even_ns = range(1, n_max + 1)
    link_ns = range(2, n_max + 1, 2)
    even_max = q_max + 1 if q_max % 2 else q_max
    suites = [
        lambda: oracle_grid("odd knots: closed form = matrix oracle",
                            odd_knot_grid(odd_ns, q_max), wirtinger_every=97),
        lambda: oracle_grid("one-even knots: closed form = matrix oracle",
                            even_knot_grid(even_ns, even_max, q_max), wirtinger_every=97),
        lambda: oracle_grid("two-component links: closed form = matrix oracle",
                            link_grid(link_ns, q_max), wirtinger_every=97),
        lambda: subsetsum_grid([n for n in link_ns if n <= 8], q_max),
        lambda: symmetry_suite(rng, samples),
        lambda: stability_suite(rng, samples),
        lambda: skein_suite(rng, samples),
        lambda: binomial_identity_suite(10),
        lambda: determinant_suite(rng, samples),
        lambda: degree_suite(rng, samples),
        lambda: triviality_suite(rng, samples),
        lambda: reference_matrix_suite(rng, min(samples, 20)),
    ]
    reports = []
    for make in suites:
        rep = make()
        reports.append(rep)
        if progress:
            progress(rep)
    return reports
