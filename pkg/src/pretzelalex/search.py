"""Exhaustive search for all-odd pretzel knots with trivial Alexander polynomial.

A tuple of ``n`` odd integers qualifies when its even elementary symmetric
values are ``sigma_{2k} = (-1)^k C(m, k)`` with ``m = (n - 1)/2``.

Pruning rests on a pairwise necessary condition.  Split the parameters into
a pair ``(a, b)`` and the rest; writing the even part of
``prod(1 + q u)`` as ``(1 + ab u^2) R_e(u) + (a + b) u R_o(u)`` and
evaluating at ``u^2 = -1/(ab)`` gives ``(a + b) * H = (1 + ab)^m`` for an
integer ``H``.  So every pair satisfies ``(a + b) | (1 + ab)^m``, and
``a + b = 0`` forces ``{a, b} = {1, -1}``.  Since ``1 + ab = 1 - a^2``
modulo ``a + b``, the partners of ``a`` are ``d - a`` for the divisors
``d`` of ``(a^2 - 1)^m``, a short list unless ``a = +-1``.

Sorted tuples are enumerated as cliques of this compatibility relation;
the first ``n - 2`` entries form a prefix and the last two come from the
exact 2x2 linear system for their sum and product.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .closedform import alexander, trivial_targets
from .errors import PreconditionViolation, VerificationFailed
from .symfun import sigma_all

# total crossing count up to which the diagram oracle is also run
DEFAULT_ORACLE_LIMIT = 50_000


@dataclass(frozen=True)
class SearchQuery:
    n: int
    bound: int
    nontrivial_only: bool = True
    job_count: int = 1

    def __post_init__(self):
        if self.n < 1 or self.n % 2 == 0:
            raise PreconditionViolation(f"n must be a positive odd integer, got {self.n}")
        if self.bound < 1:
            raise PreconditionViolation("bound must be at least 1")
        if self.job_count < 1:
            raise PreconditionViolation("job_count must be at least 1")


@dataclass(frozen=True)
class SearchSolution:
    q: tuple
    sigma_even: tuple
    verified_closed: bool = False
    verified_matrix: bool = False

    def as_dict(self) -> dict:
        return {
            "q": list(self.q),
            "sigma_even": [str(v) for v in self.sigma_even],
            "verified_closed": self.verified_closed,
            "verified_matrix": self.verified_matrix,
        }


def target_sigmas(n: int) -> list:
    return trivial_targets(n)


def family_n3(p: int) -> tuple:
    """The triple ``(-p, 2p - 1, 2p + 1)``; its pairwise products sum to -1."""
    if p % 2 == 0:
        raise PreconditionViolation("p must be odd")
    return (-p, 2 * p - 1, 2 * p + 1)


def is_nontrivial_solution(q: Iterable[int]) -> bool:
    """False when the tuple holds both -1 and +1 (a cancelling pair)."""
    s = set(q)
    return not (1 in s and -1 in s)


# -- compatibility graph ------------------------------------------------------


@lru_cache(maxsize=None)
def _factor(x: int) -> dict:
    out = {}
    d = 2
    while d * d <= x:
        while x % d == 0:
            out[d] = out.get(d, 0) + 1
            x //= d
        d += 1 if d == 2 else 2
    if x > 1:
        out[x] = out.get(x, 0) + 1
    return out


def _divisors_upto(factors: dict, limit: int) -> list:
    divs = [1]
    for p, e in factors.items():
        new = []
        for d in divs:
            v = d
            for _ in range(e):
                v *= p
                if v > limit:
                    break
                new.append(v)
        divs.extend(new)
    return divs


@lru_cache(maxsize=None)
def partners(a: int, m: int, bound: int) -> Optional[frozenset]:
    """Odd ``b`` with ``|b| <= bound`` that may share a solution with ``a``.

    ``None`` means every odd value in range qualifies (``a = +-1``).
    """
    if a in (1, -1):
        return None
    factors = {}
    for part in (abs(a - 1), abs(a + 1)):
        for p, e in _factor(part).items():
            factors[p] = factors.get(p, 0) + e * m
    out = set()
    for d in _divisors_upto(factors, abs(a) + bound):
        if d % 2:
            continue
        for dd in (d, -d):
            b = dd - a
            if -bound <= b <= bound:
                out.add(b)
    return frozenset(out)


def compatible(a: int, b: int, m: int) -> bool:
    if a + b == 0:
        return a * b == -1
    return pow(1 + a * b, m, abs(a + b)) == 0


def _odd_range(lo: int, hi: int) -> range:
    lo += (lo % 2 == 0)
    return range(lo, hi + 1, 2)


def _restrict(cands: list, b: int, m: int, bound: int) -> list:
    """Members of ``cands`` compatible with ``b``."""
    nb = partners(b, m, bound)
    if nb is None:
        return cands
    if len(nb) < len(cands):
        keep = set(cands)
        return sorted(x for x in nb if x in keep)
    return [x for x in cands if x in nb]


# -- search ---------------------------------------------------------------------


def _solve_pair(prefix, targets):
    """Integer ``(s, p)`` with ``sigma_2`` and ``sigma_4`` on target, or ``None``.

    Returns ``"singular"`` if the system is degenerate.
    """
    e = sigma_all(prefix)
    c1, c2 = targets[1], targets[2]
    det = e[1] * e[2] - e[3]
    if det == 0:
        return "singular"
    r1 = c1 - e[2]
    r2 = c2 - e[4]
    s_num = r1 * e[2] - r2
    p_num = e[1] * r2 - e[3] * r1
    if s_num % det or p_num % det:
        return None
    return s_num // det, p_num // det


def _matches(q, targets) -> bool:
    sig = sigma_all(q)
    return all(sig[2 * k] == c for k, c in enumerate(targets))


def _extend(prefix, cands, query: SearchQuery, targets, m, out):
    n, bound = query.n, query.bound
    if len(prefix) == n - 2:
        _finish(prefix, cands, query, targets, m, out)
        return
    for idx, v in enumerate(cands):
        if query.nontrivial_only and -v in prefix and v in (1, -1):
            continue
        nxt = _restrict(cands[idx:], v, m, bound)
        if not nxt and len(prefix) + 1 < n:
            continue
        _extend(prefix + (v,), nxt, query, targets, m, out)


def _finish(prefix, cands, query, targets, m, out):
    bound = query.bound
    last = prefix[-1]
    pairs = []
    solved = _solve_pair(prefix, targets) if m >= 2 else "singular"
    if solved is None:
        return
    if solved == "singular":
        # scan the second-largest entry; sigma_2 is linear in the largest
        for i, x in enumerate(cands):
            e = sigma_all(prefix + (x,))
            if e[1]:
                y, r = divmod(targets[1] - e[2], e[1])
                if not r and y >= x and y <= bound and y % 2:
                    pairs.append((x, y))
            else:
                pairs.extend((x, y) for y in _restrict(cands[i:], x, m, bound))
    else:
        s, p = solved
        disc = s * s - 4 * p
        if disc < 0:
            return
        r = math.isqrt(disc)
        if r * r != disc:
            return
        x, y = (s - r) // 2, (s + r) // 2
        if x % 2 == 0 or y % 2 == 0 or x < last or abs(y) > bound:
            return
        pairs.append((x, y))
    for x, y in pairs:
        q = prefix + (x, y)
        if query.nontrivial_only and not is_nontrivial_solution(q):
            continue
        if _matches(q, targets):
            out.append(q)


def search_outer(query: SearchQuery, a: int) -> list:
    """All sorted solutions whose smallest entry is ``a``."""
    m = (query.n - 1) // 2
    targets = target_sigmas(query.n)
    bound = query.bound
    if query.n == 1:
        return [(a,)]
    nb = partners(a, m, bound)
    if nb is None:
        cands = list(_odd_range(a, bound))
    else:
        cands = sorted(x for x in nb if x >= a)
    if not cands:
        return []
    out = []
    if query.n == 3:
        _finish((a,), cands, query, targets, m, out)
    else:
        _extend((a,), cands, query, targets, m, out)
    return sorted(set(out))


def _worker(args):
    query, a = args
    return a, search_outer(query, a)


def outer_values(query: SearchQuery) -> list:
    return list(_odd_range(-query.bound, query.bound))


def read_checkpoint(path) -> set:
    if not path or not os.path.exists(path):
        return set()
    with open(path) as fh:
        return {int(line) for line in fh if line.strip()}


def iter_search(query: SearchQuery, checkpoint: Optional[str] = None) -> Iterator[tuple]:
    """Yield ``(outer_value, solutions)`` in ascending outer order.

    Completed outer values are appended to ``checkpoint`` (one integer per
    line) and skipped when the file already lists them.
    """
    done = read_checkpoint(checkpoint)
    todo = [a for a in outer_values(query) if a not in done]
    ckpt = open(checkpoint, "a") if checkpoint else None
    try:
        if query.job_count == 1:
            results = map(_worker, ((query, a) for a in todo))
            pool = None
        else:
            pool = ProcessPoolExecutor(max_workers=query.job_count)
            chunk = max(1, len(todo) // (query.job_count * 16))
            results = pool.map(_worker, ((query, a) for a in todo), chunksize=chunk)
        for a, sols in results:
            if ckpt:
                ckpt.write(f"{a}\n")
                ckpt.flush()
            yield a, sols
    finally:
        if ckpt:
            ckpt.close()
        if query.job_count > 1 and pool is not None:
            pool.shutdown()


def run_search(query: SearchQuery, verify: bool = False,
               checkpoint: Optional[str] = None,
               oracle_limit: int = DEFAULT_ORACLE_LIMIT) -> list:
    """All sorted solutions within the bound, in lexicographic order."""
    found = []
    for _, sols in iter_search(query, checkpoint):
        found.extend(sols)
    found = sorted(set(found))
    if verify:
        return [verify_solution(q, oracle_limit) for q in found]
    return [SearchSolution(q, tuple(sigma_all(q)[2 * k] for k in range(len(q) // 2 + 1)))
            for q in found]


def verify_solution(q, oracle_limit: int = DEFAULT_ORACLE_LIMIT) -> SearchSolution:
    """Recheck a candidate by sigma values, closed form and (if small) the diagram."""
    from .oracle import oracle_alexander

    q = tuple(q)
    if not q or len(q) % 2 == 0 or any(x % 2 == 0 for x in q):
        raise VerificationFailed("shape", f"{q} is not an odd-length all-odd tuple")
    sig = sigma_all(q)
    for k, c in enumerate(target_sigmas(len(q))):
        if sig[2 * k] != c:
            raise VerificationFailed(f"sigma_{2 * k}", f"expected {c}, got {sig[2 * k]}")
    if not alexander(q).is_one():
        raise VerificationFailed("closed_form", f"alexander{q} is not 1")
    matrix_ok = False
    if sum(abs(x) for x in q) <= oracle_limit:
        if not oracle_alexander(q).is_one():
            raise VerificationFailed("matrix_oracle", f"diagram polynomial of {q} is not 1")
        matrix_ok = True
    sigma_even = tuple(sig[2 * k] for k in range(len(q) // 2 + 1))
    return SearchSolution(tuple(sorted(q)), sigma_even, True, matrix_ok)


# -- export ---------------------------------------------------------------------


def solutions_to_csv(solutions, n: int, bound: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "bound"] + [f"q{i + 1}" for i in range(n)]
               + ["verified_closed", "verified_matrix"])
    for s in solutions:
        w.writerow([n, bound, *s.q, str(s.verified_closed).lower(),
                    str(s.verified_matrix).lower()])
    return buf.getvalue()


def solutions_to_json(solutions, n: int, bound: int) -> str:
    return json.dumps({"n": n, "bound": bound,
                       "solutions": [s.as_dict() for s in solutions]}, indent=2)
