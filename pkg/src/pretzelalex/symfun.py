"""Elementary symmetric polynomials and binomial coefficients over the integers."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class SigmaVector:
    """``values[k]`` is the k-th elementary symmetric polynomial of the inputs."""

    values: tuple

    @property
    def n(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, k: int) -> int:
        # zero outside 0..n, matching the sigma_k = 0 convention for k < 0
        if 0 <= k < len(self.values):
            return self.values[k]
        return 0

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)


def sigma_all(q) -> SigmaVector:
    """All elementary symmetric values of ``q`` via the product recurrence.

    >>> sigma_all((1, 1, 1)).values
    (1, 3, 3, 1)
    """
    s = [1]
    for x in q:
        s.append(0)
        for k in range(len(s) - 1, 0, -1):
            s[k] += x * s[k - 1]
    return SigmaVector(tuple(s))


def sigma_extended(v: SigmaVector, k: int) -> int:
    return v[k]


def binomial(m: int, k: int) -> int:
    if k < 0 or k > m:
        return 0
    return math.comb(m, k)
