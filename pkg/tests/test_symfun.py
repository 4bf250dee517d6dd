import itertools
import math

from hypothesis import given, strategies as st

from pretzelalex.symfun import SigmaVector, binomial, sigma_all, sigma_extended

ints = st.lists(st.integers(-50, 50), max_size=8).map(tuple)


def sigma_brute(q, k):
    return sum(math.prod(c) for c in itertools.combinations(q, k))


def test_examples():
    assert list(sigma_all((1, 1, 1))) == [1, 3, 3, 1]
    assert sigma_all((3, 5, 7))[2] == 71
    assert sigma_all((-3, 5, 7))[2] == -1
    assert list(sigma_all(())) == [1]


def test_extended_examples():
    v = sigma_all((2, 3, 4))
    assert sigma_extended(v, -2) == 0
    assert sigma_extended(v, 0) == 1
    assert sigma_extended(v, 4) == 0
    assert v[-1] == 0 and v[4] == 0


def test_binomial_examples():
    assert binomial(2, 1) == 2
    assert binomial(5, 0) == 1
    assert binomial(4, 5) == 0
    assert binomial(4, -1) == 0


def test_large_values_exact():
    q = (8399, -6119, 4001, -1871, 307)
    assert sigma_all(q)[5] == math.prod(q)


@given(ints)
def test_matches_brute_force(q):
    v = sigma_all(q)
    assert isinstance(v, SigmaVector)
    assert len(v) == len(q) + 1
    assert v[0] == 1
    assert v[len(q)] == math.prod(q)
    for k in range(-1, len(q) + 2):
        assert v[k] == (sigma_brute(q, k) if 0 <= k <= len(q) else 0)


@given(ints.filter(bool))
def test_recursion_in_first_entry(q):
    a = sigma_all((q[0] + 2,) + q[1:])
    b = sigma_all(q)
    rest = sigma_all(q[1:])
    for k in range(len(q) + 1):
        assert a[k] == b[k] + 2 * rest[k - 1]


@given(ints)
def test_one_minus_one_pair(q):
    a = sigma_all((1, -1) + q)
    b = sigma_all(q)
    for k in range(len(q) // 2 + 2):
        assert a[2 * k] == b[2 * k] - b[2 * k - 2]


@given(st.integers(0, 30))
def test_all_ones_gives_binomials(m):
    v = sigma_all((1,) * m)
    assert [v[k] for k in range(m + 1)] == [binomial(m, k) for k in range(m + 1)]


@given(ints, st.permutations(range(8)))
def test_order_independent(q, perm):
    shuffled = tuple(q[i] for i in perm if i < len(q))
    assert list(sigma_all(shuffled)) == list(sigma_all(q))


def test_doctests():
    import doctest

    from pretzelalex import laurent, symfun

    for mod in (laurent, symfun):
        assert doctest.testmod(mod).failed == 0
