import random
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from pretzelalex import closedform as cf
from pretzelalex.closedform import LinkOrientation
from pretzelalex.errors import DegenerateSystem, UnsupportedLink
from pretzelalex.laurent import ONE, T, ZERO, parse
from pretzelalex.oracle import (
    AlexMatrix,
    alexander_from_matrix,
    bareiss_det,
    build_diagram,
    crossing_transfer,
    minor,
    oracle_alexander,
    reference_reduced_matrix,
    reduce_regions,
    region_transfer,
    rows_equal_up_to_units,
    subsetsum_oracle,
    wirtinger_matrix,
)

from strategies import even_length_odd_tuples, odd_tuples

CO, ANTI = LinkOrientation.CODIRECTED, LinkOrientation.OPPOSITE


def torus_2(m):
    return (T ** abs(m) + ONE).div_exact(ONE + T).canonicalize()


def cofactor_det(rows):
    """Laplace expansion, an independent check on Bareiss."""
    if not rows:
        return ONE
    total = ZERO
    for j, v in enumerate(rows[0]):
        if v.is_zero():
            continue
        sub = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = v * cofactor_det(sub)
        total = total + term if j % 2 == 0 else total - term
    return total


# -- validation gate: torus knots and connected sums come first ------------------


@pytest.mark.parametrize("m", [1, 3, 5, 7, 9, -3, -7])
def test_gate_torus_knots(m):
    for reduced in (False, True):
        assert oracle_alexander((0, m), reduced=reduced) == torus_2(m)


@pytest.mark.parametrize("a, b", [(3, 5), (3, -3), (5, 7), (-3, -5), (1, 7)])
def test_gate_connected_sums(a, b):
    expected = (torus_2(a).representative * torus_2(b).representative).canonicalize()
    assert oracle_alexander((0, a, b), reduced=False) == expected
    assert oracle_alexander((0, a, b)) == expected


def test_gate_torus_links():
    # P(1,...,1) with 2k regions is the (2, 2k) torus link.  Opposite strands in
    # each region give the braid-parallel orientation, (t^2k - 1)/(t + 1);
    # co-directed strands give the antiparallel one, a k-times twisted annulus
    # with polynomial k(1 - t).
    for k in (1, 2, 3, 4):
        q = (1,) * (2 * k)
        parallel = (T ** (2 * k) - ONE).div_exact(ONE + T).canonicalize()
        anti = ((ONE - T) * k).canonicalize()
        for reduced in (False, True):
            assert oracle_alexander(q, ANTI, reduced=reduced) == parallel
            assert oracle_alexander(q, CO, reduced=reduced) == anti


# -- diagrams --------------------------------------------------------------------


def test_diagram_examples():
    d = build_diagram((1, 1, 1))
    assert d.n_crossings == 3 and d.n_components == 1
    d = build_diagram((3, 3, 3, 3), CO)
    assert d.n_crossings == 12 and d.n_components == 2
    d = build_diagram((0, 3))
    assert d.n_crossings == 3 and d.n_components == 1
    with pytest.raises(UnsupportedLink):
        build_diagram((2, 4, 3))


@given(st.one_of(odd_tuples(5, 1, 5).filter(lambda q: len(q) % 2),
                 st.tuples(st.sampled_from([-4, -2, 0, 2, 4]), odd_tuples(5, 1, 4)).map(lambda p: (p[0],) + p[1])))
def test_wirtinger_arc_structure(q):
    d = build_diagram(q)
    assert d.n_crossings == sum(abs(x) for x in q)
    assert sorted(c.under_out for c in d.crossings) == list(range(d.n_arcs))
    assert {c.sign for c in d.crossings} <= {1, -1}
    m = wirtinger_matrix(d)
    assert m.shape == (d.n_crossings, d.n_arcs)
    for row in m.entries:
        assert sum(1 for v in row if not v.is_zero()) <= 3


def test_matrix_sizes():
    assert wirtinger_matrix(build_diagram((1, 1, 1))).shape == (3, 3)
    assert wirtinger_matrix(build_diagram((1, 1), CO)).shape == (2, 2)
    assert reduce_regions(build_diagram((3, 3, 3, 3), CO)).shape == (4, 4)


def test_dump_is_parseable():
    d = build_diagram((1, 1, 1))
    text = wirtinger_matrix(d).dump()
    lines = text.splitlines()
    assert len(lines) == 3
    for line in lines:
        for cell in line.split(": ", 1)[1].split(", "):
            parse(cell.split(": ")[1])
    dump = d.dump().splitlines()
    assert dump[0].startswith("pretzel (1, 1, 1): 3 crossings")
    assert len(dump) == 4


def test_single_crossing_region_transfer():
    d = build_diagram((1, 3, 5))
    assert region_transfer(d, 0) == crossing_transfer(d.crossings[d.regions[0][0]])


def _mul(a, b):
    return [[a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)] for i in range(2)]


@pytest.mark.parametrize("q", [(5, 3, 7), (-5, 3, 7), (4, 3, 5), (3, 3, 3, 3)])
def test_inverse_twists_cancel(q):
    # follow region 0 by its mirror image (a Reidemeister II cancellation)
    orient = CO if len(q) % 2 == 0 else None
    d = build_diagram(q, orient)
    cs = [d.crossings[x] for x in d.regions[0]]
    total = region_transfer(d, 0)
    for c in reversed(cs):
        mirror = replace(c, sign=-c.sign, over_is_tr_bl=not c.over_is_tr_bl)
        total = _mul(crossing_transfer(mirror), total)
    assert total == [[ONE, ZERO], [ZERO, ONE]]


# -- determinants -------------------------------------------------------------------


@given(st.integers(1, 4), st.randoms(use_true_random=False))
def test_bareiss_matches_cofactor(size, rnd):
    pool = [ZERO, ONE, -ONE, T, ONE - T, T ** -1, parse("2 + t^(1/2)"), parse("t^2 - 3")]
    rows = [[rnd.choice(pool) for _ in range(size)] for _ in range(size)]
    assert bareiss_det(rows) == cofactor_det(rows)


def test_degenerate_system():
    m = AlexMatrix([[ONE, ONE], [ONE, ONE]], ["r0", "r1"], ["c0", "c1"])
    assert alexander_from_matrix(m).is_one()
    z = AlexMatrix([[ZERO, ZERO], [ZERO, ZERO]], ["r0", "r1"], ["c0", "c1"])
    with pytest.raises(DegenerateSystem):
        alexander_from_matrix(z)
    assert alexander_from_matrix(z, allow_zero=True).is_zero()


def test_split_links_give_zero():
    for q in [(1, -1), (1, -1, 1, -1), (-1, 1, -1, 1)]:
        for o in (CO, ANTI):
            assert oracle_alexander(q, o, reduced=False).is_zero()
            assert oracle_alexander(q, o).is_zero()
            assert cf.alexander(q, o).is_zero()


# -- oracle examples and agreement -------------------------------------------------


def test_oracle_examples():
    assert oracle_alexander((1, 1, 1)) == parse("t^2 - t + 1").canonicalize()
    expected = (parse("t^2-t+1") * parse("t^4-t^3+t^2-t+1")).canonicalize()
    assert oracle_alexander((0, 3, 5), reduced=False) == expected
    assert oracle_alexander((-3, 5, 7), reduced=False).is_one()


def test_subsetsum_examples():
    assert subsetsum_oracle((1, 1)) == parse("t - 1").canonicalize()
    assert subsetsum_oracle((1, 1, 1, 1)) == parse("2 - 2*t").canonicalize()
    assert subsetsum_oracle((3, 3, 3, 3)) == cf.link_codirected((3, 3, 3, 3))


def test_reference_matrix_example():
    q = (3, 5, -7, 1)
    m = reduce_regions(build_diagram(q, CO))
    assert rows_equal_up_to_units(m.entries, reference_reduced_matrix(q))
    assert alexander_from_matrix(m) == cf.link_codirected(q)


knots = st.one_of(
    odd_tuples(5, 1, 5).filter(lambda q: len(q) % 2),
    st.tuples(st.sampled_from([-6, -4, -2, 0, 2, 4, 6]), odd_tuples(5, 1, 4)).map(lambda p: p[1] + (p[0],)),
)


@settings(max_examples=60)
@given(knots)
def test_routes_agree_on_knots(q):
    expected = cf.alexander(q)
    assert oracle_alexander(q) == expected
    assert oracle_alexander(q, reduced=False, rotate=False) == expected


@settings(max_examples=60)
@given(even_length_odd_tuples(5, 4), st.sampled_from([CO, ANTI]))
def test_routes_agree_on_links(q, o):
    expected = cf.alexander(q, o)
    assert oracle_alexander(q, o) == expected
    assert oracle_alexander(q, o, reduced=False) == expected


@settings(max_examples=25)
@given(knots.filter(lambda q: sum(abs(x) for x in q) <= 12))
def test_minor_choice_independence(q):
    m = wirtinger_matrix(build_diagram(q))
    ref = alexander_from_matrix(m)
    size = m.shape[0]
    rnd = random.Random(sum(q))
    for _ in range(4):
        i, j = rnd.randrange(size), rnd.randrange(size)
        assert minor(m.entries, i, j).canonicalize() == ref


@settings(max_examples=40)
@given(even_length_odd_tuples(7, 8))
def test_subsetsum_matches_codirected(q):
    assert subsetsum_oracle(q) == cf.link_codirected(q)
