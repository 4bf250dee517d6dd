"""Independent Alexander polynomials computed from a pretzel diagram.

The diagram is the usual one: ``n`` vertical twist regions side by side,
neighbouring regions joined along the top and along the bottom, and the
first and last regions joined by the two outer arcs.  Inside region ``i``
the two strands cross ``|q_i|`` times.  Level ``j`` of a region is the pair
of edges just above crossing ``j``; the left and right edge at that level
are labelled ``("L", i, j)`` and ``("R", i, j)``.

Two matrix routes are offered: the full Wirtinger matrix (one row per
crossing) and a reduced system with one row per junction between adjacent
regions, obtained by composing each region's crossings into a 2x2 transfer
matrix.  Both feed a fraction-free determinant over the Laurent ring.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Optional

from .closedform import (
    LinkOrientation,
    PretzelKind,
    _as_spec,
    classify,
    even_first,
)
from .errors import DegenerateSystem, PreconditionViolation, UnsupportedLink
from .laurent import ONE, T, ZERO, LaurentPoly, UnitsClass

TOP_LEFT, TOP_RIGHT, BOTTOM_LEFT, BOTTOM_RIGHT = range(4)
_THROUGH = {TOP_LEFT: BOTTOM_RIGHT, BOTTOM_RIGHT: TOP_LEFT, TOP_RIGHT: BOTTOM_LEFT, BOTTOM_LEFT: TOP_RIGHT}
_XY = {TOP_LEFT: (-1, 1), TOP_RIGHT: (1, 1), BOTTOM_LEFT: (-1, -1), BOTTOM_RIGHT: (1, -1)}

# Chirality of a positive twist: the strand through top-right/bottom-left is
# the over strand.  With it the reduced co-directed n=4 system agrees with
# the reference matrix row by row.
_POSITIVE_OVER = TOP_RIGHT
_FIRST_DOWN_PORT = TOP_LEFT


@dataclass(frozen=True)
class Crossing:
    over: int  # arc passing over
    under_in: int  # arc ending here
    under_out: int  # arc starting here
    sign: int
    region: int
    level: int
    over_is_tr_bl: bool  # over strand runs top-right <-> bottom-left
    under_down: bool  # under strand runs from the top ports to the bottom ports


@dataclass
class CrossingDiagram:
    twists: tuple
    crossings: list
    n_arcs: int
    components: list  # arc ids per component, in traversal order
    regions: list = field(default_factory=list)  # crossing indices per region

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_components(self) -> int:
        return len(self.components)

    def dump(self) -> str:
        lines = [f"pretzel {self.twists}: {self.n_crossings} crossings, "
                 f"{self.n_arcs} arcs, {self.n_components} components"]
        for k, c in enumerate(self.crossings):
            lines.append(
                f"c{k} region={c.region} level={c.level} sign={c.sign:+d} "
                f"over=a{c.over} in=a{c.under_in} out=a{c.under_out}"
            )
        return "\n".join(lines)


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _over_ports(q):
    first = _POSITIVE_OVER if q > 0 else (TOP_LEFT if _POSITIVE_OVER == TOP_RIGHT else TOP_RIGHT)
    return (first, _THROUGH[first])


def _trace(twists):
    """Lay out edges of the template diagram and orient every component.

    Returns ``(cross_ids, edges, components)`` where ``cross_ids`` lists
    ``(region, level)`` per crossing, ``edges`` maps an edge id to its two
    ports, and each component is a list of ``(edge, tail_port, head_port)``.
    """
    n = len(twists)
    uf = _UnionFind()
    for i, q in enumerate(twists):
        for j in range(abs(q) + 1):
            uf.find(("L", i, j))
            uf.find(("R", i, j))
    for i in range(n):
        nxt = (i + 1) % n
        uf.union(("R", i, 0), ("L", nxt, 0))
        uf.union(("R", i, abs(twists[i])), ("L", nxt, abs(twists[nxt])))

    cross_ids = []
    ports_of = {}
    for i, q in enumerate(twists):
        for j in range(abs(q)):
            x = len(cross_ids)
            cross_ids.append((i, j))
            for pos, lab in ((TOP_LEFT, ("L", i, j)), (TOP_RIGHT, ("R", i, j)),
                             (BOTTOM_LEFT, ("L", i, j + 1)), (BOTTOM_RIGHT, ("R", i, j + 1))):
                ports_of.setdefault(uf.find(lab), []).append((x, pos))

    roots = sorted({uf.find(lab) for lab in uf.parent}, key=repr)
    edges = {}
    edge_at = {}
    for root in roots:
        ports = ports_of.get(root, [])
        if len(ports) != 2:
            raise PreconditionViolation(
                f"pretzel {tuple(twists)} has a crossingless component; no Wirtinger arcs"
            )
        e = len(edges)
        edges[e] = tuple(ports)
        for p in ports:
            edge_at[p] = e

    seen = set()
    components = []
    for start in range(len(edges)):
        if start in seen:
            continue
        comp = []
        e, tail, head = start, edges[start][0], edges[start][1]
        while True:
            seen.add(e)
            comp.append((e, tail, head))
            x, pos = head
            out = (x, _THROUGH[pos])
            e = edge_at[out]
            a, b = edges[e]
            tail, head = (a, b) if a == out else (b, a)
            if e == start and tail == comp[0][1]:
                break
        components.append(comp)
    return cross_ids, edges, components


def _reverse(comp):
    return [(e, h, t) for e, t, h in reversed(comp)]


def _sign(over_dir, under_dir) -> int:
    ox, oy = over_dir
    ux, uy = under_dir
    cross = ox * uy - oy * ux
    return 1 if cross > 0 else -1


def _direction(entry_port):
    (x0, y0), (x1, y1) = _XY[entry_port], _XY[_THROUGH[entry_port]]
    return (x1 - x0, y1 - y0)


def build_diagram(spec, orientation: Optional[LinkOrientation] = None,
                  rotate: bool = True) -> CrossingDiagram:
    """Oriented template diagram with Wirtinger arcs.

    With ``rotate`` the even parameter of a knot is moved to the first
    region by a cyclic rotation (an isotopy).
    """
    spec = _as_spec(spec)
    cls = classify(spec)
    if cls.kind is PretzelKind.UNSUPPORTED:
        raise UnsupportedLink(f"{spec} has more than one even parameter")
    if rotate:
        spec = even_first(spec)
    twists = spec.q
    if sum(abs(q) for q in twists) == 0:
        raise PreconditionViolation("diagram has no crossings")
    cross_ids, edges, components = _trace(twists)

    expected = 2 if cls.kind is PretzelKind.ODD_LINK else 1
    if len(components) != expected:
        raise AssertionError(f"{spec}: traced {len(components)} components, expected {expected}")

    if cls.kind is PretzelKind.ODD_LINK:
        if orientation is None:
            orientation = LinkOrientation.CODIRECTED
        want_co = orientation is LinkOrientation.CODIRECTED
        for flip in (False, True):
            comps = [components[0], _reverse(components[1]) if flip else components[1]]
            if _all_codirected(cross_ids, comps) == want_co:
                components = comps
                break
        else:
            raise AssertionError(f"{spec}: no orientation gives uniform strand directions")

    # Fix the global orientation: the strand through the top-left port of
    # the first crossing runs downward.  Reversing every component leaves
    # the link type unchanged but permutes the reduced matrix.
    first_heads = {head for comp in components for _, _, head in comp}
    if (0, _FIRST_DOWN_PORT) not in first_heads:
        components = [_reverse(c) for c in components]

    head_edge = {}
    tail_edge = {}
    for comp in components:
        for e, tail, head in comp:
            head_edge[head] = e
            tail_edge[tail] = e

    # arcs: merge edges continuing over each crossing
    uf = _UnionFind()
    for e in edges:
        uf.find(e)
    info = []
    for x, (i, j) in enumerate(cross_ids):
        over_ports = _over_ports(twists[i])
        under_ports = tuple(p for p in range(4) if p not in over_ports)
        o_in = next(p for p in over_ports if (x, p) in head_edge)
        u_in = next(p for p in under_ports if (x, p) in head_edge)
        uf.union(head_edge[(x, o_in)], tail_edge[(x, _THROUGH[o_in])])
        info.append((x, i, j, over_ports, o_in, u_in))

    arc_of = {}
    comp_arcs = []
    for comp in components:
        arcs = []
        for e, _, _ in comp:
            r = uf.find(e)
            if r not in arc_of:
                arc_of[r] = len(arc_of)
            if not arcs or arcs[-1] != arc_of[r]:
                arcs.append(arc_of[r])
        if len(arcs) > 1 and arcs[0] == arcs[-1]:
            arcs.pop()
        comp_arcs.append(arcs)

    crossings = []
    regions = [[] for _ in twists]
    for x, i, j, over_ports, o_in, u_in in info:
        crossings.append(Crossing(
            over=arc_of[uf.find(head_edge[(x, o_in)])],
            under_in=arc_of[uf.find(head_edge[(x, u_in)])],
            under_out=arc_of[uf.find(tail_edge[(x, _THROUGH[u_in])])],
            sign=_sign(_direction(o_in), _direction(u_in)),
            region=i,
            level=j,
            over_is_tr_bl=over_ports[0] == TOP_RIGHT,
            under_down=u_in in (TOP_LEFT, TOP_RIGHT),
        ))
        regions[i].append(x)
    return CrossingDiagram(twists, crossings, len(arc_of), comp_arcs, regions)


def _all_codirected(cross_ids, components):
    down = {}
    for comp in components:
        for _, _, head in comp:
            x, pos = head
            down.setdefault(x, []).append(pos in (TOP_LEFT, TOP_RIGHT))
    flags = {len(set(v)) == 1 for v in down.values()}
    if len(flags) != 1:
        return None
    return flags.pop()


# -- matrices -----------------------------------------------------------------


@dataclass
class AlexMatrix:
    entries: list  # list of rows of LaurentPoly
    row_labels: list
    col_labels: list

    @property
    def shape(self):
        return (len(self.entries), len(self.entries[0]) if self.entries else 0)

    def dump(self) -> str:
        lines = []
        for label, row in zip(self.row_labels, self.entries):
            cells = ", ".join(f"{c}: {v}" for c, v in zip(self.col_labels, row) if v)
            lines.append(f"{label}: {cells}")
        return "\n".join(lines)


def _unit(sign: int) -> LaurentPoly:
    return T if sign > 0 else T ** -1


def wirtinger_matrix(d: CrossingDiagram) -> AlexMatrix:
    """One relation per crossing: ``out - s*in - (1 - s)*over`` with ``s = t^sign``."""
    rows = []
    for c in d.crossings:
        s = _unit(c.sign)
        row = [ZERO] * d.n_arcs
        row[c.under_out] += ONE
        row[c.under_in] -= s
        row[c.over] -= ONE - s
        rows.append(row)
    return AlexMatrix(
        rows,
        [f"c{k}" for k in range(d.n_crossings)],
        [f"a{k}" for k in range(d.n_arcs)],
    )


def _mat_mul(a, b):
    return [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]


_IDENTITY = [[ONE, ZERO], [ZERO, ONE]]


def _mat_pow(m, k):
    result = _IDENTITY
    while k:
        if k & 1:
            result = _mat_mul(m, result)
        k >>= 1
        if k:
            m = _mat_mul(m, m)
    return result


def crossing_transfer(c: Crossing):
    """Matrix sending the (left, right) values above a crossing to those below."""
    s = _unit(c.sign)
    u = s if c.under_down else s ** -1
    if c.over_is_tr_bl:
        # right value passes over to the bottom-left; bottom-right is new
        return [[ZERO, ONE], [u, ONE - u]]
    return [[ONE - u, u], [ONE, ZERO]]


def region_transfer(d: CrossingDiagram, i: int):
    """Composite transfer of region ``i``.

    Consecutive crossings of a region repeat with period at most two, so
    the product is a power of the two-crossing block times a possible
    leftover crossing.
    """
    mats = [crossing_transfer(d.crossings[x]) for x in d.regions[i]]
    if not mats:
        return _IDENTITY
    if len(mats) == 1:
        return mats[0]
    block = _mat_mul(mats[1], mats[0])
    result = _mat_pow(block, len(mats) // 2)
    if len(mats) % 2:
        result = _mat_mul(mats[0], result)
    return result


def reduce_regions(d: CrossingDiagram) -> AlexMatrix:
    """``n x n`` system in the top boundary edges.

    Column ``i`` is the edge entering region ``i`` from the top left.  Row
    ``i`` equates the two expressions for the bottom edge shared by regions
    ``i - 1`` and ``i``.
    """
    n = len(d.twists)
    transfers = [region_transfer(d, i) for i in range(n)]
    rows = []
    for i in range(n):
        prev = (i - 1) % n
        row = [ZERO] * n
        # region prev: bottom-right = T[1][0]*x_prev + T[1][1]*x_i
        tp = transfers[prev]
        row[prev] += tp[1][0]
        row[i] += tp[1][1]
        # region i: bottom-left = T[0][0]*x_i + T[0][1]*x_{i+1}
        ti = transfers[i]
        row[i] -= ti[0][0]
        row[(i + 1) % n] -= ti[0][1]
        rows.append(row)
    return AlexMatrix(
        rows,
        [f"junction{(i - 1) % n + 1}-{i + 1}" for i in range(n)],
        [f"x{i + 1}" for i in range(n)],
    )


def reference_reduced_matrix(q) -> list:
    """The reference 4x4 reduced matrix for a co-directed ``P(q1,q2,q3,q4)``.

    Entries are divided exactly by ``1 + t``.
    """
    q1, q2, q3, q4 = q

    def m(e):
        return T ** e

    rows = [
        [m(1 - q4) - m(q1 + 1), m(q1 + 1) + T, ZERO, -m(1 - q4) - T],
        [m(q1) + ONE, m(-q2) - m(q1), -m(-q2) - ONE, ZERO],
        [ZERO, -m(1 - q2) - T, m(1 - q2) - m(q3 + 1), m(q3 + 1) + T],
        [-m(-q4) - ONE, ZERO, m(q3) + ONE, m(-q4) - m(q3)],
    ]
    return [[e.div_exact(ONE + T) for e in row] for row in rows]


def rows_equal_up_to_units(a, b) -> bool:
    """True iff each row of ``a`` is ``+-t^k`` times the same row of ``b``."""
    for ra, rb in zip(a, b):
        unit = None
        for x, y in zip(ra, rb):
            if x.is_zero() != y.is_zero():
                return False
            if x.is_zero():
                continue
            if len(x) != len(y):
                return False
            shift = min(x.doubled_terms) - min(y.doubled_terms)
            sign = 1 if x.doubled_terms[min(x.doubled_terms)] * y.doubled_terms[min(y.doubled_terms)] > 0 else -1
            if unit is None:
                unit = (shift, sign)
            elif unit != (shift, sign):
                return False
            if x != y._shift2(shift) * sign:
                return False
    return True


# -- determinants -----------------------------------------------------------------


def bareiss_det(rows) -> LaurentPoly:
    """Fraction-free determinant over the Laurent ring."""
    m = [list(r) for r in rows]
    size = len(m)
    if size == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(size - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, size) if not m[i][k].is_zero()), None)
            if swap is None:
                return ZERO
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, size):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, size):
                v = pivot * row_i[j]
                if not mik.is_zero() and not row_k[j].is_zero():
                    v = v - mik * row_k[j]
                row_i[j] = v.div_exact(prev) if not v.is_zero() else ZERO
            row_i[k] = ZERO
        prev = pivot
    det = m[size - 1][size - 1]
    return -det if sign < 0 else det


def minor(rows, drop_row: int, drop_col: int) -> LaurentPoly:
    sub = [[v for j, v in enumerate(r) if j != drop_col] for i, r in enumerate(rows) if i != drop_row]
    return bareiss_det(sub)


def alexander_from_matrix(m: AlexMatrix, allow_zero: bool = False) -> UnitsClass:
    """Determinant of the minor without the last row and last column.

    When that minor vanishes every other single-row/single-column deletion
    is tried.  If all vanish the polynomial is zero (a split link); this
    raises ``DegenerateSystem`` unless ``allow_zero`` is set.
    """
    rows, cols = m.shape
    if rows and cols > rows:
        # some component never passes under: it lifts off, so the link splits
        if allow_zero:
            return UnitsClass(ZERO)
        raise DegenerateSystem(f"{rows}x{cols} system: a component has no undercrossing")
    if rows != cols or rows == 0:
        raise DegenerateSystem(f"expected a nonempty square matrix, got {rows}x{cols}")
    det = minor(m.entries, rows - 1, cols - 1)
    if det.is_zero():
        for i, j in product(range(rows), range(cols)):
            det = minor(m.entries, i, j)
            if not det.is_zero():
                break
    if det.is_zero():
        if allow_zero:
            return UnitsClass(ZERO)
        raise DegenerateSystem("every first minor vanishes")
    return det.canonicalize()


def oracle_alexander(spec, orientation: Optional[LinkOrientation] = None,
                     reduced: bool = True, rotate: bool = True) -> UnitsClass:
    """Alexander polynomial of ``spec`` computed from its diagram."""
    d = build_diagram(spec, orientation, rotate=rotate)
    m = reduce_regions(d) if reduced else wirtinger_matrix(d)
    return alexander_from_matrix(m, allow_zero=True)


def subsetsum_oracle(q) -> UnitsClass:
    """Co-directed link polynomial as a signed sum over all subsets of regions."""
    q = tuple(q)
    if any(x % 2 == 0 for x in q) or len(q) % 2:
        raise PreconditionViolation("subsetsum_oracle needs an even number of odd parameters")
    n = len(q)
    terms = {}
    for mask in range(1 << n):
        size = bin(mask).count("1")
        weight = n // 2 - size
        if not weight:
            continue
        exp = sum(q[i] for i in range(n) if mask >> i & 1)
        terms[2 * exp] = terms.get(2 * exp, 0) + weight
    num = LaurentPoly.from_doubled(terms)
    return num.div_exact((ONE + T) ** (n - 1)).canonicalize()
