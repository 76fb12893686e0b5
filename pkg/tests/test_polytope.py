import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from addact.catalog import named_fixture
from addact.errors import AddactError
from addact.exact_core import dot, solve
from addact.polytope import (
    LatticePolytope,
    facets,
    inscribed_in_rectangle,
    lattice_points,
    normal_fan,
    very_ample_bounded,
)
from addact.toric import demazure_roots, has_additive_action, validate_fan

POLYS = ["segment:1", "segment:3", "square", "box:2,3", "simplex:2", "simplex:3", "triangle-21",
         "trapezoid:1", "trapezoid:2", "hexagon"]


def hull2(points):
    """Monotone chain; strictly convex vertices only."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def inside2(hull, x):
    n = len(hull)
    for i in range(n):
        a, b = hull[i], hull[(i + 1) % n]
        if (b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0]) < 0:
            return False
    return True


def test_facet_examples():
    t = named_fixture("triangle-21")
    got = {(f.normal, f.offset) for f in facets(t)}
    assert got == {((-1, 0), 0), ((0, -1), 0), ((1, 2), 2)}
    assert len(facets(named_fixture("square"))) == 4
    assert {(f.normal, f.offset) for f in facets(named_fixture("segment:3"))} == {((-1,), 0), ((1,), 3)}


@pytest.mark.parametrize("name", POLYS)
def test_facets_reproduce_vertices(name):
    p = named_fixture(name)
    fs = facets(p)
    found = set()
    for combo in itertools.combinations(fs, p.rank):
        x = solve([list(f.normal) for f in combo], [f.offset for f in combo])
        if x is None or any(c.denominator != 1 for c in x):
            continue
        x = tuple(int(c) for c in x)
        if all(f.contains(x) for f in fs):
            found.add(x)
    assert found == {tuple(v) for v in p.vertices}
    for f in fs:
        assert sum(1 for v in p.vertices if f.on(v)) >= p.rank


@pytest.mark.parametrize("name", [n for n in POLYS if named_fixture(n).rank == 2])
def test_lattice_points_against_hull_scan(name):
    p = named_fixture(name)
    h = hull2([tuple(v) for v in p.vertices])
    box = list(itertools.product(range(-1, 5), repeat=2))
    assert lattice_points(p) == sorted(x for x in box if inside2(h, x))


def test_lattice_point_examples():
    assert lattice_points(named_fixture("segment:3")) == [(0,), (1,), (2,), (3,)]
    assert lattice_points(named_fixture("triangle-21")) == [(0, 0), (0, 1), (1, 0), (2, 0)]


def test_normal_fans():
    assert sorted(normal_fan(named_fixture("simplex:2")).rays) == sorted([(1, 0), (0, 1), (-1, -1)])
    sq = normal_fan(named_fixture("square"))
    assert sorted(sq.rays) == sorted([(1, 0), (0, 1), (-1, 0), (0, -1)])
    for name in POLYS:
        assert validate_fan(normal_fan(named_fixture(name))).is_complete


@pytest.mark.parametrize("name", POLYS)
def test_inscribed_agrees_with_additive_action(name):
    p = named_fixture(name)
    assert (inscribed_in_rectangle(p) is not None) == has_additive_action(normal_fan(p))


def test_inscribed_witnesses():
    assert inscribed_in_rectangle(named_fixture("segment:3")) == (0,)
    assert inscribed_in_rectangle(named_fixture("triangle-21")) == (0, 0)
    assert inscribed_in_rectangle(named_fixture("hexagon")) is None


def test_rejects_bad_polytopes():
    with pytest.raises(AddactError) as exc:
        LatticePolytope(2, [(0, 0), (1, 1), (2, 2)])
    assert exc.value.code == "NOT_FULL_DIMENSIONAL"
    with pytest.raises(AddactError) as exc:
        LatticePolytope(2, [(0, 0), (2, 0), (0, 2), (1, 0)])
    assert exc.value.code == "MALFORMED_POLYTOPE"


def _unimodular(rng, n):
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(4):
        i, j = rng.sample(range(n), 2)
        k = rng.choice([-2, -1, 1, 2])
        m[i] = [a + k * b for a, b in zip(m[i], m[j])]
    if rng.random() < 0.5:
        m[0] = [-a for a in m[0]]
    return m


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6))
def test_inscribed_status_is_lattice_invariant(seed):
    rng = random.Random(seed)
    name = rng.choice([n for n in POLYS if named_fixture(n).rank >= 2])
    p = named_fixture(name)
    n = p.rank
    g = _unimodular(rng, n)
    shift = [rng.randint(-3, 3) for _ in range(n)]
    q = LatticePolytope(n, [tuple(dot(row, v) + s for row, s in zip(g, shift)) for v in p.vertices])
    assert (inscribed_in_rectangle(p) is None) == (inscribed_in_rectangle(q) is None)
    assert len(demazure_roots(normal_fan(p))) == len(demazure_roots(normal_fan(q)))
    # a facet normal u of q pulls back to g^T u on p
    fp, fq = normal_fan(p), normal_fan(q)
    mapped = {tuple(sum(g[j][i] * r[j] for j in range(n)) for i in range(n)) for r in fq.rays}
    assert mapped == {tuple(r) for r in fp.rays}


@settings(max_examples=40)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=3, max_size=7))
def test_random_polygons_obey_the_criterion(points):
    verts = hull2(points)
    if len(verts) < 3:
        return
    p = LatticePolytope(2, verts)
    assert (inscribed_in_rectangle(p) is not None) == has_additive_action(normal_fan(p))


def test_very_ample():
    for name in POLYS:
        p = named_fixture(name)
        if p.rank <= 2:
            assert very_ample_bounded(p).status == "verified"
    assert very_ample_bounded(named_fixture("simplex:3"), dilation=2).reason == "dilation"
    res = very_ample_bounded(named_fixture("simplex:3"), search_bound=3)
    assert res.status in {"verified", "inconclusive"}
    # Reeve-type tetrahedron: the vertex semigroup at the origin is not saturated
    reeve = LatticePolytope(3, [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 2)])
    r = very_ample_bounded(reeve, search_bound=3)
    assert r.status == "dilate_hint" and r.k == 2
    assert Fraction(r.k) == reeve.rank - 1
