from fractions import Fraction as F
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entpoly.catalogs import catalog_3q, catalog_4q, four_qubit_base, marginal_polytope_nqubits
from entpoly.errors import DimensionMismatch, Infeasible, TooLarge
from entpoly.polytope import (HalfspaceSystem, Polytope, contains, l1_distance, lmax_to_lmin,
                              lmin_to_lmax, max_linear_entropy, min_norm_point, simplex)
from entpoly.state import local_spectra, random_state

from oracles import inside_hrep, zoom_grid_min

H = F(1, 2)

# Five hand-built full-dimensional polytopes, each with a query origin off the polytope.
HAND_BUILT = {
    "triangle": ([(0, 0), (2, 0), (1, 2)], (3.0, 3.0)),
    "pentagon": ([(0, 0), (2, 0), (3, 1), (1, 3), (-1, 1)], (-2.0, -1.5)),
    "square": ([(1, 1), (2, 1), (2, 2), (1, 2)], (0.3, 1.6)),
    "tetrahedron": ([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)], (1.0, 1.0, 1.0)),
    "w_pyramid": ([(1, 1, 1), (1, H, H), (H, 1, H), (H, H, 1)], (0.5, 0.5, 0.5)),
}


def _box(verts):
    v = np.array(verts, float)
    return v.min(axis=0), v.max(axis=0)


@pytest.mark.parametrize("name", list(HAND_BUILT))
def test_min_norm_point_matches_grid(name):
    verts, origin = HAND_BUILT[name]
    poly = Polytope.from_vertices(verts)
    hs = poly.halfspaces()
    o = np.asarray(origin)
    x, dist = min_norm_point(poly, origin=o)
    lo, hi = _box(verts)
    gx, gv = zoom_grid_min(lambda X: np.linalg.norm(X - o, axis=1), inside_hrep(hs.A, hs.b), lo, hi)
    assert abs(dist - gv) < 1e-6
    np.testing.assert_allclose(x, gx, atol=1e-6)
    # Wolfe optimality: no vertex direction improves
    V = np.array(verts, float)
    assert np.all((V - x) @ (x - o) >= -1e-9)
    assert poly.contains(x)


@pytest.mark.parametrize("name", list(HAND_BUILT))
def test_l1_distance_matches_grid(name, rng):
    verts, _ = HAND_BUILT[name]
    poly = Polytope.from_vertices(verts)
    hs = poly.halfspaces()
    lo, hi = _box(verts)
    for _ in range(4):
        p = lo - 1 + rng.random(lo.size) * (hi - lo + 2)
        if poly.contains(p):
            continue
        gx, gv = zoom_grid_min(lambda X: np.abs(X - p).sum(axis=1), inside_hrep(hs.A, hs.b), lo, hi)
        assert abs(l1_distance(poly, p) - gv) < 1e-5
        assert abs(l1_distance(hs, p) - gv) < 1e-5


@pytest.mark.parametrize("name", list(HAND_BUILT))
def test_l1_distance_zero_exactly_inside(name):
    verts, _ = HAND_BUILT[name]
    poly = Polytope.from_vertices(verts)
    centroid = tuple(sum(F(v[i]) for v in verts) / len(verts) for i in range(len(verts[0])))
    for p in list(map(tuple, verts)) + [centroid]:
        assert l1_distance(poly, p) == 0.0
        assert l1_distance(poly.halfspaces(), p) == 0.0


def test_facet_enumeration_examples():
    p4 = four_qubit_base()
    assert len(p4[6].vertices) == 12 and len(p4[6].facets) == 12
    assert len(p4[4].vertices) == 7 and len(p4[4].facets) == 9
    pt = Polytope.from_vertices([(F(1, 3), F(1, 2))])
    assert pt.dim == 0 and pt.facets == ()


def test_non_extreme_points_dropped():
    poly = Polytope.from_vertices([(0, 0), (2, 0), (0, 2), (2, 2), (1, 1), (1, 0)])
    assert poly.vertex_set() == {(0, 0), (2, 0), (0, 2), (2, 2)}
    assert len(poly.facets) == 4


def test_lower_dimensional_hull():
    seg = Polytope.from_vertices([(1, H, H), (1, 1, 1)])
    assert seg.dim == 1 and len(seg.facets) == 2 and len(seg.equalities) == 2
    assert seg.contains((1, F(3, 4), F(3, 4)))
    assert not seg.contains((1, F(3, 4), F(1, 2)))
    x, _ = min_norm_point(seg)
    np.testing.assert_allclose(x, (1, 0.5, 0.5), atol=1e-9)


def test_too_large():
    pts = [tuple(F(int(b)) for b in f"{i:07b}") for i in range(17)]
    with pytest.raises(TooLarge):
        Polytope.from_vertices(pts)


def test_contains_examples():
    w = catalog_3q().get("W")
    assert w.contains((F(2, 3),) * 3)
    assert not w.contains((0.6, 0.6, 0.6))
    for poly in catalog_4q():
        for v in poly.vertices:
            assert poly.contains(v)
    with pytest.raises(DimensionMismatch):
        w.contains((1, 1))


def test_l1_examples():
    ghz = catalog_3q().get("GHZ")
    assert l1_distance(ghz, (0.4, 0.5, 0.5)) == pytest.approx(0.1, abs=1e-12)
    single = Polytope.from_vertices([(H, H, H)])
    assert l1_distance(single, (1, 1, 1)) == pytest.approx(1.5, abs=1e-12)
    assert l1_distance(ghz, (0.7, 0.8, 0.9)) == 0.0


def test_min_norm_examples():
    x, d = min_norm_point(catalog_3q().get("GHZ"))
    assert d < 1e-12
    x, _ = min_norm_point(four_qubit_base()[4])
    np.testing.assert_allclose(x, 0.75, atol=1e-9)


def test_max_linear_entropy_monotone_under_containment():
    for cat in (catalog_3q(), catalog_4q(expand_permutations=False)):
        for small, big in cat.containment():
            assert max_linear_entropy(cat.get(small)) <= max_linear_entropy(cat.get(big)) + 1e-12


def test_hull_and_facets_agree_on_grid_points(rng):
    """Exact rational sampling: V-rep membership by LP vs H-rep membership by facets."""
    cat = catalog_3q()
    for poly in cat:
        for _ in range(1000):
            p = tuple(F(int(k), 8) for k in rng.integers(3, 9, size=3))
            in_h = poly.contains(p)
            in_v = l1_distance(poly, tuple(float(v) for v in p)) < 1e-12
            assert in_h == in_v


def test_catalog_4q_roundtrip(rng):
    for poly in catalog_4q(expand_permutations=False):
        for _ in range(60):
            p = tuple(F(int(k), 8) for k in rng.integers(4, 9, size=4))
            assert poly.contains(p) == (l1_distance(poly, tuple(float(v) for v in p)) < 1e-12)


def test_simplex_basic_and_infeasible():
    # min -x - y s.t. x + y + s = 1
    x, v = simplex(np.array([-1.0, -1.0, 0.0]), np.array([[1.0, 1.0, 1.0]]), np.array([1.0]))
    assert v == pytest.approx(-1.0)
    with pytest.raises(Infeasible):
        simplex(np.zeros(2), np.array([[1.0, 1.0]]), np.array([-1.0]))


def test_halfspace_system_empty_rejected():
    with pytest.raises(Infeasible):
        HalfspaceSystem(((F(1),), (F(-1),)), (F(0), F(-1)))


def test_coordinate_converters():
    assert lmax_to_lmin((1, F(3, 4))) == (0, F(1, 4))
    assert lmin_to_lmax(lmax_to_lmin((0.7, 0.6))) == pytest.approx((0.7, 0.6))


def test_marginal_polytope_examples():
    m3 = marginal_polytope_nqubits(3)
    assert not m3.contains((H, 0, 0))
    assert m3.contains((F(1, 4),) * 3)
    assert len(marginal_polytope_nqubits(4).A) == 12


@pytest.mark.parametrize("n", [3, 4, 5])
def test_random_states_in_marginal_polytope(rng, n):
    m = marginal_polytope_nqubits(n)
    for _ in range(300):
        assert m.contains(local_spectra(random_state([2] * n, rng)).lmin)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 8), st.integers(0, 8)), min_size=1, max_size=7))
def test_vertices_tight_and_inside(pts):
    poly = Polytope.from_vertices([(F(a, 4), F(b, 4)) for a, b in pts])
    for v in poly.vertices:
        assert poly.contains(v)
    for a, b in poly.facets:
        tight = [v for v in poly.vertices if a[0] * v[0] + a[1] * v[1] == b]
        assert len(tight) >= max(poly.dim, 1)
    # every input point is inside its own hull
    for a, b in pts:
        assert poly.contains((F(a, 4), F(b, 4)))
