import random
from collections import Counter

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from dpcolor.errors import InputError, StructureError
from dpcolor.harness.gadgets import tetrad_gadget
from dpcolor.plane_graph import (CycleRef, Graph, PlaneGraph, add_path, adjacent_short_cycle_pairs,
                                 chords_of, cycle_graph, cycles_up_to, edge_key, from_drawing,
                                 identify, is_separating, signed_area)

from helpers import graph_from_nx, nx_graph, point_in_polygon, random_plane_graph


def complete(n):
    return Graph.from_edges(range(n), [(u, v) for u in range(n) for v in range(u + 1, n)])


def cube():
    outer = [(-2, -2), (2, -2), (2, 2), (-2, 2)]
    inner = [(-1, -1), (1, -1), (1, 1), (-1, 1)]
    edges = [(i, (i + 1) % 4) for i in range(4)] + [(4 + i, 4 + (i + 1) % 4) for i in range(4)]
    edges += [(i, i + 4) for i in range(4)]
    return from_drawing(outer + inner, edges)


def prism():
    pts = [(0, 4), (-4, -3), (4, -3), (0, 1), (-1, -1), (1, -1)]
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]
    return from_drawing(pts, edges)


def double_wheel():
    """Triangle a b c with hub h1 inside and hub h2 outside it."""
    pts = [(-4, 0), (4, 0), (0, 4), (0, 1.5), (0, 12)]  # a b c h1 h2
    edges = [(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (3, 2), (4, 0), (4, 1), (4, 2)]
    return from_drawing(pts, edges)


# --------------------------------------------------------------- faces


def test_triangle_has_two_faces_of_length_3():
    g = cycle_graph(3)
    assert sorted(f.length for f in g.faces) == [3, 3]


def test_c12_has_two_faces_of_length_12():
    g = cycle_graph(12)
    assert sorted(f.length for f in g.faces) == [12, 12]
    assert g.outer.walk == tuple(range(12))


def test_cube_faces_and_euler():
    g = cube()
    assert [f.length for f in g.faces] == [4] * 6
    assert g.vertex_count - g.edge_count + len(g.faces) == 2
    assert g.euler_characteristic() == 2


def test_asymmetric_rotation_names_the_dart():
    with pytest.raises(StructureError) as exc:
        PlaneGraph([[1, 2], [0], [1]])
    assert exc.value.dart in {(0, 1), (0, 2), (2, 1)}


def test_out_of_range_dart():
    with pytest.raises(StructureError) as exc:
        PlaneGraph([[5]])
    assert exc.value.dart == (0, 5)


def test_from_drawing_rejects_crossings():
    pts = [(0, 0), (2, 2), (0, 2), (2, 0)]
    with pytest.raises(StructureError):
        from_drawing(pts, [(0, 1), (2, 3)])


def test_with_outer_cycle_rejects_unknown_walk():
    with pytest.raises(InputError):
        cycle_graph(5).with_outer_cycle([0, 2, 1, 3, 4])


@given(st.integers(0, 10_000), st.integers(4, 25))
def test_faces_partition_darts_and_satisfy_euler(seed, n):
    g, pts = random_plane_graph(random.Random(seed), n)
    darts = Counter(d for f in g.faces for d in f.darts)
    assert all(m == 1 for m in darts.values())
    assert len(darts) == 2 * g.edge_count
    assert sum(f.length for f in g.faces) == 2 * g.edge_count
    assert g.euler_characteristic() == 2
    # internal faces share one orientation; the outer face has the other
    signs = {signed_area(f, pts) > 0 for f in g.internal_faces()}
    assert len(signs) <= 1
    if signs:
        assert (signed_area(g.outer, pts) > 0) not in signs


# --------------------------------------------------------------- cycles


def test_k4_triangles():
    cs = cycles_up_to(complete(4), 3)
    assert len(cs) == 4 and all(c.length == 3 for c in cs)


def test_c9_has_no_short_cycles():
    assert cycles_up_to(cycle_graph(9), 8) == []


def test_petersen_five_cycles():
    g = graph_from_nx(nx.petersen_graph())
    cs = cycles_up_to(g, 5)
    assert len(cs) == 12 and all(c.length == 5 for c in cs)


def test_cycle_ref_canonical_form():
    a = CycleRef.canonical([3, 1, 2])
    b = CycleRef.canonical([2, 1, 3])
    assert a == b and a.vertices[0] == 1


@given(st.integers(0, 10_000), st.integers(4, 14))
def test_cycles_match_networkx(seed, n):
    g, _ = random_plane_graph(random.Random(seed), n, drop=0.2)
    ours = {c.vertices for c in cycles_up_to(g, 6)}
    theirs = {CycleRef.canonical(c).vertices
              for c in nx.simple_cycles(nx_graph(g), length_bound=6) if len(c) >= 3}
    assert ours == theirs


# ----------------------------------------------------- adjacent cycles


def test_k4_minus_edge_pairs():
    g = Graph.from_edges(range(4), [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
    # two triangles and the 4-cycle around them, every two sharing an edge
    pairs = adjacent_short_cycle_pairs(g, 8)
    assert len(pairs) == 3
    triangles = [p for p in pairs if p[0].length == 3 and p[1].length == 3]
    assert len(triangles) == 1


def test_k4_pairs():
    g = complete(4)
    pairs = adjacent_short_cycle_pairs(g, 8)
    assert len(pairs) == 21
    tri = [p for p in pairs if p[0].length == 3 and p[1].length == 3]
    assert len(tri) == 6


def test_c9_has_no_pairs():
    assert adjacent_short_cycle_pairs(cycle_graph(9), 8) == []


def test_vertex_convention_is_weaker():
    # two triangles sharing only a vertex
    g = Graph.from_edges(range(5), [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    assert adjacent_short_cycle_pairs(g, 8, "edge") == []
    assert len(adjacent_short_cycle_pairs(g, 8, "vertex")) == 1
    with pytest.raises(InputError):
        adjacent_short_cycle_pairs(g, 8, "face")


@given(st.integers(0, 10_000), st.integers(4, 12))
def test_adjacent_pairs_brute_force(seed, n):
    g, _ = random_plane_graph(random.Random(seed), n, drop=0.4)
    cs = [CycleRef.canonical(c) for c in nx.simple_cycles(nx_graph(g), length_bound=8)
          if len(c) >= 3]
    expected = {frozenset((a.vertices, b.vertices)) for i, a in enumerate(cs)
                for b in cs[i + 1:] if a.edges() & b.edges()}
    got = {frozenset((a.vertices, b.vertices)) for a, b in adjacent_short_cycle_pairs(g, 8)}
    assert got == expected


# ---------------------------------------------------------- separation


def test_prism_inner_triangle_not_separating():
    sep = is_separating(prism(), [3, 4, 5])
    assert not sep and sep.inside == frozenset()


def test_rim_triangle_of_double_wheel_separates():
    sep = is_separating(double_wheel(), [0, 1, 2])
    assert sep
    assert sep.inside == {3} and sep.outside == {4}


def test_is_separating_rejects_non_cycle():
    with pytest.raises(InputError):
        is_separating(prism(), [0, 1, 4])


@given(st.integers(0, 10_000), st.integers(5, 16))
def test_separation_matches_geometry(seed, n):
    g, pts = random_plane_graph(random.Random(seed), n, drop=0.2)
    for c in cycles_up_to(g, 6):
        sep = is_separating(g, c)
        poly = [pts[v] for v in c.vertices]
        inside = {v for v in g.vertices if v not in c.vertices and point_in_polygon(pts[v], poly)}
        assert sep.inside == inside
        assert sep.outside == set(g.vertices) - set(c.vertices) - inside


# --------------------------------------------------------------- chords


def test_chords():
    assert chords_of(cycle_graph(5), [0, 1, 2, 3, 4]) == []
    c4 = Graph.from_edges(range(4), [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    assert chords_of(c4, [0, 1, 2, 3]) == [(0, 2)]
    wheel = Graph.from_edges(range(7), [(i, i % 6 + 1) for i in range(1, 7)] +
                             [(0, i) for i in range(1, 7)])
    assert chords_of(wheel, [1, 2, 3, 4, 5, 6]) == []


# ------------------------------------------------------- identification


def test_identify_path_ends():
    g = Graph.from_edges(range(3), [(0, 1), (1, 2)])
    idn = identify(g, 0, 2)
    assert idn.graph.vertices == (0, 1)
    assert idn.graph.edge_count == 1
    assert idn.collapsed == (1,)
    assert idn.new_short_cycles == ()
    assert idn.lift({0: 2, 1: 1}) == {0: 2, 1: 1, 2: 2}


def test_identify_far_vertices_on_long_cycle():
    g = cycle_graph(20)
    idn = identify(g, 0, 10)
    lengths = sorted(c.length for c in cycles_up_to(idn.graph, 12))
    assert lengths == [10, 10]
    assert idn.new_short_cycles == ()


def test_identify_close_vertices_reports_new_cycle():
    idn = identify(cycle_graph(20), 0, 5)
    assert [c.length for c in idn.new_short_cycles] == [5]


def test_identify_refuses_adjacent():
    with pytest.raises(InputError):
        identify(cycle_graph(5), 0, 1)


def test_identify_in_tetrad_gadget_is_clean():
    gd = tetrad_gadget()
    g = gd.graph
    h = g.without([gd[f"v{i}"] for i in range(1, 5)])
    assert h.distances_from(gd["y"])[gd["v1p"]] >= 9
    idn = identify(h, gd["v1p"], gd["y"])
    assert idn.new_short_cycles == () and idn.collapsed == ()


# ------------------------------------------------------------- add_path


def test_add_path_splits_face():
    g = cycle_graph(10)
    inner = next(f.id for f in g.internal_faces())
    h = add_path(g, inner, 0, 5, 2)
    assert h.vertex_count == 12
    assert sorted(f.length for f in h.internal_faces()) == [8, 8]
    assert h.outer.walk == g.outer.walk
    assert h.has_edge(0, 10) and h.has_edge(10, 11) and h.has_edge(11, 5)


def test_add_path_rejects_vertices_off_face():
    g = cycle_graph(6)
    inner = next(f.id for f in g.internal_faces())
    g = add_path(g, inner, 0, 3, 0)
    small = next(f for f in g.internal_faces() if 1 in f.vertex_set)
    with pytest.raises(InputError):
        add_path(g, small.id, 1, 4, 1)


def test_edge_key_orders_endpoints():
    assert edge_key(5, 2) == (2, 5)
