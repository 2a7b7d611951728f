"""Builders and brute-force oracles shared by the test modules.

The oracles here are deliberately naive and independent of the library's
search code: plain enumeration over ``itertools.product``.
"""

from __future__ import annotations

import itertools
import random

import networkx as nx
import numpy as np
from scipy.spatial import Delaunay

from dpcolor.correspondence import CorrAssignment
from dpcolor.plane_graph import Graph, edge_key, from_drawing


def random_points(rng: random.Random, n: int) -> list[tuple[float, float]]:
    return [(rng.uniform(0, 100), rng.uniform(0, 100)) for _ in range(n)]


def delaunay_edges(points) -> set[tuple[int, int]]:
    tri = Delaunay(np.asarray(points))
    edges = set()
    for a, b, c in tri.simplices:
        for u, v in ((a, b), (b, c), (c, a)):
            edges.add(edge_key(int(u), int(v)))
    return edges


def random_plane_graph(rng: random.Random, n: int, drop: float = 0.3):
    """A connected straight-line plane graph: a Delaunay triangulation with
    random edges removed while the graph stays connected."""
    pts = random_points(rng, n)
    edges = sorted(delaunay_edges(pts))
    h = nx.Graph(edges)
    rng.shuffle(edges)
    for e in edges:
        if rng.random() < drop:
            h.remove_edge(*e)
            if not nx.is_connected(h):
                h.add_edge(*e)
    return from_drawing(pts, list(h.edges())), pts


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(range(n), edges)


def random_matching(rng: random.Random, k: int, size: int | None = None):
    size = rng.randint(0, k) if size is None else size
    left = rng.sample(range(1, k + 1), size)
    right = rng.sample(range(1, k + 1), size)
    return list(zip(left, right))


def random_assignment(g: Graph, k: int, rng: random.Random, full_edges=(),
                      straight_edges=()) -> CorrAssignment:
    full_edges = {edge_key(*e) for e in full_edges}
    straight_edges = {edge_key(*e) for e in straight_edges}
    out = {}
    for e in g.edges():
        if e in straight_edges:
            out[e] = [(c, c) for c in range(1, k + 1)]
        elif e in full_edges:
            out[e] = random_matching(rng, k, k)
        else:
            out[e] = random_matching(rng, k)
    return CorrAssignment(k, out)


def naive_colorings(g: Graph, c: CorrAssignment):
    """Every C-colouring, by enumerating all ``k^n`` colour vectors."""
    verts = g.vertices
    for cols in itertools.product(range(1, c.k + 1), repeat=len(verts)):
        phi = dict(zip(verts, cols))
        if all((phi[u], phi[v]) not in c.matching(u, v) for u, v in g.edges()):
            yield phi


def naive_colorable(g: Graph, c: CorrAssignment) -> bool:
    return next(naive_colorings(g, c), None) is not None


def naive_consistent(g: Graph, c: CorrAssignment, max_len: int) -> bool:
    """Follow matched colour chains along every closed walk up to ``max_len``."""
    for start in g.vertices:
        stack = [((start,), col, col) for col in range(1, c.k + 1)]
        while stack:
            walk, first, cur = stack.pop()
            if len(walk) > 1 and walk[-1] == start and cur != first:
                return False
            if len(walk) - 1 >= max_len:
                continue
            for w in g.neighbors(walk[-1]):
                nxt = c.partner(walk[-1], w, cur)
                if nxt is not None:
                    stack.append((walk + (w,), first, nxt))
    return True


def nx_graph(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges())
    return h


def graph_from_nx(h: nx.Graph) -> Graph:
    mapping = {v: i for i, v in enumerate(sorted(h.nodes))}
    return Graph.from_edges(range(len(mapping)), [(mapping[u], mapping[v]) for u, v in h.edges])


def point_in_polygon(p, poly) -> bool:
    """Even-odd ray casting."""
    x, y = p
    inside = False
    for i in range(len(poly)):
        (x1, y1), (x2, y2) = poly[i], poly[(i + 1) % len(poly)]
        if (y1 > y) != (y2 > y):
            t = (y - y1) / (y2 - y1)
            if x < x1 + t * (x2 - x1):
                inside = not inside
    return inside
