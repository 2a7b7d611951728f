"""Combinatorial plane graphs given by rotation systems.

A :class:`PlaneGraph` stores, for every vertex ``0..n-1``, the clockwise
cyclic order of its neighbours.  Faces are never stored: they are traced
from the rotation on first access.  The face containing the dart ``(u, v)``
is continued by the dart ``(v, w)`` where ``w`` is the clockwise successor
of ``u`` around ``v``.

The outer face is pinned by one of its darts, so local edits that do not
touch the outer face keep its identity.

Abstract graphs (:class:`Graph`) carry adjacency only; they are what vertex
identification produces and what the colouring search consumes.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import InputError, StructureError

Edge = tuple[int, int]
Dart = tuple[int, int]

MAX_CYCLE_LENGTH = 12


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph on integer vertex labels.

    Labels need not be contiguous; graphs derived by deleting or merging
    vertices keep the labels of the graph they came from.
    """

    def __init__(self, adjacency: dict[int, Iterable[int]]):
        adj = {int(v): frozenset(int(w) for w in ws) for v, ws in adjacency.items()}
        for v, ws in adj.items():
            if v in ws:
                raise StructureError(f"loop at vertex {v}", dart=(v, v))
            for w in ws:
                if w not in adj or v not in adj[w]:
                    raise StructureError(
                        f"edge {v}-{w} is not symmetric", dart=(v, w))
        self._adj = adj
        self._vertices = tuple(sorted(adj))

    @classmethod
    def from_edges(cls, vertices: Iterable[int], edges: Iterable[Edge]) -> "Graph":
        adj: dict[int, set[int]] = {int(v): set() for v in vertices}
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        return cls(adj)

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def vertex_count(self) -> int:
        return len(self._vertices)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    @cached_property
    def edge_list(self) -> tuple[Edge, ...]:
        return tuple(sorted(
            (u, v) for u in self._vertices for v in self._adj[u] if u < v))

    def edges(self) -> tuple[Edge, ...]:
        return self.edge_list

    @property
    def edge_count(self) -> int:
        return len(self.edge_list)

    def without(self, removed: Iterable[int]) -> "Graph":
        gone = set(removed)
        return Graph({v: self._adj[v] - gone for v in self._vertices if v not in gone})

    def is_connected(self) -> bool:
        if not self._vertices:
            return True
        seen = {self._vertices[0]}
        todo = [self._vertices[0]]
        while todo:
            v = todo.pop()
            for w in self._adj[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self._vertices)

    def distances_from(self, source: int, limit: int | None = None) -> dict[int, int]:
        dist = {source: 0}
        queue = deque([source])
        while queue:
            v = queue.popleft()
            if limit is not None and dist[v] >= limit:
                continue
            for w in self._adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        return dist

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.vertex_count}, m={self.edge_count})"


@dataclass(frozen=True)
class FaceRecord:
    id: int
    darts: tuple[Dart, ...]
    is_outer: bool

    @property
    def length(self) -> int:
        return len(self.darts)

    @property
    def walk(self) -> tuple[int, ...]:
        """Boundary vertices in tracing order (repeats possible)."""
        return tuple(u for u, _ in self.darts)

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.walk)

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(edge_key(u, v) for u, v in self.darts)


@dataclass(frozen=True)
class CycleRef:
    """A cycle ``v_1 .. v_m`` stored in canonical form.

    The smallest label comes first and the direction is chosen so that the
    second vertex is smaller than the last one.
    """

    vertices: tuple[int, ...]

    @classmethod
    def canonical(cls, seq: Sequence[int]) -> "CycleRef":
        seq = list(seq)
        if len(seq) >= 2 and seq[0] == seq[-1]:
            seq = seq[:-1]
        i = seq.index(min(seq))
        rot = seq[i:] + seq[:i]
        if len(rot) > 2 and rot[1] > rot[-1]:
            rot = [rot[0]] + rot[:0:-1]
        return cls(tuple(rot))

    @property
    def length(self) -> int:
        return len(self.vertices)

    def edges(self) -> frozenset[Edge]:
        vs = self.vertices
        return frozenset(edge_key(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    def validate(self, g: Graph) -> None:
        vs = self.vertices
        if len(vs) < 3 or len(set(vs)) != len(vs):
            raise InputError(f"{vs} is not a cycle: needs >= 3 distinct vertices")
        for i, v in enumerate(vs):
            w = vs[(i + 1) % len(vs)]
            if not g.has_edge(v, w):
                raise InputError(f"{vs} is not a cycle: {v}-{w} is not an edge")


class PlaneGraph(Graph):
    """Rotation-system embedding of a simple graph with a designated outer face."""

    def __init__(self, rotation: Sequence[Sequence[int]], outer_dart: Dart | None = None):
        rot = tuple(tuple(int(w) for w in ws) for ws in rotation)
        n = len(rot)
        for v, ws in enumerate(rot):
            if len(set(ws)) != len(ws):
                raise StructureError(f"vertex {v} lists a neighbour twice", dart=(v, ws[0]))
            for w in ws:
                if w == v:
                    raise StructureError(f"loop at vertex {v}", dart=(v, v))
                if not 0 <= w < n:
                    raise StructureError(f"dart {v}->{w} leaves the vertex range", dart=(v, w))
                if v not in rot[w]:
                    raise StructureError(
                        f"dart {v}->{w} has no reverse dart {w}->{v}", dart=(v, w))
        super().__init__({v: ws for v, ws in enumerate(rot)})
        self.rotation = rot
        self._pos = tuple({w: i for i, w in enumerate(ws)} for ws in rot)
        if outer_dart is None:
            outer_dart = next(((v, ws[0]) for v, ws in enumerate(rot) if ws), None)
        elif outer_dart[1] not in self._pos[outer_dart[0]]:
            raise StructureError(f"outer dart {outer_dart} is not a dart", dart=outer_dart)
        self.outer_dart = outer_dart

    # ------------------------------------------------------------------ faces

    def next_dart(self, dart: Dart) -> Dart:
        u, v = dart
        ws = self.rotation[v]
        return (v, ws[(self._pos[v][u] + 1) % len(ws)])

    @cached_property
    def faces(self) -> tuple[FaceRecord, ...]:
        return tuple(trace_faces(self))

    @cached_property
    def dart_face(self) -> dict[Dart, int]:
        return {d: f.id for f in self.faces for d in f.darts}

    @property
    def outer_face(self) -> int | None:
        if self.outer_dart is None:
            return None
        return self.dart_face[self.outer_dart]

    @property
    def outer(self) -> FaceRecord:
        return self.faces[self.outer_face]

    @cached_property
    def outer_vertices(self) -> frozenset[int]:
        return self.outer.vertex_set if self.outer_dart is not None else frozenset()

    @cached_property
    def vertex_faces(self) -> tuple[tuple[int, ...], ...]:
        """Faces around each vertex in rotation order (one per corner)."""
        df = self.dart_face
        return tuple(tuple(df[(v, w)] for w in ws) for v, ws in enumerate(self.rotation))

    def face_of(self, u: int, v: int) -> FaceRecord:
        return self.faces[self.dart_face[(u, v)]]

    def internal_faces(self) -> list[FaceRecord]:
        return [f for f in self.faces if not f.is_outer]

    def euler_characteristic(self) -> int:
        return self.vertex_count - self.edge_count + len(self.faces)

    def with_outer_cycle(self, cycle: Sequence[int]) -> "PlaneGraph":
        """Re-designate the outer face as the face whose walk is ``cycle``.

        The cyclic order must match the tracing direction; rotations of the
        sequence are accepted, reversals are not.
        """
        want = list(cycle)
        m = len(want)
        for f in self.faces:
            walk = list(f.walk)
            if len(walk) != m:
                continue
            for s in range(m):
                if walk[s:] + walk[:s] == want:
                    return PlaneGraph(self.rotation, f.darts[0])
        raise InputError(f"no face has boundary walk {want}")

    def __repr__(self) -> str:
        return (f"PlaneGraph(n={self.vertex_count}, m={self.edge_count}, "
                f"outer={self.outer_face})")


def trace_faces(g: PlaneGraph) -> list[FaceRecord]:
    """Trace every face of ``g``; each dart lies on exactly one face walk."""
    seen: set[Dart] = set()
    faces: list[FaceRecord] = []
    outer = g.outer_dart
    for v, ws in enumerate(g.rotation):
        for w in ws:
            start = (v, w)
            if start in seen:
                continue
            darts = []
            d = start
            while d not in seen:
                seen.add(d)
                darts.append(d)
                d = g.next_dart(d)
            if d != start:
                raise StructureError("face walk does not close", dart=d)
            faces.append(FaceRecord(len(faces), tuple(darts), outer in darts))
    return faces


# ------------------------------------------------------------------ cycles


def iter_cycles(g: Graph, max_len: int) -> Iterator[CycleRef]:
    """Yield every simple cycle of length <= ``max_len`` exactly once.

    DFS from each start vertex ``s`` visits only labels greater than ``s``;
    a cycle is emitted in the direction whose second vertex is the smaller
    of the two neighbours of ``s``.
    """
    for s in g.vertices:
        path = [s]
        on_path = {s}
        stack = [iter(sorted(w for w in g.neighbors(s) if w > s))]
        while stack:
            w = next(stack[-1], None)
            if w is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            path.append(w)
            on_path.add(w)
            if len(path) >= 3 and s in g.neighbors(w) and path[1] < w:
                yield CycleRef(tuple(path))
            if len(path) < max_len:
                stack.append(iter(sorted(
                    x for x in g.neighbors(w) if x > s and x not in on_path)))
            else:
                path.pop()
                on_path.discard(w)


def cycles_up_to(g: Graph, max_len: int) -> list[CycleRef]:
    if max_len < 3:
        raise InputError("max_len must be at least 3")
    if max_len > MAX_CYCLE_LENGTH:
        raise InputError(f"max_len is capped at {MAX_CYCLE_LENGTH}")
    return list(iter_cycles(g, max_len))


def adjacent_short_cycle_pairs(g: Graph, max_len: int = 8,
                               convention: str = "edge") -> list[tuple[CycleRef, CycleRef]]:
    """Unordered pairs of distinct short cycles that share an edge.

    With ``convention="vertex"`` sharing a single vertex is enough.
    """
    if convention not in ("edge", "vertex"):
        raise InputError(f"unknown adjacency convention {convention!r}")
    cycles = cycles_up_to(g, max_len)
    index: dict[object, list[int]] = {}
    for i, c in enumerate(cycles):
        keys = c.edges() if convention == "edge" else c.vertices
        for key in keys:
            index.setdefault(key, []).append(i)
    pairs = set()
    for ids in index.values():
        for a in range(len(ids)):
            for b in range(a + 1, len(ids)):
                pairs.add((ids[a], ids[b]))
    return [(cycles[a], cycles[b]) for a, b in sorted(pairs)]


@dataclass(frozen=True)
class Separation:
    separating: bool
    inside: frozenset[int]
    outside: frozenset[int]

    def __bool__(self) -> bool:
        return self.separating


def is_separating(g: PlaneGraph, cycle: CycleRef | Sequence[int]) -> Separation:
    """Split the vertices off ``cycle`` into interior and exterior.

    Faces are flood-filled across every edge except the cycle's own edges;
    the side whose faces include the outer face is the exterior.
    """
    k = cycle if isinstance(cycle, CycleRef) else CycleRef.canonical(cycle)
    k.validate(g)
    if not g.is_connected():
        raise InputError("is_separating needs a connected plane graph")
    on_cycle = set(k.vertices)
    k_edges = k.edges()
    df = g.dart_face
    vs = k.vertices
    start = df[(vs[0], vs[1])]
    side = {start}
    queue = deque([start])
    while queue:
        f = queue.popleft()
        for u, v in g.faces[f].darts:
            if edge_key(u, v) in k_edges:
                continue
            h = df[(v, u)]
            if h not in side:
                side.add(h)
                queue.append(h)
    side_a = set()
    for f in side:
        side_a.update(g.faces[f].vertex_set - on_cycle)
    side_b = set(g.vertices) - on_cycle - side_a
    if g.outer_face in side:
        inside, outside = side_b, side_a
    else:
        inside, outside = side_a, side_b
    return Separation(bool(inside) and bool(outside), frozenset(inside), frozenset(outside))


def chords_of(g: Graph, cycle: CycleRef | Sequence[int]) -> list[Edge]:
    k = cycle if isinstance(cycle, CycleRef) else CycleRef.canonical(cycle)
    on = set(k.vertices)
    own = k.edges()
    return sorted({edge_key(u, w) for u in on for w in g.neighbors(u)
                   if w in on and edge_key(u, w) not in own})


# ------------------------------------------------------------ identification


@dataclass(frozen=True)
class Identification:
    """Result of merging ``merged_from`` into ``keep``.

    The merged vertex keeps the label ``keep``.  ``collapsed`` lists the
    common neighbours whose two edges became one.  ``new_short_cycles`` are
    cycles of the merged graph through ``keep`` that have no counterpart in
    the original graph.
    """

    graph: Graph
    keep: int
    merged_from: int
    collapsed: tuple[int, ...]
    new_short_cycles: tuple[CycleRef, ...]

    def lift(self, coloring: dict[int, int]) -> dict[int, int]:
        out = dict(coloring)
        out[self.merged_from] = coloring[self.keep]
        return out


def identify(g: Graph, u: int, v: int, short: int = 8) -> Identification:
    if u == v:
        raise InputError("cannot identify a vertex with itself")
    if g.has_edge(u, v):
        raise InputError(f"{u} and {v} are adjacent; identifying them makes a loop")
    adj = {w: set(g.neighbors(w)) for w in g.vertices if w != v}
    collapsed = sorted(g.neighbors(u) & g.neighbors(v))
    for w in g.neighbors(v):
        adj[w].discard(v)
        adj[w].add(u)
        adj[u].add(w)
    merged = Graph(adj)

    def exists_in(original_end: int, c: CycleRef) -> bool:
        vs = [original_end if x == u else x for x in c.vertices]
        return all(g.has_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    new = tuple(c for c in iter_cycles(merged, short)
                if u in c.vertices and not exists_in(u, c) and not exists_in(v, c))
    return Identification(merged, u, v, tuple(collapsed), new)


# ------------------------------------------------------------ construction


def from_drawing(coords: Sequence[tuple[float, float]], edges: Iterable[Edge],
                 outer_cycle: Sequence[int] | None = None) -> PlaneGraph:
    """Build a plane graph from a straight-line drawing.

    Neighbours are ordered clockwise by angle, so bounded faces trace with
    positive signed area and the unbounded face with negative area.  Without
    ``outer_cycle`` the outer face is the one of smallest signed area.  Crossing
    segments raise :class:`StructureError`.
    """
    n = len(coords)
    edges = sorted({edge_key(a, b) for a, b in edges})
    _check_no_crossings(coords, edges)
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    rotation = []
    for v in range(n):
        x0, y0 = coords[v]
        rotation.append(sorted(
            nbrs[v], key=lambda w: -math.atan2(coords[w][1] - y0, coords[w][0] - x0)))
    g = PlaneGraph(rotation)
    if outer_cycle is not None:
        want = list(outer_cycle)
        try:
            return g.with_outer_cycle(want)
        except InputError:
            return g.with_outer_cycle([want[0]] + want[:0:-1])
    if not g.faces:
        return g
    outer = min(g.faces, key=lambda f: signed_area(f, coords))
    return PlaneGraph(g.rotation, outer.darts[0])


def signed_area(face: FaceRecord, coords: Sequence[tuple[float, float]]) -> float:
    s = 0.0
    for a, b in face.darts:
        s += coords[a][0] * coords[b][1] - coords[b][0] * coords[a][1]
    return s / 2


def _check_no_crossings(coords, edges) -> None:
    def orient(p, q, r):
        val = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
        return (val > 1e-12) - (val < -1e-12)

    for i in range(len(edges)):
        a, b = edges[i]
        for j in range(i + 1, len(edges)):
            c, d = edges[j]
            if len({a, b, c, d}) < 4:
                continue
            p, q, r, s = coords[a], coords[b], coords[c], coords[d]
            if (orient(p, q, r) * orient(p, q, s) < 0
                    and orient(r, s, p) * orient(r, s, q) < 0):
                raise StructureError(f"edges {a}-{b} and {c}-{d} cross", dart=(a, b))


def cycle_graph(m: int) -> PlaneGraph:
    """The cycle ``0 .. m-1``; its outer face is traced ``0, 1, .., m-1``."""
    rotation = [[(v - 1) % m, (v + 1) % m] for v in range(m)]
    return PlaneGraph(rotation).with_outer_cycle(list(range(m)))


def add_path(g: PlaneGraph, face: int, u: int, v: int, new_vertices: int) -> PlaneGraph:
    """Draw a new ``u``-``v`` path through the interior of ``face``.

    The path has ``new_vertices`` fresh internal vertices labelled from
    ``g.vertex_count`` upward; the face splits in two.  ``u`` and ``v``
    must lie on the face boundary.  The outer face keeps its identity
    unless it is the face being split.
    """
    if u == v:
        raise InputError("path endpoints must differ")
    if new_vertices == 0 and g.has_edge(u, v):
        raise InputError(f"{u}-{v} is already an edge")
    darts = g.faces[face].darts
    into = {b: a for a, b in darts}
    if u not in into or v not in into:
        raise InputError(f"{u} and {v} must both lie on face {face}")
    n = g.vertex_count
    path = [u] + list(range(n, n + new_vertices)) + [v]
    rotation = [list(ws) for ws in g.rotation]
    for x in path[1:-1]:
        i = path.index(x)
        rotation.append([path[i - 1], path[i + 1]])
    for end, nxt in ((u, path[1]), (v, path[-2])):
        ws = rotation[end]
        ws.insert(ws.index(into[end]) + 1, nxt)
    outer = g.outer_dart
    if g.outer_face == face:
        outer = (u, path[1])
    return PlaneGraph(rotation, outer)
