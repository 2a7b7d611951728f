"""Detectors for the structural configurations of a plane graph with outer face D.

Terminology used throughout:

* a vertex or face is *internal* when it is not on / not equal to the outer
  face D;
* ``F(k)`` holds the internal k-faces whose boundary misses D, ``F'(k)``
  those meeting D in exactly one vertex; a k-face in ``F'(k)`` with
  ``3 <= k <= 8`` is *special*;
* an internal 3-vertex is *bad* when it lies on a 3-face outside ``F'(3)``,
  *light* when it lies on a 3-face in ``F'(3)`` or on a face of ``F(4)`` or
  ``F(5)``, and *good* otherwise.  Bad wins when both apply.

Every detector returns plain data; :func:`analyze` bundles them into a
:class:`ConfigReport` whose :meth:`ConfigReport.citations` lists every
violated reducibility condition with its witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx

from .correspondence import CorrAssignment, is_full
from .errors import InputError
from .plane_graph import (MAX_CYCLE_LENGTH, CycleRef, Edge, FaceRecord, Graph, PlaneGraph,
                          adjacent_short_cycle_pairs, chords_of, cycles_up_to, edge_key,
                          is_separating)

BAD, LIGHT, GOOD = "bad", "light", "good"


# ------------------------------------------------------------ face classes


def outer_hits(g: PlaneGraph, f: FaceRecord) -> int:
    """``|b(f) ∩ V(D)|``."""
    return len(f.vertex_set & g.outer_vertices)


def in_F(g: PlaneGraph, f: FaceRecord, k: int) -> bool:
    return not f.is_outer and f.length == k and outer_hits(g, f) == 0


def in_F_prime(g: PlaneGraph, f: FaceRecord, k: int) -> bool:
    return not f.is_outer and f.length == k and outer_hits(g, f) == 1


def is_special_face(g: PlaneGraph, f: FaceRecord) -> bool:
    return 3 <= f.length <= 8 and in_F_prime(g, f, f.length)


def is_nonspecial_triangle(g: PlaneGraph, f: FaceRecord) -> bool:
    return not f.is_outer and f.length == 3 and not in_F_prime(g, f, 3)


def special_faces(g: PlaneGraph, k: int) -> tuple[list[int], list[int]]:
    """Face ids of ``F(k)`` and ``F'(k)``."""
    fk = [f.id for f in g.faces if in_F(g, f, k)]
    fkp = [f.id for f in g.faces if in_F_prime(g, f, k)]
    return fk, fkp


def incident_faces(g: PlaneGraph, v: int) -> list[FaceRecord]:
    """Distinct faces whose boundary contains ``v``, in rotation order."""
    seen, out = set(), []
    for fid in g.vertex_faces[v]:
        if fid not in seen:
            seen.add(fid)
            out.append(g.faces[fid])
    return out


def is_internal_vertex(g: PlaneGraph, v: int) -> bool:
    return v not in g.outer_vertices


def classify_3_vertices(g: PlaneGraph) -> dict[int, str]:
    """Label each internal 3-vertex ``bad``, ``light`` or ``good``."""
    labels = {}
    for v in g.vertices:
        if g.degree(v) != 3 or not is_internal_vertex(g, v):
            continue
        faces = incident_faces(g, v)
        if any(is_nonspecial_triangle(g, f) for f in faces):
            labels[v] = BAD
        elif any(in_F_prime(g, f, 3) or in_F(g, f, 4) or in_F(g, f, 5) for f in faces):
            labels[v] = LIGHT
        else:
            labels[v] = GOOD
    return labels


# ------------------------------------------------------------------ tetrads


def on_triangle(g: Graph, u: int, v: int) -> tuple[int, ...]:
    """Common neighbours of ``u`` and ``v`` (apexes of triangles on ``uv``)."""
    return tuple(sorted(g.neighbors(u) & g.neighbors(v)))


@dataclass(frozen=True)
class Tetrad:
    path: tuple[int, int, int, int]
    face: int
    triangles: tuple[tuple[int, int, int], tuple[int, int, int]]
    avoids_S: bool


def _is_tetrad(g: Graph, path: Sequence[int]) -> bool:
    v1, v2, v3, v4 = path
    return (len(set(path)) == 4 and all(g.degree(v) == 3 for v in path)
            and g.has_edge(v1, v2) and g.has_edge(v2, v3) and g.has_edge(v3, v4)
            and bool(on_triangle(g, v1, v2)) and bool(on_triangle(g, v3, v4)))


def find_tetrads(g: PlaneGraph, S: Iterable[int] | None = None) -> list[Tetrad]:
    """Every degree-3 path ``v1 v2 v3 v4`` along a face boundary with
    ``v1v2`` and ``v3v4`` on triangles, each reported once."""
    S = set(g.outer_vertices if S is None else S)
    found: dict[tuple, Tetrad] = {}
    for f in g.faces:
        walk = f.walk
        m = len(walk)
        if m < 4:
            continue
        for i in range(m):
            path = tuple(walk[(i + j) % m] for j in range(4))
            if not _is_tetrad(g, path):
                continue
            key = min(path, path[::-1])
            if key in found:
                continue
            key_path = key
            a = on_triangle(g, key_path[0], key_path[1])[0]
            b = on_triangle(g, key_path[2], key_path[3])[0]
            found[key] = Tetrad(key_path, f.id,
                                ((key_path[0], key_path[1], a), (key_path[2], key_path[3], b)),
                                not (set(key_path) & S))
    return [found[k] for k in sorted(found)]


# -------------------------------------------------------- special 9-faces


@dataclass(frozen=True)
class SpecialNineFace:
    face: int
    labels: tuple[int, ...]


def _special_pattern(labels: Sequence[int], classes: dict[int, str]) -> bool:
    return (all(classes.get(labels[i]) == LIGHT for i in (0, 1))
            and all(classes.get(labels[i]) == BAD for i in (2, 3, 4, 6, 7, 8)))


def find_special_9_faces(g: PlaneGraph, classes: dict[int, str] | None = None
                         ) -> list[SpecialNineFace]:
    """Faces of ``F(9)`` whose boundary, under one of its 18 symmetries,
    reads light, light, then bad at positions 3, 4, 5, 7, 8, 9."""
    classes = classify_3_vertices(g) if classes is None else classes
    out = []
    for f in g.faces:
        if not in_F(g, f, 9) or len(f.vertex_set) != 9:
            continue
        walk = f.walk
        for s in range(9):
            hit = None
            for step in (1, -1):
                labels = tuple(walk[(s + step * i) % 9] for i in range(9))
                if _special_pattern(labels, classes):
                    hit = labels
                    break
            if hit:
                out.append(SpecialNineFace(f.id, hit))
                break
    return out


# ---------------------------------------------------------------- bad runs


@dataclass(frozen=True)
class BadRun:
    face: int
    run: tuple[int, ...]
    context: tuple[int, int] | None
    pattern: bool | None

    @property
    def length(self) -> int:
        return len(self.run)

    @property
    def violation(self) -> bool:
        return self.length >= 5 or self.pattern is False


def check_bad_runs(g: PlaneGraph, classes: dict[int, str] | None = None) -> list[BadRun]:
    """Maximal runs of consecutive bad vertices along every face walk.

    Runs of exactly four carry their neighbours ``v0`` and ``v5`` and
    ``pattern`` tells whether ``v0v1``, ``v2v3`` and ``v4v5`` all lie on
    triangles.
    """
    classes = classify_3_vertices(g) if classes is None else classes
    out = []
    for f in g.faces:
        walk = f.walk
        m = len(walk)
        bad = [classes.get(v) == BAD for v in walk]
        if all(bad):
            out.append(BadRun(f.id, tuple(walk), None, None))
            continue
        start = next(i for i in range(m) if not bad[i])
        i = 0
        while i < m:
            j = (start + i) % m
            if not bad[j]:
                i += 1
                continue
            run = []
            while i < m and bad[(start + i) % m]:
                run.append(walk[(start + i) % m])
                i += 1
            context, pattern = None, None
            if len(run) == 4:
                v0 = walk[(j - 1) % m]
                v5 = walk[(start + i) % m]
                context = (v0, v5)
                seq = [v0] + run + [v5]
                pattern = all(on_triangle(g, seq[a], seq[a + 1]) for a in (0, 2, 4))
            out.append(BadRun(f.id, tuple(run), context, pattern))
    return out


# --------------------------------------------------------- side conditions


@dataclass
class SideConditions:
    not_all_boundary: bool
    cut_vertices: list[int]
    low_degree: list[int]
    separating_cycles: list[CycleRef]
    outer_is_cycle: bool
    boundary_matches_outer: bool
    chords: list[Edge]
    boundary_paths: list[tuple[tuple[int, ...], tuple[int, int, int]]]
    outer_four_faces: list[int]

    def failures(self) -> list[tuple[str, object]]:
        out: list[tuple[str, object]] = []
        if not self.not_all_boundary:
            out.append(("all-vertices-on-boundary", None))
        out += [("cut-vertex", v) for v in self.cut_vertices]
        out += [("internal-low-degree", v) for v in self.low_degree]
        out += [("separating-short-cycle", c.vertices) for c in self.separating_cycles]
        if not self.outer_is_cycle:
            out.append(("outer-face-not-cycle", None))
        if not self.boundary_matches_outer:
            out.append(("boundary-set-mismatch", None))
        out += [("chord-of-outer-face", e) for e in self.chords]
        out += [("triangle-on-boundary-path", w) for w in self.boundary_paths]
        out += [("outer-face-4-face-contact", f) for f in self.outer_four_faces]
        return out


def _boundary_paths(g: Graph, S: set[int]):
    """Paths of length 2 or 3 with ends in S and interior outside S."""
    seen = set()
    for s in sorted(S):
        for a in sorted(g.neighbors(s) - S):
            for t in sorted(g.neighbors(a) & S):
                if t != s:
                    p = (s, a, t)
                    key = min(p, p[::-1])
                    if key not in seen:
                        seen.add(key)
                        yield key
            for b in sorted(g.neighbors(a) - S):
                for t in sorted(g.neighbors(b) & S):
                    if t != s:
                        p = (s, a, b, t)
                        key = min(p, p[::-1])
                        if key not in seen:
                            seen.add(key)
                            yield key


def articulation_points(g: Graph) -> list[int]:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges())
    return sorted(nx.articulation_points(h))


def separating_cycles(g: PlaneGraph, max_len: int = MAX_CYCLE_LENGTH) -> list[CycleRef]:
    if not g.is_connected():
        return []
    return [c for c in cycles_up_to(g, max_len) if is_separating(g, c)]


def lemma_side_conditions(g: PlaneGraph, S: Iterable[int] | None = None,
                          max_separating: int = MAX_CYCLE_LENGTH) -> SideConditions:
    """Check the structural conditions a minimal counterexample must meet.

    ``S`` defaults to the outer face's vertex set.  A singleton ``S`` is
    accepted and simply fails the boundary-set condition.
    """
    D = g.outer
    S = set(D.vertex_set if S is None else S)
    if not S <= set(g.vertices):
        raise InputError("S must be a set of vertices of the graph")
    outer_is_cycle = len(D.vertex_set) == D.length and D.length >= 3
    chords = chords_of(g, D.walk) if outer_is_cycle else []
    bad_paths = []
    for path in _boundary_paths(g, S):
        for i in range(len(path) - 1):
            x, y = path[i], path[i + 1]
            for w in on_triangle(g, x, y):
                if len({x, y, w} & S) <= 1:
                    bad_paths.append((path, tuple(sorted((x, y, w)))))
    d_edges = D.edge_set()
    four = []
    for f in g.internal_faces():
        if f.length != 4:
            continue
        meet = f.vertex_set & D.vertex_set
        if len(meet) >= 3:
            four.append(f.id)
        elif len(meet) == 2:
            a, b = sorted(meet)
            if edge_key(a, b) not in d_edges:
                four.append(f.id)
    return SideConditions(
        not_all_boundary=set(g.vertices) != S,
        cut_vertices=articulation_points(g),
        low_degree=[v for v in g.vertices if v not in S and g.degree(v) < 3],
        separating_cycles=separating_cycles(g, max_separating),
        outer_is_cycle=outer_is_cycle,
        boundary_matches_outer=S == set(D.vertex_set),
        chords=chords,
        boundary_paths=bad_paths,
        outer_four_faces=four,
    )


def check_hypothesis(g: Graph, max_len: int = 8, convention: str = "edge"):
    """``(ok, pairs)``: ok iff no two cycles of length at most ``max_len``
    are adjacent under ``convention``."""
    pairs = adjacent_short_cycle_pairs(g, max_len, convention)
    return not pairs, pairs


# ------------------------------------------------------ matching conditions


def matching_conditions(g: PlaneGraph, c: CorrAssignment,
                        S: Iterable[int] | None = None) -> list[tuple[str, Edge]]:
    """Matching sizes a maximal counterexample assignment must have.

    Off the outer face every edge carries at least two pairs and an edge on
    no triangle is full; every edge of a triangle ``uvw`` with
    ``d(u) = d(w) = 3`` and ``u, w`` outside ``S`` is full.
    """
    S = set(g.outer_vertices if S is None else S)
    d_edges = g.outer.edge_set()
    out = []
    for u, v in g.edges():
        if (u, v) in d_edges:
            continue
        if len(c.matching(u, v)) < 2:
            out.append(("thin-matching", (u, v)))
        elif not on_triangle(g, u, v) and not is_full(c, u, v):
            out.append(("non-full-edge", (u, v)))
    for f in g.internal_faces():
        if f.length != 3 or len(f.vertex_set) != 3:
            continue
        walk = f.walk
        for i in range(3):
            u, v, w = walk[i], walk[(i + 1) % 3], walk[(i + 2) % 3]
            if (g.degree(u) == 3 and g.degree(w) == 3 and u not in S and w not in S):
                for a, b in ((u, v), (v, w), (w, u)):
                    if not is_full(c, a, b):
                        item = ("non-full-triangle-edge", edge_key(a, b))
                        if item not in out:
                            out.append(item)
    return out


# ------------------------------------------------------------------ report


@dataclass
class ConfigReport:
    vertex_classes: dict[int, str]
    special_faces: dict[int, tuple[list[int], list[int]]]
    tetrads: list[Tetrad]
    special_9_faces: list[SpecialNineFace]
    bad_runs: list[BadRun]
    adjacent_pairs: list[tuple[CycleRef, CycleRef]]
    side: SideConditions
    convention: str = "edge"
    extra: dict = field(default_factory=dict)

    @property
    def separating_cycles(self) -> list[CycleRef]:
        return self.side.separating_cycles

    @property
    def chords_of_D(self) -> list[Edge]:
        return self.side.chords

    @property
    def hypothesis_ok(self) -> bool:
        return not self.adjacent_pairs

    def citations(self) -> list[tuple[str, object]]:
        """Every violated reducibility condition, as ``(code, witness)``."""
        out: list[tuple[str, object]] = []
        out += [("adjacent-short-cycles", (a.vertices, b.vertices))
                for a, b in self.adjacent_pairs]
        out += self.side.failures()
        out += [("tetrad-avoiding-boundary", t.path) for t in self.tetrads if t.avoids_S]
        out += [("special-9-face", s.labels) for s in self.special_9_faces]
        for r in self.bad_runs:
            if r.length >= 5:
                out.append(("five-bad-run", r.run))
            elif r.pattern is False:
                out.append(("bad-run-4-pattern", r.run))
        return out


def analyze(g: PlaneGraph, S: Iterable[int] | None = None, convention: str = "edge",
            max_separating: int = MAX_CYCLE_LENGTH) -> ConfigReport:
    classes = classify_3_vertices(g)
    return ConfigReport(
        vertex_classes=classes,
        special_faces={k: special_faces(g, k) for k in range(3, 10)},
        tetrads=find_tetrads(g, S),
        special_9_faces=find_special_9_faces(g, classes),
        bad_runs=check_bad_runs(g, classes),
        adjacent_pairs=adjacent_short_cycle_pairs(g, 8, convention),
        side=lemma_side_conditions(g, S, max_separating),
        convention=convention,
    )
