"""Seeded generators of plane graphs in the target regime.

Every instance has an outer cycle of length 9 to 12 and no two edge-sharing
cycles of length at most 8.  Graphs grow by drawing paths across faces
(:func:`add_path`) and a step is kept only while the adjacency hypothesis
and the profile's predicate still hold.

Profiles:

* ``sparse-girth``: random chords and ears inside an outer cycle;
* ``tetrad-gadget``: a tetrad with its two triangles, wired to the outer
  cycle and then decorated;
* ``special9-gadget``: the hand-drawn special 9-face gadget, decorated;
* ``boundary-heavy``: many short paths between outer-cycle vertices.
"""

from __future__ import annotations

import random

from ..configurations import check_hypothesis, find_special_9_faces, find_tetrads
from ..errors import InputError
from ..plane_graph import PlaneGraph, add_path, cycle_graph
from .document import GraphDocument, document_from
from .gadgets import special_nine_face_gadget

PROFILES = ("sparse-girth", "tetrad-gadget", "special9-gadget", "boundary-heavy")
MAX_TRIES = 400


def _ok(g: PlaneGraph) -> bool:
    return check_hypothesis(g)[0]


def _inner(g: PlaneGraph) -> list[int]:
    return [f.id for f in g.internal_faces()]


def _try_path(g: PlaneGraph, rng: random.Random, face: int, frozen: set[int],
              lengths: tuple[int, int], prefer=None) -> PlaneGraph | None:
    walk = [v for v in dict.fromkeys(g.faces[face].walk) if v not in frozen]
    if len(walk) < 2:
        return None
    if prefer:
        pool = [v for v in walk if prefer(v)]
        u = rng.choice(pool) if pool else rng.choice(walk)
    else:
        u = rng.choice(walk)
    v = rng.choice([w for w in walk if w != u])
    r = rng.randint(*lengths)
    if r == 0 and g.has_edge(u, v):
        r = 1
    h = add_path(g, face, u, v, r)
    return h if _ok(h) else None


def decorate(g: PlaneGraph, rng: random.Random, steps: int, frozen: set[int] = frozenset(),
             lengths: tuple[int, int] = (1, 4), keep=None, max_vertices: int = 40) -> PlaneGraph:
    """Add up to ``steps`` paths inside random internal faces.

    Endpoints avoid ``frozen``; internal 2-vertices are preferred so their
    degree grows.  ``keep`` is an extra predicate every step must preserve.
    """
    outer = g.outer_vertices
    for _ in range(steps):
        for _ in range(20):
            if g.vertex_count >= max_vertices:
                return g
            face = rng.choice(_inner(g))
            h = _try_path(g, rng, face, set(frozen), lengths,
                          prefer=lambda v: v not in outer and g.degree(v) == 2)
            if h is not None and (keep is None or keep(h)):
                g = h
                break
    return g


def sparse_girth(rng: random.Random) -> PlaneGraph:
    g = cycle_graph(rng.randint(9, 12))
    g = decorate(g, rng, 1, lengths=(3, 7))
    return decorate(g, rng, rng.randint(2, 8), lengths=(1, 5))


def boundary_heavy(rng: random.Random) -> PlaneGraph:
    g = cycle_graph(rng.randint(9, 12))
    outer = set(g.outer_vertices)
    for _ in range(rng.randint(2, 6)):
        for _ in range(20):
            face = rng.choice(_inner(g))
            walk = [v for v in dict.fromkeys(g.faces[face].walk) if v in outer]
            if len(walk) < 2:
                continue
            u, v = rng.sample(walk, 2)
            r = rng.randint(1, 3)
            h = add_path(g, face, u, v, r)
            if _ok(h):
                g = h
                break
    return decorate(g, rng, rng.randint(0, 3), lengths=(1, 3))


def tetrad_instance(rng: random.Random) -> PlaneGraph:
    """A tetrad on a path across the outer cycle, triangles on one side.

    The path is ``d_a .. v1p v1 v2 v3 v4 v4p .. d_b``; apexes ``x`` (on
    v1v2) and ``y`` (on v3v4) are wired to D by paths of random length.
    """
    L = rng.randint(9, 12)
    g = cycle_graph(L)
    lead, tail = rng.randint(0, 2), rng.randint(0, 2)
    a = 0
    b = rng.randint(L // 2 - 1, L // 2 + 1)
    face = _inner(g)[0]
    g = add_path(g, face, a, b, lead + 6 + tail)
    n0 = L + lead
    v1p, v1, v2, v3, v4, v4p = range(n0, n0 + 6)
    g = add_path(g, g.dart_face[(v1, v2)], v1, v2, 1)
    x = g.vertex_count - 1
    g = add_path(g, g.dart_face[(v3, v4)], v3, v4, 1)
    y = g.vertex_count - 1
    for apex in (x, y):
        face = next(f for f in g.vertex_faces[apex] if g.faces[f].length > 3)
        targets = [v for v in g.faces[face].walk if v in g.outer_vertices]
        g = add_path(g, face, apex, rng.choice(targets), rng.randint(1, 4))
    frozen = {v1, v2, v3, v4, x, y}
    return decorate(g, rng, rng.randint(0, 4), frozen=frozen, lengths=(1, 4),
                    keep=lambda h: any(set(t.path) == {v1, v2, v3, v4} for t in find_tetrads(h)))


def special9_instance(rng: random.Random) -> PlaneGraph:
    gd = special_nine_face_gadget()
    frozen = {gd[f"v{i}"] for i in range(1, 10)} | {gd["a"], gd["b"]}
    frozen |= {gd[f"t{i}"] for i in (3, 5, 6, 8)}
    return decorate(gd.graph, rng, rng.randint(0, 4), frozen=frozen, lengths=(1, 4),
                    keep=lambda h: bool(find_special_9_faces(h)))


_BUILDERS = {
    "sparse-girth": sparse_girth,
    "tetrad-gadget": tetrad_instance,
    "special9-gadget": special9_instance,
    "boundary-heavy": boundary_heavy,
}


def _predicate(profile: str, g: PlaneGraph) -> bool:
    if not (9 <= g.outer.length <= 12 and _ok(g)):
        return False
    if profile == "tetrad-gadget":
        return bool(find_tetrads(g))
    if profile == "special9-gadget":
        return bool(find_special_9_faces(g))
    return True


def generate_graphs(seed: int, count: int, profile: str) -> list[PlaneGraph]:
    if profile not in _BUILDERS:
        raise InputError(f"unknown profile {profile!r}; choose from {', '.join(PROFILES)}")
    if count < 0:
        raise InputError("count must be non-negative")
    rng = random.Random(f"{profile}:{seed}")
    out: list[PlaneGraph] = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > MAX_TRIES * max(count, 1):
            raise InputError(f"profile {profile} produced too few valid instances")
        g = _BUILDERS[profile](rng)
        if _predicate(profile, g):
            out.append(g)
    return out


def generate_corpus(seed: int, count: int, profile: str, k: int = 3) -> list[GraphDocument]:
    """``count`` documents for ``profile``; identical seeds give identical bytes."""
    return [document_from(g, k) for g in generate_graphs(seed, count, profile)]
