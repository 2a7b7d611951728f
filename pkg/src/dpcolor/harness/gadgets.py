"""Hand-drawn plane graphs that realise specific configurations.

Every builder lays the graph out with straight-line coordinates and lets
:func:`from_drawing` derive the rotation system, so the embeddings are
checked for crossings.  Labelled vertices of interest come back in a dict.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..plane_graph import PlaneGraph, from_drawing


@dataclass(frozen=True)
class Gadget:
    graph: PlaneGraph
    names: dict[str, int]

    def __getitem__(self, key: str) -> int:
        return self.names[key]


class _Drawing:
    def __init__(self):
        self.coords: list[tuple[float, float]] = []
        self.edges: list[tuple[int, int]] = []
        self.names: dict[str, int] = {}

    def add(self, x: float, y: float, name: str | None = None) -> int:
        self.coords.append((x, y))
        v = len(self.coords) - 1
        if name:
            self.names[name] = v
        return v

    def polar(self, r: float, deg: float, name: str | None = None) -> int:
        t = math.radians(deg)
        return self.add(r * math.cos(t), r * math.sin(t), name)

    def join(self, *path: int) -> None:
        for a, b in zip(path, path[1:]):
            self.edges.append((a, b))

    def ring(self, m: int, r: float, start: float, prefix: str, step_sign: int = -1) -> list[int]:
        """``m`` vertices on a circle, numbered clockwise from ``start`` degrees."""
        vs = [self.polar(r, start + step_sign * 360.0 * i / m, f"{prefix}{i + 1}")
              for i in range(m)]
        self.join(*vs, vs[0])
        return vs

    def build(self, outer: list[int]) -> Gadget:
        g = from_drawing(self.coords, self.edges, outer_cycle=outer)
        return Gadget(g, dict(self.names))


def _outer(dr: _Drawing, m: int = 12, r: float = 9.0) -> list[int]:
    return dr.ring(m, r, 90.0, "d")


def _apex(dr: _Drawing, a: int, b: int, r: float, name: str) -> int:
    (xa, ya), (xb, yb) = dr.coords[a], dr.coords[b]
    ang = math.degrees(math.atan2(ya + yb, xa + xb))
    t = dr.polar(r, ang, name)
    dr.join(a, t, b)
    return t


def _nearest(dr: _Drawing, v: int, pool: list[int]) -> int:
    x, y = dr.coords[v]
    return min(pool, key=lambda w: (dr.coords[w][0] - x) ** 2 + (dr.coords[w][1] - y) ** 2)


def boundary_vertex_gadget() -> Gadget:
    """Outer 12-cycle ``d1..d12`` with a triangle ``d1 d2 t`` and a path
    ``t p1 p2 d7``.

    ``d1`` is a 3-vertex of D on an internal 3-face, ``d7`` a 3-vertex of D
    on 9+-faces only and ``d4`` a 2-vertex.
    """
    dr = _Drawing()
    d = _outer(dr)
    t = dr.polar(6.0, 75.0, "t")
    p1 = dr.polar(3.0, 0.0, "p1")
    p2 = dr.polar(3.0, -60.0, "p2")
    dr.join(d[0], t, d[1])
    dr.join(t, p1, p2, d[6])
    return dr.build(d)


def special_face_vertex_gadget() -> Gadget:
    """A 4-vertex ``d1`` of D whose only short internal face is a special
    4-face ``d1 a c b``; the faces on either side are 9-faces."""
    dr = _Drawing()
    d = _outer(dr)
    a = dr.polar(6.5, 80.0, "a")
    b = dr.polar(6.5, 100.0, "b")
    c = dr.polar(5.0, 90.0, "c")
    p = dr.polar(2.0, 20.0, "p")
    q = dr.polar(2.0, 160.0, "q")
    dr.join(a, d[0], b)
    dr.join(a, c, b)
    dr.join(a, p, d[6])
    dr.join(b, q, d[6])
    return dr.build(d)


def ten_face_gadget() -> Gadget:
    """Internal 10-face ``v1..v10`` with triangles on ``v10v1``, ``v2v3``,
    ``v4v5``, ``v5v6``, ``v7v8`` and ``v9v10``.

    Eight bad 3-vertices and two 4-vertices ``v5``, ``v10`` that each sit
    between two non-special triangles.  Apexes of ``v2v3`` and ``v7v8``
    reach D so the graph is connected.
    """
    dr = _Drawing()
    d = _outer(dr)
    v = dr.ring(10, 2.5, 90.0, "v")
    apex = {}
    for i in (10, 2, 4, 5, 7, 9):
        a, b = v[i - 1], v[i % 10]
        apex[i] = _apex(dr, a, b, 4.0, f"t{i}")
    for i in (2, 7):
        dr.join(apex[i], _nearest(dr, apex[i], d))
    return dr.build(d)


def nine_face_gadget() -> Gadget:
    """Internal 9-face ``v1..v9`` with five bad, three light 3-vertices and
    a 4-vertex ``v9`` on a non-special triangle and a 4-face.

    4-faces ``v9 v1 q1 q9`` and ``v2 v3 a b`` make ``v1``, ``v2``, ``v3``
    light; triangles on ``v4v5``, ``v6v7``, ``v8v9`` make ``v4..v8`` bad.
    """
    dr = _Drawing()
    d = _outer(dr)
    v = dr.ring(9, 2.5, 90.0, "v")
    quad_q = _quad(dr, v[8], v[0], "q9", "q1")
    quad_b = _quad(dr, v[1], v[2], "b", "a")
    for i in (4, 6, 8):
        _apex(dr, v[i - 1], v[i], 4.0, f"t{i}")
    dr.join(quad_q[1], _nearest(dr, quad_q[1], d))
    t6 = dr.names["t6"]
    dr.join(t6, _nearest(dr, t6, d))
    del quad_b
    return dr.build(d)


def _quad(dr: _Drawing, a: int, b: int, name_a: str, name_b: str) -> tuple[int, int]:
    """Attach a 4-face ``a b b' a'`` outside the edge ``ab``."""
    (xa, ya), (xb, yb) = dr.coords[a], dr.coords[b]
    qa = dr.add(xa * 1.6, ya * 1.6, name_a)
    qb = dr.add(xb * 1.6, yb * 1.6, name_b)
    dr.join(a, qa, qb, b)
    return qa, qb


def special_nine_face_gadget(frame: int = 12, shared_apex: bool = False) -> Gadget:
    """Internal 9-face ``v1..v9``: 4-face on ``v1v2`` (``v1``, ``v2`` light),
    triangles on ``v3v4``, ``v5v6``, ``v6v7`` and ``v8v9`` (the other six
    listed vertices bad).

    ``a`` is the neighbour of ``v2`` off the face and ``t3`` the common
    neighbour of ``v3`` and ``v4``.  With ``shared_apex`` the triangles on
    ``v5v6`` and ``v6v7`` share their apex ``t5`` so ``v6`` is a bad
    3-vertex (the two triangles then share an edge).
    """
    dr = _Drawing()
    d = _outer(dr, frame)
    v = dr.ring(9, 2.5, 90.0, "v")
    qb, qa = _quad(dr, v[0], v[1], "b", "a")
    for i in (3, 5, 6, 8):
        if shared_apex and i == 6:
            dr.join(dr.names["t5"], v[6])
            continue
        r = 4.5 if shared_apex and i == 5 else 4.0
        _apex(dr, v[i - 1], v[i], r, f"t{i}")
    dr.join(qa, _nearest(dr, qa, d))
    for name in ("t5", "t8"):
        t = dr.names[name]
        dr.join(t, _nearest(dr, t, d))
    del qb
    return dr.build(d)


def tetrad_gadget(frame: int = 13, heavy_x: bool = False) -> Gadget:
    """A tetrad ``v1 v2 v3 v4`` on the lower side of a horizontal path
    ``v1p v1 v2 v3 v4 v4p`` inside an outer ``frame``-cycle, with triangle
    apexes ``x`` (on v1v2) and ``y`` (on v3v4) above it.

    ``x``, ``y`` and ``v4p`` reach D through two-edge connectors and
    ``v1p`` through one edge.  With the default 13-cycle every cycle of
    length at most 8 is one of the two triangles and ``y`` is at distance 9
    from ``v1p`` once the tetrad is deleted.  ``x v2 v3 y`` is then a second
    tetrad; ``heavy_x`` gives ``x`` one more connector (degree 4) so the
    drawn path is the only one, at the cost of short cycles near ``v1p``.
    """
    dr = _Drawing()
    d = dr.ring(frame, 9.0, 180.0, "d", step_sign=-1)
    xs = (-3.0, -1.0, 1.0, 3.0)
    path = [dr.add(x, 0.0, f"v{i + 1}") for i, x in enumerate(xs)]
    v1p = dr.add(-5.0, 0.0, "v1p")
    v4p = dr.add(5.0, 0.0, "v4p")
    dr.join(d[0], v1p, *path, v4p)
    x = dr.add(-2.0, 1.5, "x")
    y = dr.add(2.0, 1.5, "y")
    dr.join(path[0], x, path[1])
    dr.join(path[2], y, path[3])
    x1 = dr.add(-0.5, 4.5, "x1")
    y1 = dr.add(4.5, 2.5, "y1")
    p4 = dr.add(5.5, -3.0, "p4")
    dr.join(x, x1, _nearest_dir(dr, d, 80.0))
    if heavy_x:
        x2 = dr.add(-4.0, 3.5, "x2")
        dr.join(x, x2, _nearest_dir(dr, d, 140.0))
    dr.join(y, y1, _nearest_dir(dr, d, 20.0))
    dr.join(v4p, p4, _nearest_dir(dr, d, -60.0))
    return dr.build(d)


def _nearest_dir(dr: _Drawing, pool: list[int], deg: float) -> int:
    t = math.radians(deg)
    target = (9.0 * math.cos(t), 9.0 * math.sin(t))
    return min(pool, key=lambda w: (dr.coords[w][0] - target[0]) ** 2
               + (dr.coords[w][1] - target[1]) ** 2)
