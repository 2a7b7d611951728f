"""Colouring extensions across the two reducible configurations.

Both procedures take a colouring of the reduced graph (the configuration's
four path vertices deleted and two far-apart vertices identified) and
extend it back to the whole graph.  They rely on every edge at the
re-coloured vertices being full and straight, which :func:`straighten`
arranges; the convenience pipelines :func:`color_via_tetrad` and
:func:`color_via_special_face` do the renaming, reduction, search and
extension in one call.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .correspondence import (CorrAssignment, check_coloring, is_full, is_straight,
                             straighten, violated_edges)
from .errors import InputError, PreconditionError
from .plane_graph import Graph, Identification, edge_key, identify
from .solver import find_dp_coloring


@dataclass(frozen=True)
class TetradFrame:
    """A tetrad ``v1 v2 v3 v4`` with triangle apexes ``x`` (on v1v2) and
    ``y`` (on v3v4) and outer neighbours ``v1p`` of v1 and ``v4p`` of v4."""

    path: tuple[int, int, int, int]
    x: int
    y: int
    v1p: int
    v4p: int


def tetrad_frame(g: Graph, path: Sequence[int]) -> TetradFrame:
    v1, v2, v3, v4 = path
    for v in path:
        if g.degree(v) != 3:
            raise PreconditionError(f"tetrad vertex {v} has degree {g.degree(v)}", witness=v)
    if not (g.has_edge(v1, v2) and g.has_edge(v2, v3) and g.has_edge(v3, v4)):
        raise PreconditionError(f"{tuple(path)} is not a path", witness=tuple(path))
    (x,) = g.neighbors(v2) - {v1, v3}
    (y,) = g.neighbors(v3) - {v2, v4}
    if x not in g.neighbors(v1) or y not in g.neighbors(v4):
        raise PreconditionError("v1v2 and v3v4 must both lie on triangles", witness=(x, y))
    rest1 = g.neighbors(v1) - {v2, x}
    rest4 = g.neighbors(v4) - {v3, y}
    if len(rest1) != 1 or len(rest4) != 1:
        raise PreconditionError("tetrad frame is degenerate", witness=tuple(path))
    (v1p,) = rest1
    (v4p,) = rest4
    frame = TetradFrame(tuple(path), x, y, v1p, v4p)
    if len({v1, v2, v3, v4, x, y, v1p, v4p}) != 8:
        raise PreconditionError("tetrad frame vertices are not distinct", witness=frame)
    return frame


@dataclass(frozen=True)
class NineFaceFrame:
    """A special 9-face labelled ``v1 .. v9`` with the outer neighbour
    ``v2p`` of v2 and the common neighbour ``v34`` of v3 and v4."""

    labels: tuple[int, ...]
    v2p: int
    v34: int

    @property
    def removed(self) -> tuple[int, int, int, int]:
        return self.labels[:4]


def nine_face_frame(g: Graph, labels: Sequence[int]) -> NineFaceFrame:
    labels = tuple(labels)
    if len(labels) != 9 or len(set(labels)) != 9:
        raise PreconditionError("a 9-face needs nine distinct vertices", witness=labels)
    v1, v2, v3, v4 = labels[:4]
    for v in (v1, v2, v3, v4):
        if g.degree(v) != 3:
            raise PreconditionError(f"vertex {v} has degree {g.degree(v)}", witness=v)
    rest = g.neighbors(v2) - {v1, v3}
    common = (g.neighbors(v3) & g.neighbors(v4)) - set(labels)
    if len(rest) != 1 or len(common) != 1:
        raise PreconditionError("9-face frame is degenerate", witness=labels)
    return NineFaceFrame(labels, next(iter(rest)), next(iter(common)))


# --------------------------------------------------------------- helpers


def _greedy(g: Graph, c: CorrAssignment, phi: dict, v: int) -> int:
    forbidden = set()
    for w in g.neighbors(v):
        if w in phi:
            b = c.partner(w, v, phi[w])
            if b is not None:
                forbidden.add(b)
    for col in range(1, c.k + 1):
        if col not in forbidden:
            return col
    raise PreconditionError(f"no colour left for vertex {v}", witness=v)


def _free(g: Graph, c: CorrAssignment, phi: dict, v: int) -> list[int]:
    forbidden = {c.partner(w, v, phi[w]) for w in g.neighbors(v) if w in phi}
    return [col for col in range(1, c.k + 1) if col not in forbidden]


def _require_straight_full(g: Graph, c: CorrAssignment, vertices) -> None:
    for v in vertices:
        for w in g.neighbors(v):
            if not is_full(c, v, w) or not is_straight(c, v, w):
                raise PreconditionError(
                    f"edge {v}-{w} must be full and straight", witness=edge_key(v, w))


def _require_reduced(g: Graph, c: CorrAssignment, phi: Mapping[int, int], removed) -> dict:
    removed = set(removed)
    missing = [v for v in g.vertices if v not in removed and v not in phi]
    if missing:
        raise PreconditionError(f"reduced colouring misses vertex {missing[0]}",
                                witness=missing[0])
    phi = {v: col for v, col in phi.items() if v not in removed}
    bad = violated_edges(g, c, phi)
    if bad:
        raise PreconditionError(f"reduced colouring violates edge {bad[0]}", witness=bad[0])
    return phi


def _finish(g: Graph, c: CorrAssignment, phi: dict) -> dict:
    check = check_coloring(g, c, phi)
    if not check:
        raise AssertionError(f"extension produced a violation at {check.edge}")
    return phi


# ----------------------------------------------------------------- tetrad


def tetrad_case(frame: TetradFrame, phi: Mapping[int, int]) -> str:
    """Which branch the v1/v2 step takes: ``x=v1p``, ``x=v3`` or ``distinct``."""
    if phi[frame.x] == phi[frame.v1p]:
        return "x=v1p"
    if phi[frame.x] == phi[frame.path[2]]:
        return "x=v3"
    return "distinct"


def extend_over_tetrad(g: Graph, c: CorrAssignment, tetrad: Sequence[int] | TetradFrame,
                       phi_reduced: Mapping[int, int]) -> dict[int, int]:
    """Extend a colouring of ``G - tetrad`` with ``phi(y) == phi(v1p)``.

    v4 and v3 are coloured greedily in that order.  Then, if x shares its
    colour with v1p or with v3, v1 is coloured first and v2 second;
    otherwise v1 takes v3's colour and v2 takes v1p's colour.
    """
    frame = tetrad if isinstance(tetrad, TetradFrame) else tetrad_frame(g, tetrad)
    v1, v2, v3, v4 = frame.path
    _require_straight_full(g, c, frame.path)
    phi = _require_reduced(g, c, phi_reduced, frame.path)
    if phi[frame.y] != phi[frame.v1p]:
        raise PreconditionError("y and v1p must share a colour", witness=(frame.y, frame.v1p))

    phi[v4] = _greedy(g, c, phi, v4)
    phi[v3] = _greedy(g, c, phi, v3)
    if tetrad_case(frame, phi) == "distinct":
        phi[v1] = phi[v3]
        phi[v2] = phi[frame.v1p]
    else:
        for col in _free(g, c, phi, v1):
            phi[v1] = col
            left = _free(g, c, phi, v2)
            if left:
                phi[v2] = left[0]
                break
        else:
            raise PreconditionError("no colouring of v1, v2 survives", witness=frame)
    return _finish(g, c, phi)


# ------------------------------------------------------------ special face


def special_face_case(frame: NineFaceFrame, phi: Mapping[int, int]) -> str:
    """Branch of the v3/v4 step: ``v34=v2``, ``v34=v5`` or ``distinct``."""
    v2, v5 = frame.labels[1], frame.labels[4]
    if phi[frame.v34] == phi[v2]:
        return "v34=v2"
    if phi[frame.v34] == phi[v5]:
        return "v34=v5"
    return "distinct"


def extend_over_special_9_face(g: Graph, c: CorrAssignment,
                               face: Sequence[int] | NineFaceFrame,
                               phi_reduced: Mapping[int, int]) -> dict[int, int]:
    """Extend a colouring of ``G - {v1..v4}`` with ``phi(v2p) == phi(v5)``.

    v1 then v2 are coloured greedily.  If v34 has v2's colour, v4 goes
    before v3; if it has v5's colour, v3 goes before v4; otherwise v4 takes
    v2's colour and v3 takes v5's colour.
    """
    frame = face if isinstance(face, NineFaceFrame) else nine_face_frame(g, face)
    v1, v2, v3, v4, v5 = frame.labels[:5]
    _require_straight_full(g, c, (v2, v3, v4))
    phi = _require_reduced(g, c, phi_reduced, frame.removed)
    if phi[frame.v2p] != phi[v5]:
        raise PreconditionError("v2p and v5 must share a colour", witness=(frame.v2p, v5))

    phi[v1] = _greedy(g, c, phi, v1)
    phi[v2] = _greedy(g, c, phi, v2)
    case = special_face_case(frame, phi)
    if case == "v34=v2":
        phi[v4] = _greedy(g, c, phi, v4)
        phi[v3] = _greedy(g, c, phi, v3)
    elif case == "v34=v5":
        phi[v3] = _greedy(g, c, phi, v3)
        phi[v4] = _greedy(g, c, phi, v4)
    else:
        phi[v4] = phi[v2]
        phi[v3] = phi[v5]
    return _finish(g, c, phi)


# --------------------------------------------------------------- reduction


@dataclass(frozen=True)
class Reduction:
    identification: Identification
    assignment: CorrAssignment
    removed: tuple[int, ...]

    @property
    def graph(self) -> Graph:
        return self.identification.graph


def reduce_graph(g: Graph, c: CorrAssignment, removed: Sequence[int],
                 keep: int, merge: int) -> Reduction:
    """Delete ``removed``, then identify ``merge`` into ``keep``.

    The assignment is carried over edge by edge.  Identifications that would
    collapse two edges (``keep`` and ``merge`` at distance 2) are refused,
    because the merged edge would not carry a matching.
    """
    rest = g.without(removed)
    try:
        ident = identify(rest, keep, merge)
    except InputError as exc:
        raise PreconditionError(str(exc), witness=(keep, merge)) from None
    if ident.collapsed:
        raise PreconditionError(
            f"{keep} and {merge} have common neighbours {ident.collapsed}",
            witness=ident.collapsed)
    matchings = {}
    for a, b in ident.graph.edges():
        oa, ob = a, b
        if a == keep and not rest.has_edge(keep, b):
            oa = merge
        if b == keep and not rest.has_edge(a, keep):
            ob = merge
        matchings[(a, b)] = c.matching(oa, ob)
    return Reduction(ident, CorrAssignment(c.k, matchings), tuple(removed))


def _pipeline(g, c, touched, removed, keep, merge, phi0, extend, frame):
    phi0 = dict(phi0 or {})
    if any(v in phi0 for v in removed):
        raise PreconditionError("precoloured vertices must avoid the configuration")
    if keep in phi0 and merge in phi0 and phi0[keep] != phi0[merge]:
        raise PreconditionError("identified vertices are precoloured differently")
    h = {edge_key(v, w) for v in touched for w in g.neighbors(v)}
    st = straighten(g, c, h)
    cs = st.assignment
    red = reduce_graph(g, cs, removed, keep, merge)
    pre = st.encode(phi0)
    if merge in pre:
        pre[keep] = pre.pop(merge)
    phi_red = find_dp_coloring(red.graph, red.assignment, pre)
    if phi_red is None:
        return None
    phi = extend(g, cs, frame, red.identification.lift(phi_red))
    return st.decode(phi)


def color_via_tetrad(g: Graph, c: CorrAssignment, tetrad: Sequence[int],
                     phi0: Mapping[int, int] | None = None) -> dict[int, int] | None:
    """Straighten, reduce, colour the reduced graph, and extend.

    Returns ``None`` only when the reduced graph has no colouring extending
    ``phi0``.
    """
    frame = tetrad_frame(g, tetrad)
    return _pipeline(g, c, frame.path, frame.path, frame.y, frame.v1p, phi0,
                     extend_over_tetrad, frame)


def color_via_special_face(g: Graph, c: CorrAssignment, labels: Sequence[int],
                           phi0: Mapping[int, int] | None = None) -> dict[int, int] | None:
    frame = nine_face_frame(g, labels)
    return _pipeline(g, c, frame.labels[1:4], frame.removed, frame.v2p, frame.labels[4],
                     phi0, extend_over_special_9_face, frame)
