"""The JSON graph document: embedding, outer face, matchings, precolouring.

Canonical text is ``json.dumps(..., sort_keys=True, indent=2)`` plus a final
LF; :func:`emit` of a parsed canonical document reproduces it byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..correspondence import CorrAssignment
from ..errors import GraphFormatError, InputError, StructureError
from ..plane_graph import PlaneGraph, edge_key

FORMAT_VERSION = 1
REQUIRED = ("format_version", "k", "rotation", "outer_face")
OPTIONAL = ("matchings", "precolored")


@dataclass(frozen=True)
class GraphDocument:
    k: int
    rotation: tuple[tuple[int, ...], ...]
    outer_face: tuple[int, ...]
    matchings: dict[tuple[int, int], tuple[tuple[int, int], ...]] | None = None
    precolored: dict[int, int] | None = None
    format_version: int = FORMAT_VERSION

    def graph(self) -> PlaneGraph:
        return PlaneGraph(self.rotation).with_outer_cycle(self.outer_face)

    def assignment(self, g: PlaneGraph | None = None) -> CorrAssignment:
        """The document's matchings; the identity on every edge when absent."""
        g = self.graph() if g is None else g
        if self.matchings is None:
            return CorrAssignment.identity(g, self.k)
        return CorrAssignment(self.k, self.matchings)

    def to_json(self) -> dict:
        data = {
            "format_version": self.format_version,
            "k": self.k,
            "rotation": [list(ws) for ws in self.rotation],
            "outer_face": list(self.outer_face),
        }
        if self.matchings is not None:
            data["matchings"] = {f"{u}-{v}": [list(p) for p in sorted(pairs)]
                                 for (u, v), pairs in self.matchings.items()}
        if self.precolored is not None:
            data["precolored"] = {str(v): c for v, c in self.precolored.items()}
        return data


def emit(doc: GraphDocument) -> str:
    return json.dumps(doc.to_json(), sort_keys=True, indent=2) + "\n"


def document_from(g: PlaneGraph, k: int, c: CorrAssignment | None = None,
                  precolored: dict[int, int] | None = None) -> GraphDocument:
    matchings = None
    if c is not None:
        matchings = {e: tuple(sorted(c.matchings[e])) for e in sorted(c.matchings)}
    return GraphDocument(k, g.rotation, g.outer.walk, matchings,
                         dict(sorted(precolored.items())) if precolored else None)


def _fail(message: str, field: str) -> GraphFormatError:
    return GraphFormatError(message, field=field)


def _int(x, field: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise _fail(f"expected an integer, got {x!r}", field)
    return x


def parse_graph(text: str) -> GraphDocument:
    """Parse and validate a graph document.

    Syntax errors carry line and column; semantic errors name the field.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(exc.msg, line=exc.lineno, column=exc.colno) from None
    if not isinstance(data, dict):
        raise _fail("the document must be a JSON object", "$")
    unknown = sorted(set(data) - set(REQUIRED) - set(OPTIONAL))
    if unknown:
        raise _fail(f"unknown field {unknown[0]!r}", unknown[0])
    for key in REQUIRED:
        if key not in data:
            raise _fail(f"missing field {key!r}", key)
    version = _int(data["format_version"], "format_version")
    if version != FORMAT_VERSION:
        raise _fail(f"unsupported format_version {version}", "format_version")
    k = _int(data["k"], "k")
    if k < 1:
        raise _fail("k must be at least 1", "k")

    rot = data["rotation"]
    if not isinstance(rot, list) or not all(isinstance(ws, list) for ws in rot):
        raise _fail("rotation must be a list of neighbour lists", "rotation")
    rotation = tuple(tuple(_int(w, f"rotation[{v}]") for w in ws) for v, ws in enumerate(rot))
    try:
        g = PlaneGraph(rotation)
    except StructureError as exc:
        raise _fail(str(exc), f"rotation[{exc.dart[0]}]" if exc.dart else "rotation") from None

    outer = data["outer_face"]
    if not isinstance(outer, list):
        raise _fail("outer_face must be a vertex list", "outer_face")
    outer = tuple(_int(v, "outer_face") for v in outer)
    try:
        g = g.with_outer_cycle(outer)
    except InputError as exc:
        raise _fail(str(exc), "outer_face") from None

    matchings = None
    if "matchings" in data:
        raw = data["matchings"]
        if not isinstance(raw, dict):
            raise _fail("matchings must be an object keyed by 'u-v'", "matchings")
        matchings = {}
        for key, pairs in raw.items():
            field = f"matchings.{key}"
            parts = key.split("-")
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise _fail(f"edge key {key!r} is not of the form 'u-v'", field)
            u, v = int(parts[0]), int(parts[1])
            if u >= v:
                raise _fail(f"edge key {key!r} must list the smaller endpoint first", field)
            if u >= g.vertex_count or not g.has_edge(u, v):
                raise _fail(f"{key} is not an edge of the graph", field)
            if not isinstance(pairs, list):
                raise _fail("a matching is a list of [c_u, c_v] pairs", field)
            out = []
            for p in pairs:
                if (not isinstance(p, list) or len(p) != 2):
                    raise _fail("a matching is a list of [c_u, c_v] pairs", field)
                a, b = _int(p[0], field), _int(p[1], field)
                if not (1 <= a <= k and 1 <= b <= k):
                    raise _fail(f"colour outside 1..{k} on edge {key}", field)
                out.append((a, b))
            matchings[edge_key(u, v)] = tuple(sorted(out))
        try:
            CorrAssignment(k, matchings)
        except InputError as exc:
            raise _fail(str(exc), "matchings") from None

    precolored = None
    if "precolored" in data:
        raw = data["precolored"]
        if not isinstance(raw, dict):
            raise _fail("precolored must map vertex ids to colours", "precolored")
        precolored = {}
        for key, col in raw.items():
            field = f"precolored.{key}"
            if not key.isdigit() or int(key) >= g.vertex_count:
                raise _fail(f"{key!r} is not a vertex", field)
            col = _int(col, field)
            if not 1 <= col <= k:
                raise _fail(f"colour {col} outside 1..{k}", field)
            precolored[int(key)] = col
        precolored = dict(sorted(precolored.items()))
    return GraphDocument(k, rotation, outer, matchings, precolored, version)
