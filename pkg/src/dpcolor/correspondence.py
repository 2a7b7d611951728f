"""Correspondence assignments and the operations defined on them.

Colours are ``1..k``.  A matching is stored once per edge, keyed by the
edge with its smaller endpoint first; pairs are ``(colour at smaller end,
colour at larger end)``.  Looking a matching up from the other endpoint
returns the transposed pairs.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _kernels
from .errors import InputError, PreconditionError
from .plane_graph import Edge, Graph, edge_key, iter_cycles

Pair = tuple[int, int]
ColoringMap = dict  # vertex -> colour in 1..k


class CorrAssignment:
    """A ``k``-correspondence assignment on a fixed edge set (immutable)."""

    __slots__ = ("k", "_m")

    def __init__(self, k: int, matchings: Mapping[Edge, Iterable[Pair]]):
        if k < 1:
            raise InputError("k must be at least 1")
        store = {}
        for (u, v), pairs in matchings.items():
            if u == v:
                raise InputError(f"loop edge {u}-{v}")
            pairs = frozenset((int(a), int(b)) for a, b in pairs)
            if u > v:
                u, v = v, u
                pairs = frozenset((b, a) for a, b in pairs)
            if (u, v) in store:
                raise InputError(f"edge {u}-{v} given twice")
            _validate_matching(k, (u, v), pairs)
            store[(u, v)] = pairs
        self.k = k
        self._m = MappingProxyType(dict(sorted(store.items())))

    # ----------------------------------------------------------- builders

    @classmethod
    def identity(cls, g: Graph, k: int) -> "CorrAssignment":
        ident = frozenset((c, c) for c in range(1, k + 1))
        return cls(k, {e: ident for e in g.edges()})

    @classmethod
    def empty(cls, g: Graph, k: int) -> "CorrAssignment":
        return cls(k, {e: () for e in g.edges()})

    @classmethod
    def from_permutations(cls, g: Graph, k: int,
                          perms: Mapping[int, Sequence[int]]) -> "CorrAssignment":
        """Full assignment ``{(p_u[c], p_v[c])}``; consistent on every walk.

        ``perms[v]`` lists the images of colours ``1..k`` (missing vertices
        use the identity).
        """
        def image(v, c):
            p = perms.get(v)
            return c if p is None else p[c - 1]
        return cls(k, {(u, v): [(image(u, c), image(v, c)) for c in range(1, k + 1)]
                       for u, v in g.edges()})

    def with_matching(self, u: int, v: int, pairs: Iterable[Pair]) -> "CorrAssignment":
        key = edge_key(u, v)
        if key not in self._m:
            raise InputError(f"unknown edge {u}-{v}")
        pairs = [(a, b) if u < v else (b, a) for a, b in pairs]
        return CorrAssignment(self.k, {**self._m, key: pairs})

    # ----------------------------------------------------------- queries

    @property
    def matchings(self) -> Mapping[Edge, frozenset[Pair]]:
        return self._m

    def edges(self) -> tuple[Edge, ...]:
        return tuple(self._m)

    def matching(self, u: int, v: int) -> frozenset[Pair]:
        """Pairs ``(colour of u, colour of v)`` on edge ``uv``."""
        try:
            pairs = self._m[edge_key(u, v)]
        except KeyError:
            raise InputError(f"unknown edge {u}-{v}") from None
        return pairs if u < v else frozenset((b, a) for a, b in pairs)

    def partner(self, u: int, v: int, c: int) -> int | None:
        """The colour of ``v`` matched to colour ``c`` of ``u``, if any."""
        for a, b in self.matching(u, v):
            if a == c:
                return b
        return None

    def size(self) -> int:
        return sum(len(p) for p in self._m.values())

    def covers(self, g: Graph) -> bool:
        return set(self._m) == set(g.edges())

    def canonical(self) -> tuple:
        return (self.k, tuple((e, tuple(sorted(p))) for e, p in self._m.items()))

    def __eq__(self, other):
        return isinstance(other, CorrAssignment) and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        return f"CorrAssignment(k={self.k}, edges={len(self._m)}, pairs={self.size()})"

    # ------------------------------------------------------- kernel form

    def to_arrays(self, g: Graph):
        """CSR adjacency plus a per-dart partner table with 0-based colours.

        ``fwd[d, a]`` is the colour at the head of dart ``d`` matched to
        colour ``a`` at its tail, or ``-1``.
        """
        index = {v: i for i, v in enumerate(g.vertices)}
        ptr = np.zeros(len(index) + 1, dtype=np.int64)
        heads: list[int] = []
        rows: list[list[int]] = []
        for i, v in enumerate(g.vertices):
            nbrs = sorted(g.neighbors(v))
            ptr[i + 1] = ptr[i] + len(nbrs)
            for w in nbrs:
                heads.append(index[w])
                row = [-1] * self.k
                for a, b in self.matching(v, w):
                    row[a - 1] = b - 1
                rows.append(row)
        nbr = np.asarray(heads, dtype=np.int64)
        fwd = np.asarray(rows, dtype=np.int64).reshape(len(heads), self.k)
        return ptr, nbr, fwd


def _validate_matching(k: int, edge: Edge, pairs: frozenset[Pair]) -> None:
    left = [a for a, _ in pairs]
    right = [b for _, b in pairs]
    for c in left + right:
        if not 1 <= c <= k:
            raise InputError(f"colour {c} on edge {edge[0]}-{edge[1]} is outside 1..{k}")
    if len(set(left)) != len(left) or len(set(right)) != len(right):
        raise InputError(f"pairs on edge {edge[0]}-{edge[1]} do not form a matching")


def is_full(c: CorrAssignment, u: int, v: int) -> bool:
    return len(c.matching(u, v)) == c.k


def is_straight(c: CorrAssignment, u: int, v: int) -> bool:
    return all(a == b for a, b in c.matching(u, v))


@dataclass(frozen=True)
class ColoringCheck:
    ok: bool
    edge: Edge | None = None

    def __bool__(self):
        return self.ok


def check_coloring(g: Graph, c: CorrAssignment, phi: Mapping[int, int]) -> ColoringCheck:
    """Is ``phi`` a C-colouring?  Reports the first violated edge otherwise."""
    for v in g.vertices:
        if v not in phi:
            raise InputError(f"vertex {v} is uncoloured")
        if not 1 <= phi[v] <= c.k:
            raise InputError(f"vertex {v} has colour {phi[v]} outside 1..{c.k}")
    for u, v in g.edges():
        if (phi[u], phi[v]) in c.matching(u, v):
            return ColoringCheck(False, (u, v))
    return ColoringCheck(True)


def violated_edges(g: Graph, c: CorrAssignment, phi: Mapping[int, int]) -> list[Edge]:
    """Edges inside the domain of a partial colouring that it violates."""
    return [(u, v) for u, v in g.edges()
            if u in phi and v in phi and (phi[u], phi[v]) in c.matching(u, v)]


@dataclass(frozen=True)
class WalkWitness:
    walk: tuple[int, ...]
    chain: tuple[int, ...]


def walk_inconsistency(g: Graph, c: CorrAssignment,
                       walk: Sequence[int]) -> WalkWitness | None:
    """Search every start colour for a matched chain that returns changed."""
    walk = tuple(walk)
    if len(walk) < 2 or walk[0] != walk[-1]:
        raise InputError("walk must be closed (first vertex == last vertex)")
    for a, b in zip(walk, walk[1:]):
        if not g.has_edge(a, b):
            raise InputError(f"{a}-{b} is not an edge, so this is not a walk")
    for start in range(1, c.k + 1):
        chain = [start]
        for a, b in zip(walk, walk[1:]):
            nxt = c.partner(a, b, chain[-1])
            if nxt is None:
                break
            chain.append(nxt)
        else:
            if chain[-1] != start:
                return WalkWitness(walk, tuple(chain))
    return None


@dataclass(frozen=True)
class ConsistencyReport:
    consistent: bool
    witness: WalkWitness | None = None

    def __bool__(self):
        return self.consistent


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    return [c.vertices for c in iter_cycles(g, 3)]


def consistent_on_triangles(g: Graph, c: CorrAssignment) -> ConsistencyReport:
    for t in triangles(g):
        for r in range(3):
            rot = t[r:] + t[:r]
            for walk in (rot + rot[:1], rot[::-1] + rot[-1:]):
                w = walk_inconsistency(g, c, walk)
                if w is not None:
                    return ConsistencyReport(False, w)
    return ConsistencyReport(True)


def is_consistent(g: Graph, c: CorrAssignment) -> bool:
    """Consistency on every closed walk.

    Equivalent to: no connected component of the cover graph (vertices
    ``(v, colour)``, edges the matched pairs) holds two colours of the same
    vertex.
    """
    ptr, nbr, fwd = c.to_arrays(g)
    return bool(_kernels.cover_consistent(ptr, nbr, fwd, c.k))


def consistency_witness(g: Graph, c: CorrAssignment) -> WalkWitness | None:
    """A closed walk on which ``c`` is inconsistent, found through the cover graph."""
    start_of: dict[tuple[int, int], tuple[int, int] | None] = {}
    for v in g.vertices:
        for col in range(1, c.k + 1):
            if (v, col) in start_of:
                continue
            start_of[(v, col)] = None
            seen_colour = {v: col}
            queue = deque([(v, col)])
            while queue:
                x, a = queue.popleft()
                for y in sorted(g.neighbors(x)):
                    b = c.partner(x, y, a)
                    if b is None or (y, b) in start_of:
                        continue
                    start_of[(y, b)] = (x, a)
                    if y in seen_colour and seen_colour[y] != b:
                        return _witness_from_tree(start_of, (y, seen_colour[y]), (y, b))
                    seen_colour[y] = b
                    queue.append((y, b))
    return None


def _witness_from_tree(parent, end_a, end_b) -> WalkWitness:
    def root_path(node):
        out = [node]
        while parent[out[-1]] is not None:
            out.append(parent[out[-1]])
        return out[::-1]

    pa, pb = root_path(end_a), root_path(end_b)
    # walk: end_a back to the root, then out to end_b
    nodes = pa[::-1] + pb[1:]
    return WalkWitness(tuple(v for v, _ in nodes), tuple(col for _, col in nodes))


# ------------------------------------------------------------- straighten


@dataclass(frozen=True)
class Straightening:
    """A renamed assignment plus the per-vertex colour bijections.

    ``bijections[v][old] == new``; vertices outside the subgraph keep the
    identity.
    """

    assignment: CorrAssignment
    bijections: Mapping[int, Mapping[int, int]] = field(default_factory=dict)

    def encode(self, phi: Mapping[int, int]) -> dict[int, int]:
        return {v: self.bijections.get(v, {}).get(col, col) for v, col in phi.items()}

    def decode(self, phi: Mapping[int, int]) -> dict[int, int]:
        inverse = {v: {new: old for old, new in m.items()} for v, m in self.bijections.items()}
        return {v: inverse.get(v, {}).get(col, col) for v, col in phi.items()}


def straighten(g: Graph, c: CorrAssignment, h: Iterable[Edge]) -> Straightening:
    """Rename colours so that every edge of ``h`` becomes straight.

    Every edge of ``h`` must be full and every cycle of ``h`` consistent;
    a violation raises :class:`PreconditionError` carrying the non-full edge
    or an inconsistent closed walk.
    """
    h_edges = sorted({edge_key(u, v) for u, v in h})
    adj: dict[int, list[int]] = {}
    for u, v in h_edges:
        if not g.has_edge(u, v):
            raise InputError(f"{u}-{v} is not an edge of the graph")
        if not is_full(c, u, v):
            raise PreconditionError(f"edge {u}-{v} is not full", witness=(u, v))
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)

    sigma: dict[int, dict[int, int]] = {}
    parent: dict[int, int | None] = {}
    for root in sorted(adj):
        if root in sigma:
            continue
        sigma[root] = {col: col for col in range(1, c.k + 1)}
        parent[root] = None
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(adj[u]):
                if w in sigma:
                    continue
                sigma[w] = {b: sigma[u][a] for a, b in c.matching(u, w)}
                parent[w] = u
                queue.append(w)

    for u, v in h_edges:
        if all(sigma[u][a] == sigma[v][b] for a, b in c.matching(u, v)):
            continue
        walk = _fundamental_cycle(parent, u, v)
        raise PreconditionError(
            f"a cycle through {u}-{v} is inconsistent",
            witness=walk_inconsistency(g, c, walk))

    renamed = {}
    for (u, v), pairs in c.matchings.items():
        su, sv = sigma.get(u), sigma.get(v)
        renamed[(u, v)] = [(su[a] if su else a, sv[b] if sv else b) for a, b in pairs]
    return Straightening(CorrAssignment(c.k, renamed),
                         MappingProxyType({v: MappingProxyType(m) for v, m in sigma.items()}))


def _fundamental_cycle(parent, u, v) -> tuple[int, ...]:
    def up(x):
        out = [x]
        while parent[out[-1]] is not None:
            out.append(parent[out[-1]])
        return out

    pu, pv = up(u), up(v)
    common = set(pu) & set(pv)
    lca = next(x for x in pu if x in common)
    left = pu[:pu.index(lca) + 1]
    right = pv[:pv.index(lca)]
    # u .. lca .. v, closed by the edge v-u
    return tuple(left + right[::-1] + [u])


# ------------------------------------------------------------- from_lists


@dataclass(frozen=True)
class ListEncoding:
    """Lists re-expressed as a correspondence assignment.

    ``decode_maps[v][i]`` is the actual colour behind index ``i`` at ``v``.
    """

    assignment: CorrAssignment
    decode_maps: Mapping[int, tuple]

    def decode(self, phi: Mapping[int, int]) -> dict:
        return {v: self.decode_maps[v][i - 1] for v, i in phi.items()}

    def encode(self, coloring: Mapping) -> dict[int, int]:
        return {v: self.decode_maps[v].index(col) + 1 for v, col in coloring.items()}


def from_lists(g: Graph, lists: Mapping[int, Iterable], k: int) -> ListEncoding:
    """Index each list by ``1..k`` (after sorting and truncating to ``k``)."""
    decode = {}
    for v in g.vertices:
        items = sorted(set(lists[v]))
        if len(items) < k:
            raise InputError(f"list of vertex {v} has {len(items)} < {k} colours")
        decode[v] = tuple(items[:k])
    matchings = {}
    for u, v in g.edges():
        pos_v = {col: j for j, col in enumerate(decode[v])}
        matchings[(u, v)] = [(i + 1, pos_v[col] + 1)
                             for i, col in enumerate(decode[u]) if col in pos_v]
    return ListEncoding(CorrAssignment(k, matchings), MappingProxyType(decode))


def closed_walks(g: Graph, max_len: int):
    """Every closed walk with at most ``max_len`` edges (brute force)."""
    for start in g.vertices:
        stack = [(start,)]
        while stack:
            walk = stack.pop()
            if len(walk) > 1 and walk[-1] == start:
                yield walk
            if len(walk) - 1 < max_len:
                for w in sorted(g.neighbors(walk[-1]), reverse=True):
                    stack.append(walk + (w,))


def all_partial_matchings(k: int) -> list[tuple[Pair, ...]]:
    """Every matching between two copies of ``1..k`` (including the empty one)."""
    out = []
    colours = range(1, k + 1)
    for size in range(k + 1):
        for left in itertools.combinations(colours, size):
            for right in itertools.permutations(colours, size):
                out.append(tuple(zip(left, right)))
    return out
