"""Decision procedures for correspondence colouring at desk scale."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

import numpy as np

from . import _kernels
from .correspondence import (CorrAssignment, all_partial_matchings, from_lists,
                             violated_edges)
from .errors import BudgetExceeded, InputError, PreconditionError
from .plane_graph import Graph

DEFAULT_BUDGET_VERTICES = 8
DEFAULT_MAX_LIST_ASSIGNMENTS = 2_000_000
DEFAULT_EXHAUSTIVE_BUDGET = 7 ** 6
MAX_K = 4


def find_dp_coloring(g: Graph, c: CorrAssignment, phi0: Mapping[int, int] | None = None,
                     order: Sequence[int] | None = None) -> dict[int, int] | None:
    """A C-colouring of ``g`` that restricts to ``phi0``, or ``None``.

    ``order`` breaks ties in the minimum-remaining-candidates rule; it
    defaults to increasing vertex label.
    """
    phi0 = dict(phi0 or {})
    if not c.covers(g):
        raise InputError("assignment edges do not match the graph's edges")
    members = set(g.vertices)
    for v, col in phi0.items():
        if v not in members:
            raise InputError(f"precoloured vertex {v} is not in the graph")
        if not 1 <= col <= c.k:
            raise InputError(f"precolour {col} of vertex {v} is outside 1..{c.k}")
    bad = violated_edges(g, c, phi0)
    if bad:
        raise PreconditionError(f"precolouring violates edge {bad[0]}", witness=bad[0])
    verts = g.vertices
    index = {v: i for i, v in enumerate(verts)}
    ptr, nbr, fwd = c.to_arrays(g)
    pre = np.full(len(verts), -1, dtype=np.int64)
    for v, col in phi0.items():
        pre[index[v]] = col - 1
    rank = np.arange(len(verts), dtype=np.int64)
    if order is not None:
        if sorted(order) != list(verts):
            raise InputError("order must be a permutation of the vertices")
        for r, v in enumerate(order):
            rank[index[v]] = r
    found, colours = _kernels.search_coloring(ptr, nbr, fwd, c.k, pre, rank)
    if not found:
        return None
    return {v: int(colours[i]) + 1 for i, v in enumerate(verts)}


# ------------------------------------------------------------- choosability


@dataclass(frozen=True)
class ChoosabilityResult:
    choosable: bool
    witness: dict | None
    assignments_checked: int

    def __bool__(self):
        return self.choosable


def canonical_list_assignments(n: int, k: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """List assignments on vertices ``0..n-1`` up to renaming colours.

    Colours are numbered by first appearance: each list is a subset of the
    colours already used plus a block of fresh colours taken in order.
    """
    import itertools

    def rec(i, used, acc):
        if i == n:
            yield tuple(acc)
            return
        for fresh in range(k + 1):
            old = k - fresh
            if old > used:
                continue
            new = tuple(range(used, used + fresh))
            for keep in itertools.combinations(range(used), old):
                acc.append(keep + new)
                yield from rec(i + 1, used + fresh, acc)
                acc.pop()

    yield from rec(0, 0, [])


def is_choosable(g: Graph, k: int, budget_vertices: int = DEFAULT_BUDGET_VERTICES,
                 max_assignments: int = DEFAULT_MAX_LIST_ASSIGNMENTS) -> ChoosabilityResult:
    """Exhaustive ``k``-choosability test with a bad list assignment as witness."""
    if k < 1 or k > MAX_K:
        raise InputError(f"k must lie in 1..{MAX_K}")
    if g.vertex_count > budget_vertices:
        raise BudgetExceeded(
            f"{g.vertex_count} vertices exceeds the budget of {budget_vertices}")
    verts = g.vertices
    checked = 0
    for lists in canonical_list_assignments(len(verts), k):
        checked += 1
        if checked > max_assignments:
            raise BudgetExceeded(f"more than {max_assignments} list assignments")
        assignment = {v: lists[i] for i, v in enumerate(verts)}
        enc = from_lists(g, assignment, k)
        if find_dp_coloring(g, enc.assignment) is None:
            return ChoosabilityResult(False, assignment, checked)
    return ChoosabilityResult(True, None, checked)


# --------------------------------------------- all consistent assignments


@dataclass(frozen=True)
class ConsistentSweep:
    colorable: bool
    witness: CorrAssignment | None
    mode: str
    assignments: int
    consistent: int
    seed: int | None = None
    samples: int | None = None
    extra: dict = field(default_factory=dict)

    def __bool__(self):
        return self.colorable


def _catalog(k: int):
    matchings = all_partial_matchings(k)
    cat = np.full((len(matchings), k), -1, dtype=np.int64)
    inv = np.full((len(matchings), k), -1, dtype=np.int64)
    for j, pairs in enumerate(matchings):
        for a, b in pairs:
            cat[j, a - 1] = b - 1
            inv[j, b - 1] = a - 1
    return matchings, cat, inv


def _decode(code: int, edges, matchings, k) -> CorrAssignment:
    out = {}
    radix = len(matchings)
    for e in edges:
        out[e] = matchings[code % radix]
        code //= radix
    return CorrAssignment(k, out)


def dp_colorable_for_all_consistent(g: Graph, k: int,
                                    budget: int = DEFAULT_EXHAUSTIVE_BUDGET,
                                    samples: int | None = None,
                                    seed: int = 0,
                                    filter_consistent: bool = True) -> ConsistentSweep:
    """Is ``g`` C-colourable for every consistent ``k``-assignment?

    Exhaustive when the number of assignments is within ``budget``;
    otherwise ``samples`` random assignments are drawn with ``seed``, and
    without ``samples`` the call raises :class:`BudgetExceeded`.
    """
    if k < 1 or k > MAX_K:
        raise InputError(f"k must lie in 1..{MAX_K}")
    matchings, cat, inv = _catalog(k)
    edges = g.edges()
    verts = g.vertices
    index = {v: i for i, v in enumerate(verts)}
    ptr, nbr, _ = CorrAssignment.empty(g, k).to_arrays(g)
    dart_of = {}
    for i, v in enumerate(verts):
        for d in range(ptr[i], ptr[i + 1]):
            dart_of[(i, int(nbr[d]))] = d
    dart_fwd = np.array([dart_of[(index[u], index[v])] for u, v in edges], dtype=np.int64)
    dart_rev = np.array([dart_of[(index[v], index[u])] for u, v in edges], dtype=np.int64)
    total = len(matchings) ** len(edges)

    if total <= budget:
        bad, consistent = _kernels.scan_assignments(
            ptr, nbr, dart_fwd, dart_rev, cat, inv, k, 0, total, filter_consistent)
        bad = int(bad)
        witness = None if bad < 0 else _decode(bad, edges, matchings, k)
        return ConsistentSweep(bad < 0, witness, "exhaustive", total, int(consistent))

    if samples is None:
        raise BudgetExceeded(f"{total} assignments exceeds the budget of {budget}")
    rng = np.random.default_rng(seed)
    consistent = 0
    fwd = np.full((len(nbr), k), -1, dtype=np.int64)
    pre = np.full(len(verts), -1, dtype=np.int64)
    rank = np.arange(len(verts), dtype=np.int64)
    for drawn in range(1, samples + 1):
        picks = rng.integers(0, len(matchings), size=len(edges))
        fwd[dart_fwd] = cat[picks]
        fwd[dart_rev] = inv[picks]
        if filter_consistent and not _kernels.cover_consistent(ptr, nbr, fwd, k):
            continue
        consistent += 1
        found, _ = _kernels.search_coloring(ptr, nbr, fwd, k, pre, rank)
        if not found:
            witness = CorrAssignment(k, {e: matchings[j] for e, j in zip(edges, picks.tolist())})
            return ConsistentSweep(False, witness, "sampled", drawn, consistent, seed, samples)
    return ConsistentSweep(True, None, "sampled", samples, consistent, seed, samples)
