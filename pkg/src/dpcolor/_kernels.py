"""Hot search kernels.

Every kernel is written once in a numba-compatible subset of Python and
compiled with ``numba.njit`` when numba is importable.  Setting
``DPCOLOR_DISABLE_NUMBA=1`` (read at import time) keeps the plain
interpreted functions; results are identical, only slower.  The compiled
dispatchers expose the interpreted version as ``.py_func``.

Array conventions: vertices are ``0..n-1`` in CSR form (``ptr``, ``nbr``);
``fwd[d, a]`` is the colour at the head of dart ``d`` matched to colour
``a`` at its tail, or ``-1``.  Colours are 0-based here.
"""

import os

import numpy as np

DISABLED = os.environ.get("DPCOLOR_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if DISABLED:
        raise ImportError("disabled by DPCOLOR_DISABLE_NUMBA")
    from numba import njit
    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


def backend() -> str:
    return "numba" if HAS_NUMBA else "python"


@njit(cache=True)
def _pick(dom, color, rank):
    best = -1
    best_count = 64
    for v in range(dom.shape[0]):
        if color[v] >= 0:
            continue
        m = dom[v]
        cnt = 0
        while m:
            m &= m - 1
            cnt += 1
        if cnt < best_count or (cnt == best_count and rank[v] < rank[best]):
            best = v
            best_count = cnt
    return best


@njit(cache=True)
def search_coloring(ptr, nbr, fwd, k, pre, rank):
    """Backtracking search for a colouring extending ``pre`` (``-1`` = free).

    Minimum-remaining-candidates selection (ties by ``rank``) with forward
    pruning through the matchings.  Returns ``(found, colours)``.  ``pre``
    must already be valid on its own domain.
    """
    n = ptr.shape[0] - 1
    full = (1 << k) - 1
    color = np.full(n, -1, np.int64)
    dom = np.full(n, full, np.int64)
    for v in range(n):
        if pre[v] >= 0:
            color[v] = pre[v]
            dom[v] = 1 << pre[v]
    for v in range(n):
        if pre[v] >= 0:
            for d in range(ptr[v], ptr[v + 1]):
                w = nbr[d]
                b = fwd[d, pre[v]]
                if b >= 0 and color[w] < 0:
                    dom[w] &= ~(1 << b)
    free = 0
    for v in range(n):
        if color[v] < 0:
            free += 1
            if dom[v] == 0:
                return False, color
    if free == 0:
        return True, color

    chosen = np.empty(free, np.int64)
    cand = np.empty(free, np.int64)
    saved = np.empty((free, n), np.int64)
    t = 0
    v = _pick(dom, color, rank)
    chosen[0] = v
    cand[0] = dom[v]
    saved[0, :] = dom
    while t >= 0:
        v = chosen[t]
        if cand[t] == 0:
            color[v] = -1
            t -= 1
            continue
        m = cand[t]
        a = 0
        while not (m >> a) & 1:
            a += 1
        cand[t] = m & (m - 1)
        dom[:] = saved[t, :]
        color[v] = a
        dom[v] = 1 << a
        ok = True
        for d in range(ptr[v], ptr[v + 1]):
            w = nbr[d]
            if color[w] < 0:
                b = fwd[d, a]
                if b >= 0:
                    dom[w] &= ~(1 << b)
                    if dom[w] == 0:
                        ok = False
                        break
        if not ok:
            continue
        if t + 1 == free:
            return True, color
        w = _pick(dom, color, rank)
        t += 1
        chosen[t] = w
        cand[t] = dom[w]
        saved[t, :] = dom
    return False, color


@njit(cache=True)
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def cover_consistent(ptr, nbr, fwd, k):
    """True iff no cover-graph component holds two colours of one vertex."""
    n = ptr.shape[0] - 1
    parent = np.arange(n * k)
    for v in range(n):
        for d in range(ptr[v], ptr[v + 1]):
            w = nbr[d]
            if w < v:
                continue
            for a in range(k):
                b = fwd[d, a]
                if b >= 0:
                    ra = _find(parent, v * k + a)
                    rb = _find(parent, w * k + b)
                    if ra != rb:
                        parent[ra] = rb
    for v in range(n):
        for a in range(k):
            ra = _find(parent, v * k + a)
            for b in range(a + 1, k):
                if _find(parent, v * k + b) == ra:
                    return False
    return True


@njit(cache=True)
def scan_assignments(ptr, nbr, dart_fwd, dart_rev, catalog, inverse, k,
                     start, stop, check_consistency):
    """Walk assignment codes ``start..stop-1`` in mixed radix over edges.

    Edge ``e`` (darts ``dart_fwd[e]`` tail->head and ``dart_rev[e]``) gets
    catalogue entry ``(code // M**e) % M``.  Returns ``(first code that is
    consistent but uncolourable or -1, number of consistent codes seen)``.
    With ``check_consistency`` false every code counts as consistent.
    """
    n = ptr.shape[0] - 1
    m_edges = dart_fwd.shape[0]
    radix = catalog.shape[0]
    fwd = np.full((nbr.shape[0], k), -1, np.int64)
    pre = np.full(n, -1, np.int64)
    rank = np.arange(n)
    consistent = 0
    for code in range(start, stop):
        rest = code
        for e in range(m_edges):
            j = rest % radix
            rest //= radix
            fwd[dart_fwd[e], :] = catalog[j, :]
            fwd[dart_rev[e], :] = inverse[j, :]
        if check_consistency and not cover_consistent(ptr, nbr, fwd, k):
            continue
        consistent += 1
        found, _ = search_coloring(ptr, nbr, fwd, k, pre, rank)
        if not found:
            return code, consistent
    return -1, consistent
