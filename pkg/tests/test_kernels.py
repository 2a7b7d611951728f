import json
import os
import random
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dpcolor import _kernels
from dpcolor.correspondence import CorrAssignment

from helpers import random_assignment, random_graph

compiled = pytest.mark.skipif(not _kernels.HAS_NUMBA, reason="numba backend not active")


def _py(f):
    return getattr(f, "py_func", f)


@compiled
@given(st.integers(0, 100_000), st.integers(1, 7), st.integers(1, 3))
def test_search_kernel_matches_interpreted(seed, n, k):
    rng = random.Random(seed)
    g = random_graph(rng, n, 0.5)
    c = random_assignment(g, k, rng)
    ptr, nbr, fwd = c.to_arrays(g)
    pre = np.full(n, -1, dtype=np.int64)
    rank = np.arange(n, dtype=np.int64)
    a = _kernels.search_coloring(ptr, nbr, fwd, k, pre, rank)
    b = _py(_kernels.search_coloring)(ptr, nbr, fwd, k, pre, rank)
    assert bool(a[0]) == bool(b[0])
    assert np.array_equal(a[1], b[1])
    assert bool(_kernels.cover_consistent(ptr, nbr, fwd, k)) == \
        bool(_py(_kernels.cover_consistent)(ptr, nbr, fwd, k))


def test_disabled_flag_selects_python_backend():
    code = ("import json; from dpcolor import _kernels; from dpcolor.plane_graph import cycle_graph;"
            "from dpcolor.solver import dp_colorable_for_all_consistent as f;"
            "r = f(cycle_graph(4), 2); print(json.dumps([_kernels.backend(), r.colorable,"
            " r.assignments, r.consistent]))")
    env = dict(os.environ, DPCOLOR_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True)
    backend, colorable, total, consistent = json.loads(out.stdout)
    assert backend == "python"
    from dpcolor.plane_graph import cycle_graph
    from dpcolor.solver import dp_colorable_for_all_consistent
    ref = dp_colorable_for_all_consistent(cycle_graph(4), 2)
    assert (colorable, total, consistent) == (ref.colorable, ref.assignments, ref.consistent)


def test_arrays_layout():
    from dpcolor.plane_graph import Graph
    g = Graph.from_edges(range(2), [(0, 1)])
    c = CorrAssignment(3, {(0, 1): [(1, 3)]})
    ptr, nbr, fwd = c.to_arrays(g)
    assert ptr.tolist() == [0, 1, 2] and nbr.tolist() == [1, 0]
    assert fwd[0].tolist() == [2, -1, -1]
    assert fwd[1].tolist() == [-1, -1, 0]
