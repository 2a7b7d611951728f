"""Compare the compiled kernels with the interpreted fallback.

Each workload runs in a fresh interpreter, once with numba and once with
``DPCOLOR_DISABLE_NUMBA=1``, and the script prints best-of-N wall times and
checks that both backends return the same answers.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import itertools, json, random, sys, time
from dpcolor import _kernels
from dpcolor.correspondence import CorrAssignment, is_consistent
from dpcolor.plane_graph import Graph, cycle_graph
from dpcolor.solver import dp_colorable_for_all_consistent, find_dp_coloring

repeat = int(sys.argv[1])


def random_instances(seed, count, n, k):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
        g = Graph.from_edges(range(n), edges)
        m = {}
        for e in g.edges():
            s = rng.randint(0, k)
            m[e] = list(zip(rng.sample(range(1, k + 1), s), rng.sample(range(1, k + 1), s)))
        out.append((g, CorrAssignment(k, m)))
    return out


K4 = Graph.from_edges(range(4), itertools.combinations(range(4), 2))
SEARCH = random_instances(1, 300, 12, 3)
CONSISTENT = random_instances(2, 300, 12, 3)

workloads = {
    "sweep K4 k=2 (7^6 assignments)": lambda: dp_colorable_for_all_consistent(K4, 2).consistent,
    "sweep C6 k=2 (7^6 assignments)": lambda: dp_colorable_for_all_consistent(
        cycle_graph(6), 2).consistent,
    "search 300 graphs n=12 k=3": lambda: sum(find_dp_coloring(g, c) is not None
                                              for g, c in SEARCH),
    "consistency 300 graphs n=12 k=3": lambda: sum(is_consistent(g, c) for g, c in CONSISTENT),
}

# warm-up compiles (or loads cached) kernels before timing
dp_colorable_for_all_consistent(cycle_graph(3), 2)
find_dp_coloring(*SEARCH[0])

out = {"backend": _kernels.backend(), "results": {}}
for name, fn in workloads.items():
    best, value = None, None
    for _ in range(repeat):
        t = time.perf_counter()
        value = fn()
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    out["results"][name] = {"seconds": best, "value": value}
print(json.dumps(out))
"""


def run(disabled: bool, repeat: int) -> dict:
    env = dict(os.environ)
    if disabled:
        env["DPCOLOR_DISABLE_NUMBA"] = "1"
    else:
        env.pop("DPCOLOR_DISABLE_NUMBA", None)
    proc = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                          capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    print(f"backends: {fast['backend']} vs {slow['backend']} (best of {args.repeat})")
    print(f"{'workload':<36}{'numba s':>10}{'python s':>11}{'speed-up':>10}  agree")
    ok = True
    for name, a in fast["results"].items():
        b = slow["results"][name]
        same = a["value"] == b["value"]
        ok &= same
        ratio = b["seconds"] / a["seconds"] if a["seconds"] else float("inf")
        print(f"{name:<36}{a['seconds']:>10.4f}{b['seconds']:>11.4f}{ratio:>9.1f}x  {same}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
