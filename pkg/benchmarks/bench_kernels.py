"""Benchmark the JIT-compiled kernels against the pure-Python fallback.

Run directly::

    python benchmarks/bench_kernels.py

The script re-executes itself once per backend (DIVGRAPH_NUMBA=1/0) and
prints a side-by-side table.  The workload is the hot path of the
acceptance suite: base-reduction and rank computation over a sample of
divisors on mid-sized fixture graphs.
"""

import json
import os
import subprocess
import sys
import time


def workload():
    import random

    from divgraph._kernels import kernel_backend
    from divgraph.divisors import Divisor, rank, reduce_divisor
    from divgraph.graphs import banana, complete_graph, subdivision, theta_graph

    graphs = {
        "B(2,2,2)": banana(2, 2, 2),
        "theta(2)": theta_graph(2),
        "B(3,3,3,3)": banana(3, 3, 3, 3),
        "sigma2(K4)": subdivision(complete_graph(4), 2),
    }
    rng = random.Random(42)
    results = {"backend": kernel_backend(), "timings": {}}
    for name, g in graphs.items():
        n = g.num_vertices
        divisors = []
        for _ in range(300):
            coeffs = [rng.randint(-3, 3) for _ in range(n)]
            divisors.append(Divisor(g, coeffs))
        # warm-up triggers JIT compilation outside the timed region; the
        # canonical divisor has small degree, so its rank runs the full
        # enumeration kernel rather than the closed-form shortcut
        reduce_divisor(divisors[0], 0)
        rank(Divisor(g, g.degrees - 2))
        t0 = time.perf_counter()
        for d in divisors:
            reduce_divisor(d, 0)
        t_reduce = time.perf_counter() - t0
        t0 = time.perf_counter()
        acc = 0
        for d in divisors[:60]:
            acc += rank(d)
        t_rank = time.perf_counter() - t0
        results["timings"][name] = {
            "reduce_300": t_reduce,
            "rank_60": t_rank,
            "rank_sum": acc,
        }
    return results


def main():
    if os.environ.get("DIVGRAPH_BENCH_CHILD"):
        print(json.dumps(workload()))
        return
    rows = {}
    for flag in ("1", "0"):
        env = dict(os.environ, DIVGRAPH_NUMBA=flag, DIVGRAPH_BENCH_CHILD="1")
        proc = subprocess.run(
            [sys.executable, os.path.abspath(__file__)],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        data = json.loads(proc.stdout.strip().splitlines()[-1])
        rows[data["backend"]] = data["timings"]
    backends = list(rows)
    print(f"{'graph':<14} {'op':<12} " + " ".join(f"{b:>10}" for b in backends) + "  speedup")
    checks = []
    for graph in next(iter(rows.values())):
        for op in ("reduce_300", "rank_60"):
            times = [rows[b][graph][op] for b in backends]
            ratio = times[1] / times[0] if times[0] > 0 else float("inf")
            print(
                f"{graph:<14} {op:<12} "
                + " ".join(f"{t:>9.4f}s" for t in times)
                + f"  {ratio:6.1f}x"
            )
        checks.append({rows[b][graph]["rank_sum"] for b in backends})
    assert all(len(c) == 1 for c in checks), "backends disagree on ranks"
    print("rank results identical across backends")


if __name__ == "__main__":
    main()
