"""The JIT kernels and the pure-Python fallback must agree exactly."""

import json
import os
import subprocess
import sys

import numpy as np

from divgraph import _kernels
from divgraph.divisors import Divisor, rank, reduce_divisor
from divgraph.graphs import banana, complete_graph, cycle_graph, theta_graph

CASES = [
    ("C5", [3, -2, 0, 1, -1]),
    ("K4", [-3, 2, 2, 1]),
    ("B(2,2,2)", [4, -3, 1, 0, 0]),
    ("theta2", [1, 1, -2, 0, 3, -1]),
]


def _graphs():
    return {
        "C5": cycle_graph(5),
        "K4": complete_graph(4),
        "B(2,2,2)": banana(2, 2, 2),
        "theta2": theta_graph(2),
    }


def _compute_all():
    graphs = _graphs()
    out = {}
    for name, coeffs in CASES:
        g = graphs[name]
        d = Divisor(g, coeffs)
        out[name] = {
            "reduced": reduce_divisor(d, 0).coeffs.tolist(),
            "rank": rank(d),
            "rank_k": rank(Divisor(g, g.degrees - 2)),
        }
    return out


def test_backend_reporting():
    assert _kernels.kernel_backend() in ("numba", "python")
    assert _kernels.kernel_backend() == ("numba" if _kernels.USING_NUMBA else "python")


def test_python_fallback_matches_active_backend():
    here = _compute_all()
    code = (
        "import json, sys; sys.path.insert(0, %r); "
        "from test_kernels import _compute_all; "
        "print(json.dumps(_compute_all()))" % os.path.dirname(__file__)
    )
    env = dict(os.environ, DIVGRAPH_NUMBA="0")
    proc = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True
    )
    assert proc.returncode == 0, proc.stderr
    fallback = json.loads(proc.stdout.strip().splitlines()[-1])
    assert fallback == here


def test_fallback_flag_forces_python():
    code = "import divgraph._kernels as k; print(k.kernel_backend())"
    env = dict(os.environ, DIVGRAPH_NUMBA="0")
    proc = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True
    )
    assert proc.stdout.strip() == "python"


def test_kernel_direct_call_trivial_graph():
    # a single vertex: nothing to burn, nothing to fire
    indptr = np.zeros(2, dtype=np.int64)
    nbr = np.zeros(0, dtype=np.int64)
    dist = np.zeros(1, dtype=np.int64)
    coeffs = np.array([-5], dtype=np.int64)
    assert _kernels.qreduce(indptr, nbr, dist, 0, coeffs) == 0
    assert coeffs.tolist() == [-5]
    assert _kernels.rank_geq(indptr, nbr, dist, 0, np.array([3], dtype=np.int64), 2)
    assert not _kernels.rank_geq(indptr, nbr, dist, 0, np.array([3], dtype=np.int64), 4)
