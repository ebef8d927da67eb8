"""Hot integer kernels: divisor reduction and the rank search inner loop.

These run millions of times during rank computations and the acceptance
scans, so they are JIT-compiled with numba when it is importable.  Set
``DIVGRAPH_NUMBA=0`` to force the pure-Python/numpy fallback (same code,
uncompiled); ``divgraph.kernel_backend()`` reports which one is active.
Graphs enter as CSR incidence arrays (indptr, nbr) plus BFS distances
from the base vertex, divisors as int64 coefficient arrays.
"""

import os

import numpy as np


def _numba_enabled():
    flag = os.environ.get("DIVGRAPH_NUMBA", "1").strip().lower()
    if flag in ("0", "false", "no", "off"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


USING_NUMBA = _numba_enabled()

_MAX_FIRE_ROUNDS = 10_000_000


def _qreduce_impl(indptr, nbr, dist, base, coeffs):
    """Bring coeffs to the base-reduced representative of its class, in place.

    Phase 1 clears debt off the base: walking distance levels outside-in,
    the level set {dist >= level} is unfired enough times to make the
    whole level nonnegative; only the next level in pays, so one sweep
    suffices.  Phase 2 is burning from the base: a vertex ignites when
    its count of edges to burnt vertices exceeds its coefficient, and any
    surviving set is fired as often as its boundary allows.  Returns 0,
    or 1 if the firing loop failed to settle (cannot happen for a
    connected graph; kept as a guard).
    """
    n = coeffs.shape[0]
    maxdist = 0
    for x in range(n):
        if dist[x] > maxdist:
            maxdist = dist[x]
    for level in range(maxdist, 0, -1):
        need = 0
        for x in range(n):
            if dist[x] == level and coeffs[x] < 0:
                c = 0
                for i in range(indptr[x], indptr[x + 1]):
                    if dist[nbr[i]] == level - 1:
                        c += 1
                want = (-coeffs[x] + c - 1) // c
                if want > need:
                    need = want
        if need > 0:
            for x in range(n):
                if dist[x] == level:
                    for i in range(indptr[x], indptr[x + 1]):
                        if dist[nbr[i]] == level - 1:
                            coeffs[x] += need
                            coeffs[nbr[i]] -= need
    burnt = np.empty(n, np.bool_)
    burn_count = np.empty(n, np.int64)
    stack = np.empty(n, np.int64)
    for _ in range(_MAX_FIRE_ROUNDS):
        for x in range(n):
            burnt[x] = False
            burn_count[x] = 0
        stack[0] = base
        top = 1
        burnt[base] = True
        nburnt = 1
        while top > 0:
            top -= 1
            x = stack[top]
            for i in range(indptr[x], indptr[x + 1]):
                y = nbr[i]
                if not burnt[y]:
                    burn_count[y] += 1
                    if burn_count[y] > coeffs[y]:
                        burnt[y] = True
                        stack[top] = y
                        top += 1
                        nburnt += 1
        if nburnt == n:
            return 0
        # fire the surviving set as many times as its boundary permits
        times = -1
        for x in range(n):
            if not burnt[x] and burn_count[x] > 0:
                q = coeffs[x] // burn_count[x]
                if times < 0 or q < times:
                    times = q
        if times < 1:
            times = 1
        for x in range(n):
            if not burnt[x]:
                crossing = 0
                for i in range(indptr[x], indptr[x + 1]):
                    y = nbr[i]
                    if burnt[y]:
                        coeffs[y] += times
                        crossing += 1
                coeffs[x] -= times * crossing
    return 1


if USING_NUMBA:
    from numba import njit

    qreduce = njit(cache=True)(_qreduce_impl)
else:
    qreduce = _qreduce_impl


def _rank_geq_impl(indptr, nbr, dist, base, dred, k):
    """True when |dred - E| is nonempty for every effective degree-k E.

    dred must already be base-reduced.  Candidates E run over all
    compositions of k into vertex slots in colexicographic order; a
    class has an effective representative exactly when the reduced form
    is nonnegative at the base (the other vertices are nonnegative by
    construction).
    """
    n = dred.shape[0]
    e = np.zeros(n, np.int64)
    tmp = np.empty(n, np.int64)
    e[0] = k
    while True:
        for i in range(n):
            tmp[i] = dred[i] - e[i]
        qreduce(indptr, nbr, dist, base, tmp)
        if tmp[base] < 0:
            return False
        if e[n - 1] == k:
            return True
        # next composition in colex order
        i = 0
        while e[i] == 0:
            i += 1
        v = e[i]
        e[i] = 0
        e[0] = v - 1
        e[i + 1] += 1


if USING_NUMBA:
    rank_geq = njit(cache=True)(_rank_geq_impl)
else:
    rank_geq = _rank_geq_impl


def kernel_backend():
    """'numba' when kernels are JIT-compiled, else 'python'."""
    return "numba" if USING_NUMBA else "python"
