"""Independent brute-force oracles.

Everything here re-derives results from first principles, using only
Laplacian arithmetic and exhaustive search, never the package's
reduction/rank machinery.  Equivalence is decided exactly by solving
the Laplacian system over the rationals and checking integrality (a
bounded search over potentials is not complete: on the 4-vertex path,
coefficient-bound-3 pairs exist whose potential needs entries of size
18).
"""

import itertools
from fractions import Fraction


def laplacian_image(n, edges, f):
    out = [0] * n
    for u, v in edges:
        out[u] += f[u] - f[v]
        out[v] += f[v] - f[u]
    return out


def oracle_equivalent(graph, c1, c2):
    """Exact linear-equivalence test via rational solve + integrality."""
    n = graph.num_vertices
    c1, c2 = list(c1), list(c2)
    if sum(c1) != sum(c2):
        return False
    if n == 1:
        return True
    diff = [Fraction(a - b) for a, b in zip(c1, c2)]
    size = n - 1
    aug = [[Fraction(0)] * size + [diff[i + 1]] for i in range(size)]
    for u, v in graph.edges:
        if u > 0:
            aug[u - 1][u - 1] += 1
        if v > 0:
            aug[v - 1][v - 1] += 1
        if u > 0 and v > 0:
            aug[u - 1][v - 1] -= 1
            aug[v - 1][u - 1] -= 1
    for col in range(size):
        piv = next(r for r in range(col, size) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col]
        aug[col] = [x / inv for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    f = [Fraction(0)] + [aug[r][size] for r in range(size)]
    if any(x.denominator != 1 for x in f):
        return False
    fi = [int(x) for x in f]
    return laplacian_image(n, graph.edges, fi) == [a - b for a, b in zip(c1, c2)]


def bounded_potential_search(graph, c1, c2, bound=6):
    """The one-sided search oracle: True means definitely equivalent."""
    n = graph.num_vertices
    if sum(c1) != sum(c2):
        return False
    target = [a - b for a, b in zip(c1, c2)]
    for rest in itertools.product(range(-bound, bound + 1), repeat=n - 1):
        f = (0,) + rest
        if laplacian_image(n, graph.edges, f) == target:
            return True
    return False


def _effective_tuples(n, k):
    for combo in itertools.combinations_with_replacement(range(n), k):
        coeffs = [0] * n
        for x in combo:
            coeffs[x] += 1
        yield coeffs


def oracle_has_effective(graph, coeffs):
    deg = sum(coeffs)
    if deg < 0:
        return False
    return any(
        oracle_equivalent(graph, coeffs, eff)
        for eff in _effective_tuples(graph.num_vertices, deg)
    )


def oracle_rank(graph, coeffs):
    """Rank straight from the definition, on top of the exact
    equivalence oracle.  Only viable for tiny graphs and degrees."""
    coeffs = list(coeffs)
    if not oracle_has_effective(graph, coeffs):
        return -1
    k = 1
    while True:
        for eff in _effective_tuples(graph.num_vertices, k):
            probe = [a - b for a, b in zip(coeffs, eff)]
            if not oracle_has_effective(graph, probe):
                return k - 1
        k += 1


def oracle_spanning_trees(graph):
    """Count spanning trees by checking every (n-1)-edge subset."""
    n, m = graph.num_vertices, graph.num_edges
    if n == 1:
        return 1
    count = 0
    for subset in itertools.combinations(range(m), n - 1):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        acyclic = True
        for j in subset:
            u, v = graph.edges[j]
            ru, rv = find(u), find(v)
            if ru == rv:
                acyclic = False
                break
            parent[ru] = rv
        if acyclic:
            count += 1
    return count


def oracle_edge_connectivity(graph):
    """Minimum cut size over every vertex bipartition."""
    n = graph.num_vertices
    best = None
    for r in range(1, n):
        for side in itertools.combinations(range(1, n), r - 1):
            inside = {0, *side}
            size = sum(1 for u, v in graph.edges if (u in inside) != (v in inside))
            if best is None or size < best:
                best = size
    return best
