"""Group structure of the degree-0 class group and its parity machinery.

The class group of a connected graph is finite of order equal to the
number of spanning trees; its invariant factors come from the Smith
normal form of the reduced Laplacian.  The order's parity controls a
chain of equivalent structures: an element of order two, a half-integer
flow pairing integrally with the cycle lattice, an Eulerian cut, and a
non-constant harmonic morphism onto the two-vertex two-edge graph.
All arithmetic is exact (Python integers).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .divisors import Divisor, DivisorClass, divisor_class
from .errors import SizeLimitError
from .forms import OneForm, flow_basis, gram_matrix
from .graphs import Multigraph, cut_from_side
from .morphisms import EDGE, VERTEX, GraphMorphism


def laplacian(graph):
    """Integer Laplacian matrix (degree on the diagonal, minus adjacency)."""
    n = graph.num_vertices
    out = [[0] * n for _ in range(n)]
    for u, v in graph.edges:
        out[u][u] += 1
        out[v][v] += 1
        out[u][v] -= 1
        out[v][u] -= 1
    return out


def reduced_laplacian(graph, base=0):
    """Laplacian with the base row and column deleted."""
    lap = laplacian(graph)
    keep = [x for x in range(graph.num_vertices) if x != base]
    return [[lap[i][j] for j in keep] for i in keep]


def _det_bareiss(matrix):
    """Exact integer determinant by fraction-free elimination."""
    m = [row[:] for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def spanning_tree_count(graph):
    """Number of spanning trees: determinant of the reduced Laplacian."""
    return _det_bareiss(reduced_laplacian(graph))


def invariant_factors(matrix):
    """Diagonal of the Smith normal form, nonnegative, each dividing the next."""
    m = [row[:] for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    out = []
    top = 0
    while top < min(rows, cols):
        # locate the smallest nonzero entry in the remaining block
        pivot = None
        for i in range(top, rows):
            for j in range(top, cols):
                if m[i][j] != 0 and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        m[top], m[i] = m[i], m[top]
        for row in m:
            row[top], row[j] = row[j], row[top]
        if m[top][top] < 0:
            m[top] = [-x for x in m[top]]
        piv = m[top][top]
        dirty = False
        for i in range(top + 1, rows):
            if m[i][top] % piv != 0:
                dirty = True
            q = m[i][top] // piv
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[top])]
        for j in range(top + 1, cols):
            if m[top][j] % piv != 0:
                dirty = True
            q = m[top][j] // piv
            if q:
                for row in m:
                    row[j] -= q * row[top]
        if dirty or any(m[i][top] for i in range(top + 1, rows)) or any(
            m[top][j] for j in range(top + 1, cols)
        ):
            continue
        # pivot must divide everything that remains
        offender = None
        for i in range(top + 1, rows):
            for j in range(top + 1, cols):
                if m[i][j] % piv != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            m[top] = [a + b for a, b in zip(m[top], m[offender])]
            continue
        out.append(piv)
        top += 1
    out += [0] * (min(rows, cols) - len(out))
    return out


@dataclass(frozen=True)
class JacobianStructure:
    """Invariant factors d1 | d2 | ... (ones included) and the group order."""

    invariant_factors: tuple
    order: int

    @property
    def nontrivial_factors(self):
        return tuple(d for d in self.invariant_factors if d != 1)


def jacobian_structure(graph):
    factors = invariant_factors(reduced_laplacian(graph))
    order = 1
    for d in factors:
        order *= d
    return JacobianStructure(tuple(factors), order)


# -- Abel-Jacobi maps --------------------------------------------------------


class AbelJacobi:
    """The class-valued map x -> [(x) - (base)] and its symmetric powers."""

    def __init__(self, graph, base):
        self.graph = graph
        self.base = base

    def __call__(self, x):
        return divisor_class(Divisor.at(self.graph, x) - Divisor.at(self.graph, self.base))

    def symmetric_power(self, effective):
        """Class of E - deg(E)(base) for an effective divisor E."""
        if not effective.is_effective:
            raise ValueError("symmetric power needs an effective divisor")
        shift = Divisor.at(self.graph, self.base, effective.degree)
        return divisor_class(effective - shift)


def abel_jacobi(graph, base=0):
    return AbelJacobi(graph, base)


def _effective_divisors(graph, k):
    """All effective divisors of degree k, in colex order of support."""
    import itertools

    n = graph.num_vertices
    for combo in itertools.combinations_with_replacement(range(n), k):
        coeffs = [0] * n
        for x in combo:
            coeffs[x] += 1
        yield Divisor(graph, coeffs)


def sk_injectivity(graph, k, max_vertices=12):
    """Direct injectivity test of the degree-k symmetric Abel-Jacobi map.

    Agrees with (k+1)-edge-connectivity; that agreement is one of the
    acceptance checks, so this stays a raw enumeration.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if graph.num_vertices > max_vertices:
        raise SizeLimitError(f"injectivity test limited to {max_vertices} vertices")
    aj = abel_jacobi(graph, 0)
    seen = {}
    for eff in _effective_divisors(graph, k):
        key = aj.symmetric_power(eff)
        if key in seen:
            return False
        seen[key] = eff
    return True


def jacobian_elements(graph, bound=5000):
    """Every degree-0 class, by closing the pointed classes under addition."""
    kappa = spanning_tree_count(graph)
    if kappa > bound:
        raise SizeLimitError(f"class group of order {kappa} exceeds the bound {bound}")
    aj = abel_jacobi(graph, 0)
    gens = [aj(x) for x in range(graph.num_vertices)]
    zero = DivisorClass.zero(graph)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for cls in frontier:
            for gen in gens:
                cand = cls + gen
                if cand not in seen:
                    seen.add(cand)
                    nxt.append(cand)
        frontier = nxt
    assert len(seen) == kappa
    return sorted(seen, key=lambda c: c.rep)


def verify_jac_pull_injective(phi, bound=5000):
    """Exhaustively check injectivity of the pullback on class groups."""
    from .morphisms import jac_pull

    images = set()
    elements = jacobian_elements(phi.target, bound)
    for cls in elements:
        images.add(jac_pull(phi, cls))
    return len(images) == len(elements)


def verify_jac_push_surjective(phi, bound=5000):
    """Exhaustively check surjectivity of the pushforward on class groups."""
    from .morphisms import jac_push

    targets = set(jacobian_elements(phi.target, bound))
    hit = set()
    for cls in jacobian_elements(phi.source, bound):
        hit.add(jac_push(phi, cls))
        if hit == targets:
            return True
    return hit == targets


# -- parity: two-torsion, Eulerian cuts, and maps onto two parallel edges ----


def _gf2_kernel_vector(matrix):
    """A nonzero mod-2 kernel vector, or None when the matrix is invertible."""
    n = len(matrix)
    m = [[matrix[i][j] & 1 for j in range(n)] for i in range(n)]
    cols = list(range(n))
    pivots = []
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if m[r][col]), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        for r in range(n):
            if r != row and m[r][col]:
                m[r] = [(a ^ b) for a, b in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
    if row == n:
        return None
    free = next(c for c in cols if c not in pivots)
    vec = [0] * n
    vec[free] = 1
    for r, col in enumerate(pivots):
        if m[r][free]:
            vec[col] = 1
    return vec


def two_torsion_flow(graph):
    """A half-integer flow pairing integrally with every cycle, when the
    number of spanning trees is even; None when it is odd.

    Built from a mod-2 kernel vector of the Gram matrix of the
    fundamental-cycle basis: the corresponding integral flow has all
    pairings even, so half of it is the witness.  It is non-integral
    because it is odd on at least one non-tree edge.
    """
    basis = flow_basis(graph)
    if not basis.flows:
        return None
    vec = _gf2_kernel_vector(gram_matrix(basis))
    if vec is None:
        return None
    total = OneForm(graph, [0] * graph.num_edges)
    for c, lam in zip(vec, basis.flows):
        if c:
            total = total + lam
    return Fraction(1, 2) * total


def eulerian_cut(graph):
    """A nonempty cut meeting every vertex in an even number of edges,
    present exactly when the number of spanning trees is even.

    The cut is the non-integral support of the two-torsion flow; sides
    are recovered by walking the graph and flipping parity on support
    edges.
    """
    omega = two_torsion_flow(graph)
    if omega is None:
        return None
    support = {j for j, v in enumerate(omega.values) if v.denominator != 1}
    assert support
    side = {}
    side[0] = 0
    stack = [0]
    indptr, nbr, eid = graph._incidence
    while stack:
        x = stack.pop()
        for i in range(indptr[x], indptr[x + 1]):
            y = int(nbr[i])
            parity = side[x] ^ (1 if int(eid[i]) in support else 0)
            if y not in side:
                side[y] = parity
                stack.append(y)
            elif side[y] != parity:
                raise AssertionError("two-torsion support does not split the graph")
    side_a = frozenset(x for x, p in side.items() if p == 1)
    cut = cut_from_side(graph, side_a)
    assert cut.edges == frozenset(support)
    return cut


def is_eulerian_cut(graph, cut):
    """Independent re-check: boundary matches and every incidence count is even."""
    if not cut.edges:
        return False
    recomputed = cut_from_side(graph, cut.side_a)
    if recomputed.edges != cut.edges:
        return False
    count = [0] * graph.num_vertices
    for j in cut.edges:
        u, v = graph.edges[j]
        count[u] += 1
        count[v] += 1
    return all(c % 2 == 0 for c in count)


def banana2():
    """Two vertices joined by two parallel edges (the parity target)."""
    return Multigraph(2, [(0, 1), (0, 1)])


def morphism_to_b2(graph):
    """A non-constant harmonic morphism onto the two-edge banana, present
    exactly when the number of spanning trees is even.

    Construction: take an Eulerian cut, walk its support (every support
    degree is even) as closed walks, and 2-color the walk edges
    alternately; sides of the cut become the two target vertices, the
    color classes the two parallel edges, everything else collapses.
    """
    cut = eulerian_cut(graph)
    if cut is None:
        return None
    support = set(cut.edges)
    # split support into closed walks; alternation around an even closed
    # walk balances the two colors at every visited vertex
    incident = {x: [] for x in range(graph.num_vertices)}
    for j in support:
        u, v = graph.edges[j]
        incident[u].append(j)
        incident[v].append(j)
    unused = set(support)
    color = {}
    while unused:
        start_edge = min(unused)
        walk = []
        j = start_edge
        x = graph.edges[j][0]
        while True:
            walk.append(j)
            unused.discard(j)
            u, v = graph.edges[j]
            x = v if u == x else u
            nxt = next((e for e in incident[x] if e in unused), None)
            if nxt is None:
                break
            j = nxt
        for pos, e in enumerate(walk):
            color[e] = pos % 2
    target = banana2()
    vmap = tuple(1 if x in cut.side_a else 0 for x in range(graph.num_vertices))
    emap = []
    for j, (u, v) in enumerate(graph.edges):
        if j in support:
            emap.append((EDGE, color[j]))
        else:
            emap.append((VERTEX, vmap[u]))
    return GraphMorphism(graph, target, vmap, tuple(emap))
