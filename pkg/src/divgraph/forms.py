"""Harmonic 1-forms (flows) with exact rational values.

A 1-form assigns a rational to every directed edge, antisymmetrically;
we store one value per edge on its stored orientation (first endpoint
towards second).  A flow is a 1-form whose coboundary vanishes at every
vertex; the flow space has dimension equal to the genus and carries a
deterministic fundamental-cycle basis built from a breadth-first
spanning tree rooted at vertex 0.

Everything here is exact: all claims are equalities, so no floating
point appears anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import HypothesisError
from .morphisms import EDGE, _certificate


class OneForm:
    """Antisymmetric rational edge function on a fixed graph."""

    __slots__ = ("graph", "values")

    def __init__(self, graph, values):
        vals = tuple(Fraction(v) for v in values)
        if len(vals) != graph.num_edges:
            raise ValueError("one value per edge required")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "values", vals)

    def __setattr__(self, name, value):
        raise AttributeError("OneForm is immutable")

    def on_directed(self, edge, reverse=False):
        """Value on edge with its stored orientation, negated if reversed."""
        v = self.values[edge]
        return -v if reverse else v

    def __add__(self, other):
        if self.graph != other.graph:
            raise ValueError("forms live on different graphs")
        return OneForm(self.graph, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return OneForm(self.graph, [-v for v in self.values])

    def __mul__(self, scalar):
        s = Fraction(scalar)
        return OneForm(self.graph, [s * v for v in self.values])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, OneForm):
            return NotImplemented
        return self.graph == other.graph and self.values == other.values

    def __hash__(self):
        return hash((self.graph, self.values))

    def __repr__(self):
        return f"OneForm({[str(v) for v in self.values]})"

    @property
    def is_integral(self):
        return all(v.denominator == 1 for v in self.values)

    @property
    def is_zero(self):
        return all(v == 0 for v in self.values)


def coboundary(form):
    """Net inflow at each vertex: the sum of values over edges directed in."""
    out = [Fraction(0)] * form.graph.num_vertices
    for j, (u, v) in enumerate(form.graph.edges):
        out[v] += form.values[j]
        out[u] -= form.values[j]
    return out


def is_flow(form):
    return all(x == 0 for x in coboundary(form))


@dataclass(frozen=True)
class FlowBasis:
    """Fundamental-cycle basis over a fixed spanning tree.

    One flow per non-tree edge, valued 1 on that edge and +-1 along the
    tree path closing the cycle.  Coordinates of any flow in this basis
    are simply its values on the non-tree edges, in order.
    """

    tree_edges: tuple
    nontree_edges: tuple
    flows: tuple


def flow_basis(graph):
    """Deterministic basis of the flow space (size = genus).

    The spanning tree comes from breadth-first search from vertex 0
    scanning edges in id order; non-tree edges are taken in id order.
    """
    n = graph.num_vertices
    indptr, nbr, eid = graph._incidence
    parent_edge = [-1] * n
    parent = [-1] * n
    depth = [0] * n
    seen = [False] * n
    seen[0] = True
    order = [0]
    head = 0
    tree = set()
    while head < len(order):
        x = order[head]
        head += 1
        for i in range(indptr[x], indptr[x + 1]):
            y = int(nbr[i])
            if not seen[y]:
                seen[y] = True
                e = int(eid[i])
                tree.add(e)
                parent[y] = x
                parent_edge[y] = e
                depth[y] = depth[x] + 1
                order.append(y)
    nontree = tuple(j for j in range(graph.num_edges) if j not in tree)
    flows = []
    for j in nontree:
        vals = [Fraction(0)] * graph.num_edges
        vals[j] = Fraction(1)
        u, v = graph.edges[j]
        # close the cycle along tree paths: walk both endpoints to their
        # common ancestor, orienting the walk v -> u
        a, b = v, u
        from_v, from_u = [], []
        da, db = depth[a], depth[b]
        while da > db:
            from_v.append(a)
            a = parent[a]
            da -= 1
        while db > da:
            from_u.append(b)
            b = parent[b]
            db -= 1
        while a != b:
            from_v.append(a)
            from_u.append(b)
            a, b = parent[a], parent[b]
        walk = []
        for z in from_v:
            walk.append((z, parent[z], parent_edge[z]))
        for z in reversed(from_u):
            walk.append((parent[z], z, parent_edge[z]))
        for src, dst, e in walk:
            eu, ev = graph.edges[e]
            vals[e] += Fraction(1) if (src, dst) == (eu, ev) else Fraction(-1)
        flows.append(OneForm(graph, vals))
    return FlowBasis(tuple(sorted(tree)), nontree, tuple(flows))


def flow_coordinates(basis, form):
    """Coordinates in the fundamental-cycle basis (form must be a flow)."""
    return tuple(form.values[j] for j in basis.nontree_edges)


def flow_from_coordinates(basis, coords):
    graph = basis.flows[0].graph if basis.flows else None
    if graph is None:
        raise ValueError("empty basis has no coordinates")
    out = OneForm(graph, [0] * graph.num_edges)
    for c, lam in zip(coords, basis.flows):
        out = out + Fraction(c) * lam
    return out


def gram_matrix(basis):
    """Pairwise inner products of the basis flows (integer entries).

    The determinant equals the number of spanning trees, which is what
    links the flow lattice to the order of the Jacobian.
    """
    flows = basis.flows
    g = len(flows)
    out = [[0] * g for _ in range(g)]
    for i in range(g):
        for j in range(g):
            s = sum(a * b for a, b in zip(flows[i].values, flows[j].values))
            assert s.denominator == 1
            out[i][j] = int(s)
    return out


# -- transport along harmonic morphisms -------------------------------------


def pull_form(phi, form):
    """Pullback: read the value of the image edge, zero on collapsed edges."""
    if form.graph != phi.target:
        raise ValueError("form does not live on the target")
    _certificate(phi)
    vals = []
    for j, (u, v) in enumerate(phi.source.edges):
        kind, i = phi.emap[j]
        if kind != EDGE:
            vals.append(Fraction(0))
            continue
        a, b = phi.target.edges[i]
        if (phi.vmap[u], phi.vmap[v]) == (a, b):
            vals.append(form.values[i])
        else:
            vals.append(-form.values[i])
    return OneForm(phi.source, vals)


def push_form(phi, form):
    """Trace: sum source values over each target edge fiber, with signs."""
    if form.graph != phi.source:
        raise ValueError("form does not live on the source")
    _certificate(phi)
    vals = [Fraction(0)] * phi.target.num_edges
    for j, (u, v) in enumerate(phi.source.edges):
        kind, i = phi.emap[j]
        if kind != EDGE:
            continue
        a, b = phi.target.edges[i]
        if (phi.vmap[u], phi.vmap[v]) == (a, b):
            vals[i] += form.values[j]
        else:
            vals[i] -= form.values[j]
    return OneForm(phi.target, vals)


# -- automorphism action on the flow space ----------------------------------


def aut_action_matrix(alpha):
    """Matrix of the pullback action on flows in the fundamental basis.

    Column j holds the coordinates of the pullback of the j-th basis
    flow; composition is contravariant: matrix(a after b) =
    matrix(b) @ matrix(a).
    """
    basis = flow_basis(alpha.source)
    g = len(basis.flows)
    cols = []
    for lam in basis.flows:
        cols.append(flow_coordinates(basis, pull_form(alpha, lam)))
    return [[cols[j][i] for j in range(g)] for i in range(g)]


def _mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [
        [sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)
    ]


def _mat_inverse(a):
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(i == j) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col]
        aug[col] = [x / inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _identity(n):
    return [[Fraction(i == j) for j in range(n)] for i in range(n)]


def aut_faithfulness_check(graph, autos=None, max_vertices=10):
    """Distinct automorphisms act by distinct matrices on the flow space.

    Requires a 2-edge-connected graph of genus at least 2; a bridge or
    low genus makes the statement inapplicable and raises.
    """
    from .graphs import bridges
    from .morphisms import automorphism_group

    if graph.genus < 2 or bridges(graph):
        raise HypothesisError(
            "faithfulness needs a 2-edge-connected graph of genus at least 2"
        )
    if autos is None:
        autos = automorphism_group(graph, max_vertices=max_vertices)
    seen = set()
    for a in autos:
        key = tuple(tuple(row) for row in aut_action_matrix(a))
        if key in seen:
            return False
        seen.add(key)
    return True


def gl_integrality_check(alpha):
    """The flow-space matrix of an automorphism is integral with integral
    inverse (so the automorphism group embeds in GL(genus, Z))."""
    mat = aut_action_matrix(alpha)
    if any(x.denominator != 1 for row in mat for x in row):
        return False
    inv = _mat_inverse(mat)
    return all(x.denominator == 1 for row in inv for x in row)


# -- the canonical map -------------------------------------------------------


def edge_functional(basis, edge):
    """Row vector of basis-flow values on an edge (evaluation functional)."""
    return tuple(lam.values[edge] for lam in basis.flows)


def _normalize(vec):
    lead = next((v for v in vec if v != 0), None)
    if lead is None:
        return None
    return tuple(v / lead for v in vec)


def canonical_map(graph):
    """Per edge, the normalized evaluation functional on the flow space.

    The kernel of the functional of e is the hyperplane of flows
    vanishing on e; normalizing (first nonzero entry 1) identifies
    proportional functionals, i.e. equal hyperplanes.  Needs a
    2-edge-connected graph so every functional is nonzero.
    """
    from .graphs import bridges

    if bridges(graph):
        raise HypothesisError("canonical map needs a bridgeless graph")
    basis = flow_basis(graph)
    out = []
    for e in range(graph.num_edges):
        norm = _normalize(edge_functional(basis, e))
        if norm is None:  # impossible without a bridge
            raise HypothesisError(f"edge {e} carries no flow")
        out.append(norm)
    return out


def is_canonical_injective(graph):
    """Whether distinct edges get distinct hyperplanes; this matches
    3-edge-connectivity."""
    functionals = canonical_map(graph)
    return len(set(functionals)) == len(functionals)


def canonical_fibers(graph):
    """Edges grouped by their hyperplane, each fiber sorted by edge id."""
    groups = {}
    for e, func in enumerate(canonical_map(graph)):
        groups.setdefault(func, []).append(e)
    return sorted(groups.values())
