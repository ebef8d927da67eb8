"""Finite connected loopless multigraphs and their combinatorial invariants.

Vertices of a graph on ``n`` vertices are always the integers ``0..n-1``.
Edges are an ordered sequence of unordered endpoint pairs; parallel edges
are allowed and are told apart by their position in that sequence (the
edge id).  All graph values are immutable after construction, so they can
be shared freely between threads.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import SizeLimitError

# Exhaustive cut enumeration is exact and fast up to this many vertices;
# beyond it edge connectivity falls back to repeated max-flow.
_CUT_ENUM_LIMIT = 20


class Multigraph:
    """A finite connected multigraph without loop edges.

    Parameters
    ----------
    vertex_count : int
        Number of vertices, at least 1.
    edges : iterable of (int, int)
        Unordered endpoint pairs.  Loops (equal endpoints) are rejected;
        parallel pairs are kept and distinguished by edge id.
    """

    def __init__(self, vertex_count, edges):
        n = int(vertex_count)
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        es = []
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"loop edge at vertex {u} is not allowed")
            es.append((u, v))
        self.num_vertices = n
        self.edges = tuple(es)
        if not self._is_connected():
            raise ValueError("graph must be connected")

    # -- basic structure ------------------------------------------------

    @property
    def num_edges(self):
        return len(self.edges)

    @property
    def genus(self):
        """Cycle-space dimension |E| - |V| + 1."""
        return len(self.edges) - self.num_vertices + 1

    @cached_property
    def degrees(self):
        d = np.zeros(self.num_vertices, dtype=np.int64)
        for u, v in self.edges:
            d[u] += 1
            d[v] += 1
        d.flags.writeable = False
        return d

    def degree(self, x):
        return int(self.degrees[x])

    @cached_property
    def _incidence(self):
        """CSR incidence: per vertex the incident edges sorted by edge id.

        Returns (indptr, nbr, eid): for slot i of vertex x the incident
        edge eid[i] leads to the opposite endpoint nbr[i].  Parallel
        edges occupy one slot each.
        """
        n = self.num_vertices
        indptr = np.zeros(n + 1, dtype=np.int64)
        for u, v in self.edges:
            indptr[u + 1] += 1
            indptr[v + 1] += 1
        indptr = np.cumsum(indptr).astype(np.int64)
        nbr = np.zeros(2 * len(self.edges), dtype=np.int64)
        eid = np.zeros(2 * len(self.edges), dtype=np.int64)
        fill = indptr[:-1].copy()
        for j, (u, v) in enumerate(self.edges):
            nbr[fill[u]] = v
            eid[fill[u]] = j
            fill[u] += 1
            nbr[fill[v]] = u
            eid[fill[v]] = j
            fill[v] += 1
        for arr in (indptr, nbr, eid):
            arr.flags.writeable = False
        return indptr, nbr, eid

    def incident_edges(self, x):
        """Edge ids incident to x, in increasing id order."""
        indptr, _, eid = self._incidence
        return [int(e) for e in eid[indptr[x]:indptr[x + 1]]]

    def neighbors(self, x):
        """Opposite endpoints over incident edges (with repetition)."""
        indptr, nbr, _ = self._incidence
        return [int(y) for y in nbr[indptr[x]:indptr[x + 1]]]

    @cached_property
    def _multiplicity(self):
        m = {}
        for u, v in self.edges:
            key = (u, v) if u < v else (v, u)
            m[key] = m.get(key, 0) + 1
        return m

    def multiplicity(self, u, v):
        """Number of parallel edges joining u and v."""
        key = (u, v) if u < v else (v, u)
        return self._multiplicity.get(key, 0)

    @cached_property
    def parallel_classes(self):
        """Mapping (u, v) with u < v -> sorted tuple of edge ids joining them."""
        classes = {}
        for j, (u, v) in enumerate(self.edges):
            key = (u, v) if u < v else (v, u)
            classes.setdefault(key, []).append(j)
        return {k: tuple(v) for k, v in classes.items()}

    def _is_connected(self):
        n = self.num_vertices
        if n == 1:
            return True
        adj = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = [False] * n
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    count += 1
                    queue.append(y)
        return count == n

    def distances_from(self, q):
        """BFS distance of every vertex from q (immutable int64 array)."""
        cache = self.__dict__.setdefault("_dist_cache", {})
        if q not in cache:
            n = self.num_vertices
            indptr, nbr, _ = self._incidence
            dist = np.full(n, -1, dtype=np.int64)
            dist[q] = 0
            queue = deque([q])
            while queue:
                x = queue.popleft()
                for i in range(indptr[x], indptr[x + 1]):
                    y = int(nbr[i])
                    if dist[y] < 0:
                        dist[y] = dist[x] + 1
                        queue.append(y)
            dist.flags.writeable = False
            cache[q] = dist
        return cache[q]

    # -- value semantics -------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.num_vertices == other.num_vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.num_vertices, self.edges))

    def __repr__(self):
        return f"Multigraph({self.num_vertices}, {list(self.edges)})"

    # -- JSON ------------------------------------------------------------

    def to_json_dict(self):
        return {"vertices": self.num_vertices, "edges": [[u, v] for u, v in self.edges]}

    @classmethod
    def from_json_dict(cls, data):
        try:
            n = data["vertices"]
            edges = data["edges"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"graph JSON needs 'vertices' and 'edges': {exc}") from exc
        return cls(n, [tuple(e) for e in edges])


# -- named families -------------------------------------------------------


def banana(*lengths):
    """Graph with two poles joined by internally disjoint paths.

    ``banana(l_1, ..., l_k)`` has poles 0 and 1 and, for each length
    ``l_i >= 1``, a path of ``l_i`` edges from 0 to 1.  Internal path
    vertices are numbered consecutively from 2, path by path, walking
    from pole 0 towards pole 1; edges are laid out in the same order.
    """
    if len(lengths) == 0:
        raise ValueError("banana needs at least one path")
    if any(l < 1 for l in lengths):
        raise ValueError("path lengths must be at least 1")
    edges = []
    nxt = 2
    for length in lengths:
        prev = 0
        for step in range(length):
            if step == length - 1:
                edges.append((prev, 1))
            else:
                edges.append((prev, nxt))
                prev = nxt
                nxt += 1
    return Multigraph(nxt, edges)


def uniform_banana(n):
    """Two vertices joined by n parallel edges (banana with unit paths)."""
    return banana(*([1] * n))


def theta_graph(length):
    """Two disjoint paths of the given length whose corresponding ends are
    joined by a pair of parallel edges on each side.

    Vertices: the first path is 0..length, the second length+1..2*length+1;
    path edges come first (first path then second), then the two parallel
    edges at the 0-end, then the two at the far end.  Genus is always 3.
    """
    if length < 1:
        raise ValueError("length must be at least 1")
    top = list(range(length + 1))
    bot = list(range(length + 1, 2 * length + 2))
    edges = []
    edges += [(top[i], top[i + 1]) for i in range(length)]
    edges += [(bot[i], bot[i + 1]) for i in range(length)]
    edges += [(top[0], bot[0]), (top[0], bot[0])]
    edges += [(top[-1], bot[-1]), (top[-1], bot[-1])]
    return Multigraph(2 * length + 2, edges)


def cycle_graph(n):
    """Cycle with n vertices; n = 2 gives two parallel edges."""
    if n < 2:
        raise ValueError("cycle needs at least 2 vertices")
    return Multigraph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n):
    """Path with n vertices (n - 1 edges); n = 1 is the trivial graph."""
    if n < 1:
        raise ValueError("path needs at least 1 vertex")
    return Multigraph(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n):
    if n < 1:
        raise ValueError("complete graph needs at least 1 vertex")
    return Multigraph(n, list(itertools.combinations(range(n), 2)))


def subdivision(graph, k):
    """Replace every edge by a path of k edges.

    Original vertices keep their ids; the k - 1 inner vertices of edge j
    are appended in walk order from the stored first endpoint, so
    ``subdivision(G, 1)`` is G itself with identical labels.
    """
    if k < 1:
        raise ValueError("subdivision factor must be at least 1")
    n = graph.num_vertices
    edges = []
    nxt = n
    for u, v in graph.edges:
        prev = u
        for step in range(k):
            if step == k - 1:
                edges.append((prev, v))
            else:
                edges.append((prev, nxt))
                prev = nxt
                nxt += 1
    return Multigraph(nxt, edges)


# -- cuts and connectivity -------------------------------------------------


@dataclass(frozen=True)
class Cut:
    """A vertex bipartition side together with its boundary edge set."""

    side_a: frozenset
    edges: frozenset


def cut_from_side(graph, side):
    """Cut determined by a nonempty proper vertex subset."""
    side = frozenset(int(x) for x in side)
    if not side or len(side) >= graph.num_vertices:
        raise ValueError("cut side must be a nonempty proper vertex subset")
    boundary = frozenset(
        j for j, (u, v) in enumerate(graph.edges) if (u in side) != (v in side)
    )
    return Cut(side_a=side, edges=boundary)


def edge_connectivity(graph):
    """Minimum size of a nonempty cut; the trivial graph reports +inf.

    Exhaustive over all bipartitions up to 20 vertices, max-flow beyond.
    """
    n = graph.num_vertices
    if n == 1:
        return float("inf")
    if n <= _CUT_ENUM_LIMIT:
        masks = [(1 << u) | (1 << v) for u, v in graph.edges]
        best = len(graph.edges)
        # sides containing vertex 0, proper subsets only
        for side in range(1 << (n - 1)):
            s = (side << 1) | 1
            if s == (1 << n) - 1:
                continue
            size = 0
            for mask in masks:
                hit = mask & s
                if hit != 0 and hit != mask:
                    size += 1
            if size < best:
                best = size
        return best
    best = None
    for t in range(1, n):
        flow = _max_flow(graph, 0, t)
        if best is None or flow < best:
            best = flow
    return best


def _max_flow(graph, s, t):
    # Edmonds-Karp on the doubled directed graph with unit capacities per
    # parallel edge; only used past the exhaustive-enumeration limit.
    n = graph.num_vertices
    cap = [dict() for _ in range(n)]
    for u, v in graph.edges:
        cap[u][v] = cap[u].get(v, 0) + 1
        cap[v][u] = cap[v].get(u, 0) + 1
    total = 0
    while True:
        parent = [-1] * n
        parent[s] = s
        queue = deque([s])
        while queue and parent[t] < 0:
            x = queue.popleft()
            for y, c in cap[x].items():
                if c > 0 and parent[y] < 0:
                    parent[y] = x
                    queue.append(y)
        if parent[t] < 0:
            return total
        # bottleneck along the BFS path
        path = []
        y = t
        while y != s:
            path.append((parent[y], y))
            y = parent[y]
        aug = min(cap[x][y] for x, y in path)
        for x, y in path:
            cap[x][y] -= aug
            cap[y][x] = cap[y].get(x, 0) + aug
        total += aug


def is_k_edge_connected(graph, k):
    """True when every nonempty cut has at least k edges.

    The trivial one-vertex graph counts as k-edge-connected for every k.
    """
    if graph.num_vertices == 1:
        return True
    if k <= 1:
        return True
    return edge_connectivity(graph) >= k


def bridges(graph):
    """Edge ids whose deletion disconnects the graph."""
    n = graph.num_vertices
    indptr, nbr, eid = graph._incidence
    disc = [-1] * n
    low = [0] * n
    out = set()
    timer = 0
    # iterative DFS; a parallel edge is never a bridge because the twin
    # copy acts as a back edge
    stack = [(0, -1, indptr[0])]
    disc[0] = low[0] = 0
    timer = 1
    while stack:
        x, in_edge, i = stack[-1]
        if i < indptr[x + 1]:
            stack[-1] = (x, in_edge, i + 1)
            e = int(eid[i])
            if e == in_edge:
                continue
            y = int(nbr[i])
            if disc[y] < 0:
                disc[y] = low[y] = timer
                timer += 1
                stack.append((y, e, indptr[y]))
            else:
                low[x] = min(low[x], disc[y])
        else:
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[x])
                if low[x] > disc[p]:
                    out.add(in_edge)
    return frozenset(out)


def contract_bridges(graph):
    """Contract every bridge.

    Returns the 2-edge-connected result together with the vertex
    surjection rho (a tuple mapping old vertex ids to new ones).  New ids
    follow the order of the smallest original vertex in each merged
    class, so the labeling is deterministic.
    """
    cut = bridges(graph)
    parent = list(range(graph.num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for j in cut:
        u, v = graph.edges[j]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    reps = sorted({find(x) for x in range(graph.num_vertices)})
    index = {r: i for i, r in enumerate(reps)}
    rho = tuple(index[find(x)] for x in range(graph.num_vertices))
    new_edges = [
        (rho[u], rho[v]) for j, (u, v) in enumerate(graph.edges) if j not in cut
    ]
    return Multigraph(len(reps), new_edges), rho


# -- isomorphism -----------------------------------------------------------


def _refined_colors(graph):
    """Stable vertex coloring by iterated degree/neighborhood refinement."""
    n = graph.num_vertices
    indptr, nbr, _ = graph._incidence
    colors = [int(d) for d in graph.degrees]
    while True:
        sigs = []
        for x in range(n):
            around = sorted(colors[int(nbr[i])] for i in range(indptr[x], indptr[x + 1]))
            sigs.append((colors[x], tuple(around)))
        order = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def canonical_form(graph, max_candidates=2_000_000):
    """Canonical encoding (vertex count, sorted relabeled edge multiset).

    Two multigraphs are isomorphic exactly when their canonical forms are
    equal.  Candidate labelings are restricted to permutations within the
    refined color classes; the lexicographically smallest edge encoding
    wins.
    """
    n = graph.num_vertices
    colors = _refined_colors(graph)
    classes = {}
    for x in range(n):
        classes.setdefault(colors[x], []).append(x)
    ordered = [classes[c] for c in sorted(classes)]
    count = 1
    for cls in ordered:
        for i in range(2, len(cls) + 1):
            count *= i
        if count > max_candidates:
            raise SizeLimitError(
                f"canonical form would consider more than {max_candidates} labelings"
            )
    # positions are assigned to color classes in canonical color order
    blocks = []
    start = 0
    for cls in ordered:
        blocks.append(range(start, start + len(cls)))
        start += len(cls)
    best = None
    for perms in itertools.product(*(itertools.permutations(c) for c in ordered)):
        relabel = [0] * n
        for cls_perm, block in zip(perms, blocks):
            for x, pos in zip(cls_perm, block):
                relabel[x] = pos
        enc = tuple(
            sorted(
                (relabel[u], relabel[v]) if relabel[u] < relabel[v] else (relabel[v], relabel[u])
                for u, v in graph.edges
            )
        )
        if best is None or enc < best:
            best = enc
    return (n, best)


def is_isomorphic(a, b):
    if a.num_vertices != b.num_vertices or a.num_edges != b.num_edges:
        return False
    if sorted(a.degrees.tolist()) != sorted(b.degrees.tolist()):
        return False
    if sorted(_refined_colors(a)) != sorted(_refined_colors(b)):
        return False
    return canonical_form(a) == canonical_form(b)


def two_edge_connected_multigraphs(max_edges):
    """All 2-edge-connected multigraphs with at most max_edges edges,
    one representative per isomorphism class.

    Yields the trivial graph first, then graphs by (vertex count, edge
    count, canonical encoding).  Minimum degree 2 forces |E| >= |V|, so
    the vertex count never exceeds max_edges.
    """
    yield Multigraph(1, [])
    for n in range(2, max_edges + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for m in range(n, max_edges + 1):
            seen = set()
            found = []
            for combo in itertools.combinations_with_replacement(range(len(pairs)), m):
                deg = [0] * n
                for idx in combo:
                    u, v = pairs[idx]
                    deg[u] += 1
                    deg[v] += 1
                if min(deg) < 2:
                    continue
                edges = [pairs[idx] for idx in combo]
                try:
                    g = Multigraph(n, edges)
                except ValueError:
                    continue
                if bridges(g):
                    continue
                key = canonical_form(g)
                if key not in seen:
                    seen.add(key)
                    found.append((key, g))
            for _, g in sorted(found, key=lambda t: t[0]):
                yield g
