"""Graph morphisms, harmonicity certificates, and functorial transport.

A morphism sends vertices to vertices and each edge either to an edge
joining the images of its endpoints or, when those images coincide, to
that common vertex.  Edge images are explicit data: with parallel edges
they are not determined by the vertex map.  Harmonic morphisms are the
ones whose per-vertex fiber counts over incident target edges are
constant; they carry a certificate of horizontal and vertical
multiplicities and a well-defined degree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .divisors import Divisor, divisor_class, rank
from .errors import HypothesisError, SizeLimitError
from .graphs import Multigraph

EDGE = "edge"
VERTEX = "vertex"


@dataclass(frozen=True)
class GraphMorphism:
    """Total map between multigraphs.

    vmap[x] is the image vertex of x; emap[j] is either ("edge", k) for a
    target edge id k or ("vertex", v) for a collapsed edge.
    """

    source: Multigraph
    target: Multigraph
    vmap: tuple
    emap: tuple

    def __post_init__(self):
        object.__setattr__(self, "vmap", tuple(int(x) for x in self.vmap))
        object.__setattr__(
            self, "emap", tuple((str(kind), int(i)) for kind, i in self.emap)
        )
        if len(self.vmap) != self.source.num_vertices:
            raise ValueError("vmap must cover every source vertex")
        if len(self.emap) != self.source.num_edges:
            raise ValueError("emap must cover every source edge")

    def vertex_image(self, x):
        return self.vmap[x]

    def edge_image(self, j):
        return self.emap[j]

    def to_json_dict(self):
        return {
            "vmap": list(self.vmap),
            "emap": [{kind: i} for kind, i in self.emap],
        }

    @classmethod
    def from_json_dict(cls, source, target, data):
        try:
            vmap = data["vmap"]
            emap_raw = data["emap"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"morphism JSON needs 'vmap' and 'emap': {exc}") from exc
        emap = []
        for entry in emap_raw:
            if EDGE in entry:
                emap.append((EDGE, entry[EDGE]))
            elif VERTEX in entry:
                emap.append((VERTEX, entry[VERTEX]))
            else:
                raise ValueError(f"emap entry {entry!r} needs 'edge' or 'vertex'")
        return cls(source, target, tuple(vmap), tuple(emap))


def morphism_violations(phi):
    """Human-readable structural problems; empty list means valid."""
    problems = []
    for x in range(phi.source.num_vertices):
        if not 0 <= phi.vmap[x] < phi.target.num_vertices:
            problems.append(f"vertex {x} maps outside the target")
    if problems:
        return problems
    for j, (u, v) in enumerate(phi.source.edges):
        kind, i = phi.emap[j]
        iu, iv = phi.vmap[u], phi.vmap[v]
        if kind == EDGE:
            if not 0 <= i < phi.target.num_edges:
                problems.append(f"edge {j} maps to nonexistent target edge {i}")
            elif {iu, iv} != set(phi.target.edges[i]):
                problems.append(
                    f"edge {j}=({u},{v}) maps to target edge {i}="
                    f"{phi.target.edges[i]} not joining its endpoint images"
                    f" ({iu},{iv})"
                )
        elif kind == VERTEX:
            if iu != iv or iu != i:
                problems.append(
                    f"edge {j}=({u},{v}) collapses to vertex {i} but its"
                    f" endpoint images are ({iu},{iv})"
                )
        else:
            problems.append(f"edge {j} has unknown image kind {kind!r}")
    return problems


def is_morphism(phi):
    return not morphism_violations(phi)


def identity_morphism(graph):
    return GraphMorphism(
        graph,
        graph,
        tuple(range(graph.num_vertices)),
        tuple((EDGE, j) for j in range(graph.num_edges)),
    )


def compose(first, second):
    """second after first, acting first.source -> second.target."""
    if first.target != second.source:
        raise ValueError("morphisms do not chain: target of first != source of second")
    vmap = tuple(second.vmap[first.vmap[x]] for x in range(first.source.num_vertices))
    emap = []
    for kind, i in first.emap:
        if kind == VERTEX:
            emap.append((VERTEX, second.vmap[i]))
        else:
            emap.append(second.emap[i])
    return GraphMorphism(first.source, second.target, vmap, tuple(emap))


@dataclass(frozen=True)
class HarmonicCertificate:
    """Multiplicity data of a harmonic morphism.

    horizontal[x] counts the edges at x over any one target edge at the
    image of x, vertical[x] the collapsed edges at x; the two satisfy
    deg(x) = deg(image) * horizontal[x] + vertical[x], and horizontal
    multiplicities over any vertex fiber sum to the degree.
    """

    horizontal: tuple
    vertical: tuple
    degree: int

    @property
    def is_nondegenerate(self):
        return all(m >= 1 for m in self.horizontal)


def harmonic_certificate(phi):
    """Certificate when phi is harmonic, else None.

    phi must be structurally valid.  A target with a single vertex has
    no edges, so every morphism onto it is harmonic with degree 0.
    """
    problems = morphism_violations(phi)
    if problems:
        raise ValueError("not a morphism: " + "; ".join(problems))
    src, dst = phi.source, phi.target
    horizontal = []
    vertical = []
    for x in range(src.num_vertices):
        counts = {}
        vert = 0
        for j in src.incident_edges(x):
            kind, i = phi.emap[j]
            if kind == VERTEX:
                vert += 1
            else:
                counts[i] = counts.get(i, 0) + 1
        around = dst.incident_edges(phi.vmap[x])
        fibers = {counts.get(i, 0) for i in around}
        if len(fibers) > 1:
            return None
        horizontal.append(fibers.pop() if fibers else 0)
        vertical.append(vert)
    if dst.num_vertices == 1:
        return HarmonicCertificate(tuple(horizontal), tuple(vertical), 0)
    sizes = [0] * dst.num_edges
    for kind, i in phi.emap:
        if kind == EDGE:
            sizes[i] += 1
    if len(set(sizes)) > 1:  # cannot happen for a connected source
        return None
    return HarmonicCertificate(tuple(horizontal), tuple(vertical), sizes[0])


def is_harmonic(phi):
    return harmonic_certificate(phi) is not None


def _certificate(phi):
    cert = harmonic_certificate(phi)
    if cert is None:
        raise HypothesisError("morphism is not harmonic")
    return cert


def degree(phi):
    return _certificate(phi).degree


def is_constant(phi):
    return len(set(phi.vmap)) == 1


def is_surjective(phi):
    return set(phi.vmap) == set(range(phi.target.num_vertices))


def is_nondegenerate(phi):
    return _certificate(phi).is_nondegenerate


def is_covering(phi):
    """Degree-d covering: harmonic with every multiplicity 1, nothing collapsed."""
    cert = harmonic_certificate(phi)
    return (
        cert is not None
        and all(m == 1 for m in cert.horizontal)
        and all(v == 0 for v in cert.vertical)
    )


# -- transport of functions and divisors -----------------------------------


def push_divisor(phi, divisor):
    """Sum image coefficients; defined for any morphism, degree-preserving."""
    if divisor.graph != phi.source:
        raise ValueError("divisor does not live on the source")
    out = [0] * phi.target.num_vertices
    for x in range(phi.source.num_vertices):
        out[phi.vmap[x]] += divisor[x]
    return Divisor(phi.target, out)


def pull_divisor(phi, divisor):
    """Weight target coefficients by horizontal multiplicities.

    Needs a harmonic phi; multiplies degrees by deg(phi).
    """
    if divisor.graph != phi.target:
        raise ValueError("divisor does not live on the target")
    cert = _certificate(phi)
    out = [
        cert.horizontal[x] * divisor[phi.vmap[x]]
        for x in range(phi.source.num_vertices)
    ]
    return Divisor(phi.source, out)


def push_function(phi, values):
    """Trace of a vertex function: sum of m(x) * f(x) over each fiber."""
    cert = _certificate(phi)
    out = [0] * phi.target.num_vertices
    for x, val in enumerate(values):
        out[phi.vmap[x]] += cert.horizontal[x] * val
    return out


def pull_function(phi, values):
    values = list(values)
    return [values[phi.vmap[x]] for x in range(phi.source.num_vertices)]


def functoriality_check(phi, f, f_target):
    """Both Laplacian transport identities, exactly.

    push(div(f)) == div(push(f)) and pull(div(f')) == div(pull(f')).
    """
    from .divisors import principal_divisor

    lhs1 = push_divisor(phi, principal_divisor(phi.source, f))
    rhs1 = principal_divisor(phi.target, push_function(phi, f))
    lhs2 = pull_divisor(phi, principal_divisor(phi.target, f_target))
    rhs2 = principal_divisor(phi.source, pull_function(phi, f_target))
    return lhs1 == rhs1 and lhs2 == rhs2


def jac_push(phi, cls):
    """Induced map on degree-0 class groups (surjective when non-constant)."""
    if cls.graph != phi.source:
        raise ValueError("class does not live on the source")
    return divisor_class(push_divisor(phi, cls.divisor()))


def jac_pull(phi, cls):
    """Pullback on degree-0 class groups (injective when non-constant)."""
    if cls.graph != phi.target:
        raise ValueError("class does not live on the target")
    return divisor_class(pull_divisor(phi, cls.divisor()))


def rank_transfer_check(phi, divisor):
    """rank does not drop under pushforward along non-constant harmonic maps."""
    cert = _certificate(phi)
    if cert.degree == 0 and phi.target.num_vertices > 1:
        raise HypothesisError("rank transfer needs a non-constant morphism")
    return rank(push_divisor(phi, divisor)) >= rank(divisor)


def riemann_hurwitz(phi):
    """Ramification divisor and the degree-identity residual (always 0).

    The divisor R has coefficient 2(m(x) - 1) + v(x) at x and satisfies
    K_source = pull(K_target) + R edge-exactly; the residual returned is
    (2g - 2) - deg(phi)(2g' - 2) - deg(R).
    """
    cert = _certificate(phi)
    coeffs = [
        2 * (cert.horizontal[x] - 1) + cert.vertical[x]
        for x in range(phi.source.num_vertices)
    ]
    ram = Divisor(phi.source, coeffs)
    g, gp = phi.source.genus, phi.target.genus
    residual = (2 * g - 2) - cert.degree * (2 * gp - 2) - ram.degree
    return ram, residual


def is_rational_harmonic(phi):
    """Whether phi pulls back functions harmonic at a point to the same.

    Tested over the rationals: at each source vertex the pulled-back
    Laplacian functional must be a scalar multiple of the target's
    Laplacian functional at the image vertex.  Every harmonic morphism
    passes; for simple targets the converse holds as well.
    """
    problems = morphism_violations(phi)
    if problems:
        raise ValueError("not a morphism: " + "; ".join(problems))
    src, dst = phi.source, phi.target
    if dst.num_vertices == 1:
        return True
    for x in range(src.num_vertices):
        y = phi.vmap[x]
        pulled = [Fraction(0)] * dst.num_vertices
        pulled[y] += src.degree(x)
        for z in src.neighbors(x):
            pulled[phi.vmap[z]] -= 1
        local = [Fraction(0)] * dst.num_vertices
        local[y] += dst.degree(y)
        for z in dst.neighbors(y):
            local[z] -= 1
        # membership in the line spanned by the target functional
        ratio = None
        for a, b in zip(pulled, local):
            if b == 0:
                if a != 0:
                    return False
            elif ratio is None:
                ratio = Fraction(a, b)
            elif Fraction(a, b) != ratio:
                return False
    return True


# -- standard constructions -------------------------------------------------


def harmonic_to_edge(graph, x):
    """Collapse everything but x onto the far end of a single edge.

    The result maps x to one endpoint of a 2-vertex tree and every other
    vertex to the other; edges at x go to the tree edge.  Harmonic of
    degree deg(x).
    """
    if graph.num_vertices < 2:
        raise ValueError("needs at least two vertices")
    target = Multigraph(2, [(0, 1)])
    vmap = tuple(0 if z == x else 1 for z in range(graph.num_vertices))
    emap = tuple(
        (EDGE, 0) if x in (u, v) else (VERTEX, 1) for u, v in graph.edges
    )
    return GraphMorphism(graph, target, vmap, emap)


def collapse(graph, pivot, side):
    """Contract one side of a cut vertex onto the pivot.

    side lists the vertices to be absorbed (the pivot excluded); no edge
    may leave side except through the pivot.  The result is harmonic of
    degree 1 whenever more than one vertex survives.
    """
    side = frozenset(int(z) for z in side)
    if pivot in side:
        raise ValueError("pivot cannot be collapsed")
    if not side:
        raise ValueError("nothing to collapse")
    outside = set(range(graph.num_vertices)) - side - {pivot}
    for u, v in graph.edges:
        if (u in side and v in outside) or (v in side and u in outside):
            raise ValueError(
                f"edge ({u},{v}) escapes the collapsed side away from the pivot"
            )
    keep = sorted(set(range(graph.num_vertices)) - side)
    index = {z: i for i, z in enumerate(keep)}
    new_edges = []
    edge_index = {}
    for j, (u, v) in enumerate(graph.edges):
        if u not in side and v not in side:
            edge_index[j] = len(new_edges)
            new_edges.append((index[u], index[v]))
    target = Multigraph(len(keep), new_edges)
    vmap = tuple(index[z] if z not in side else index[pivot] for z in range(graph.num_vertices))
    emap = []
    for j in range(graph.num_edges):
        if j in edge_index:
            emap.append((EDGE, edge_index[j]))
        else:
            emap.append((VERTEX, index[pivot]))
    return GraphMorphism(graph, target, vmap, tuple(emap))


def is_automorphism(phi):
    return (
        phi.source == phi.target
        and is_morphism(phi)
        and sorted(phi.vmap) == list(range(phi.source.num_vertices))
        and sorted(i for kind, i in phi.emap if kind == EDGE)
        == list(range(phi.source.num_edges))
        and all(kind == EDGE for kind, _ in phi.emap)
    )


def automorphism_group(graph, max_vertices=10):
    """Every automorphism, including all edge-level choices on parallel
    classes.  Backtracks on vertex images with degree and multiplicity
    pruning, then distributes parallel classes.
    """
    n = graph.num_vertices
    if n > max_vertices:
        raise SizeLimitError(f"automorphism enumeration limited to {max_vertices} vertices")
    deg = graph.degrees
    vmaps = []
    assignment = [-1] * n
    used = [False] * n

    def backtrack(x):
        if x == n:
            vmaps.append(tuple(assignment))
            return
        for y in range(n):
            if used[y] or deg[y] != deg[x]:
                continue
            ok = True
            for u in range(x):
                if graph.multiplicity(x, u) != graph.multiplicity(y, assignment[u]):
                    ok = False
                    break
            if ok:
                assignment[x] = y
                used[y] = True
                backtrack(x + 1)
                used[y] = False
                assignment[x] = -1

    backtrack(0)
    classes = graph.parallel_classes
    autos = []
    for vmap in vmaps:
        per_class = []
        keys = sorted(classes)
        valid = True
        for u, v in keys:
            iu, iv = vmap[u], vmap[v]
            key2 = (iu, iv) if iu < iv else (iv, iu)
            targets = classes.get(key2, ())
            if len(targets) != len(classes[(u, v)]):
                valid = False
                break
            per_class.append(
                [list(zip(classes[(u, v)], p)) for p in itertools.permutations(targets)]
            )
        if not valid:
            continue
        for choice in itertools.product(*per_class):
            emap = [None] * graph.num_edges
            for pairs in choice:
                for j, k in pairs:
                    emap[j] = (EDGE, k)
            autos.append(GraphMorphism(graph, graph, vmap, tuple(emap)))
    return autos


def quotient(graph, group):
    """Quotient by a group of automorphisms, with its projection.

    group must be a list of automorphisms of the graph containing the
    identity and closed under composition.  Orbit classes become the new
    vertices; edge orbits whose endpoints merge are dropped (their edges
    collapse to the merged vertex).
    """
    ident = identity_morphism(graph)
    elems = {(a.vmap, a.emap): a for a in group}
    if (ident.vmap, ident.emap) not in elems:
        raise ValueError("group must contain the identity")
    for a in group:
        if not is_automorphism(a) or a.source != graph:
            raise ValueError("group elements must be automorphisms of the graph")
    for a in group:
        for b in group:
            c = compose(a, b)
            if (c.vmap, c.emap) not in elems:
                raise ValueError("set of automorphisms is not closed under composition")

    parent_v = list(range(graph.num_vertices))
    parent_e = list(range(graph.num_edges))

    def find(parent, x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(parent, a, b):
        ra, rb = find(parent, a), find(parent, b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for a in group:
        for x in range(graph.num_vertices):
            union(parent_v, x, a.vmap[x])
        for j in range(graph.num_edges):
            union(parent_e, j, a.emap[j][1])
    vreps = sorted({find(parent_v, x) for x in range(graph.num_vertices)})
    vindex = {r: i for i, r in enumerate(vreps)}
    vclass = [vindex[find(parent_v, x)] for x in range(graph.num_vertices)]

    kept = {}
    new_edges = []
    for j in sorted({find(parent_e, j) for j in range(graph.num_edges)}):
        u, v = graph.edges[j]
        if vclass[u] != vclass[v]:
            kept[j] = len(new_edges)
            new_edges.append((vclass[u], vclass[v]))
    target = Multigraph(len(vreps), new_edges)
    emap = []
    for j in range(graph.num_edges):
        rep = find(parent_e, j)
        if rep in kept:
            emap.append((EDGE, kept[rep]))
        else:
            emap.append((VERTEX, vclass[graph.edges[j][0]]))
    pi = GraphMorphism(graph, target, tuple(vclass), tuple(emap))
    return target, pi


def cyclic_group(alpha):
    """The automorphisms generated by one automorphism (with the identity)."""
    elems = [identity_morphism(alpha.source)]
    seen = {(elems[0].vmap, elems[0].emap)}
    current = alpha
    while (current.vmap, current.emap) not in seen:
        seen.add((current.vmap, current.emap))
        elems.append(current)
        current = compose(current, alpha)
    return elems
