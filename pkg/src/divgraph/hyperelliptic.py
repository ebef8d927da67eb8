"""Hyperelliptic structure: involutions, witnesses, Weierstrass points.

A 2-edge-connected graph of genus at least 2 is hyperelliptic when some
degree-2 divisor has rank 1.  Detection scans vertex pairs with the
rank engine; the witness then carries the involution (built from the
unique partners under linear equivalence), the tree quotient and its
degree-2 harmonic projection, and every claimed property is re-derived
before the witness is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .divisors import (
    Divisor,
    divisor_class,
    is_equivalent,
    rank,
    rank_at_least,
    reduce_divisor,
)
from .errors import HypothesisError
from .forms import aut_action_matrix, flow_basis, flow_coordinates, push_form
from .graphs import (
    Multigraph,
    banana,
    bridges,
    contract_bridges,
    is_isomorphic,
    subdivision,
    theta_graph,
    two_edge_connected_multigraphs,
)
from .morphisms import (
    EDGE,
    GraphMorphism,
    automorphism_group,
    compose,
    cyclic_group,
    harmonic_certificate,
    identity_morphism,
    is_automorphism,
    push_divisor,
    quotient,
)


def involutions(graph, max_vertices=10):
    """Non-identity automorphisms squaring to the identity (edge level)."""
    ident = identity_morphism(graph)
    out = []
    for a in automorphism_group(graph, max_vertices=max_vertices):
        if (a.vmap, a.emap) == (ident.vmap, ident.emap):
            continue
        sq = compose(a, a)
        if (sq.vmap, sq.emap) == (ident.vmap, ident.emap):
            out.append(a)
    return out


def is_mixing(iota):
    """No directed edge is fixed: a fixed edge must have its ends swapped."""
    if not is_automorphism(iota):
        raise ValueError("mixing is defined for automorphisms")
    for j, (u, v) in enumerate(iota.source.edges):
        if iota.emap[j] == (EDGE, j) and iota.vmap[u] == u:
            return False
    return True


def degree_two_involution(phi):
    """The deck swap of a non-degenerate degree-2 harmonic morphism.

    Vertices exchange with the other point of their fiber (staying put
    when alone in it), horizontal edges with the other edge over the
    same image, vertical edges stay fixed.  The result is a mixing
    involution whose quotient projection recovers phi's fibers.
    """
    cert = harmonic_certificate(phi)
    if cert is None or cert.degree != 2 or not cert.is_nondegenerate:
        raise HypothesisError("deck swap needs a non-degenerate degree-2 morphism")
    src = phi.source
    vmap = []
    for x in range(src.num_vertices):
        fiber = [z for z in range(src.num_vertices) if phi.vmap[z] == phi.vmap[x]]
        others = [z for z in fiber if z != x]
        vmap.append(others[0] if others else x)
    emap = []
    for j in range(src.num_edges):
        kind, i = phi.emap[j]
        if kind != EDGE:
            emap.append((EDGE, j))
            continue
        twins = [
            e for e in range(src.num_edges) if e != j and phi.emap[e] == (EDGE, i)
        ]
        emap.append((EDGE, twins[0] if twins else j))
    return GraphMorphism(src, src, tuple(vmap), tuple(emap))


@dataclass(frozen=True)
class HyperellipticWitness:
    """Certificate of hyperellipticity, re-verified on construction.

    divisor has degree 2 and rank 1; involution squares to the identity
    and quotients to a tree; quotient_map is the projection, harmonic of
    degree 2 (degree 0 in the two-vertex case where the quotient is a
    single point).
    """

    divisor: Divisor
    involution: GraphMorphism
    quotient_graph: Multigraph
    quotient_map: GraphMorphism


def _solve_potential(graph, target):
    """Rational vertex potential with Laplacian image target and value 0
    at vertex 0; target must be a principal divisor."""
    n = graph.num_vertices
    lap = [[Fraction(0)] * (n - 1) for _ in range(n - 1)]
    for u, v in graph.edges:
        if u > 0:
            lap[u - 1][u - 1] += 1
        if v > 0:
            lap[v - 1][v - 1] += 1
        if u > 0 and v > 0:
            lap[u - 1][v - 1] -= 1
            lap[v - 1][u - 1] -= 1
    rhs = [Fraction(target[x]) for x in range(1, n)]
    aug = [row[:] + [rhs[i]] for i, row in enumerate(lap)]
    size = n - 1
    for col in range(size):
        piv = next(r for r in range(col, size) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col]
        aug[col] = [x / inv for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [Fraction(0)] + [aug[r][size] for r in range(size)]


def _partner(graph, divisor, x):
    """The unique y with divisor - (x) equivalent to (y).

    Single chips are already reduced on a bridgeless graph with minimum
    degree 2, so the reduced form identifies y directly.
    """
    red = reduce_divisor(divisor - Divisor.at(graph, x), 0)
    coeffs = red.coeffs
    spots = [z for z in range(graph.num_vertices) if coeffs[z] != 0]
    if coeffs.sum() != 1 or len(spots) != 1 or coeffs[spots[0]] != 1:
        raise AssertionError("degree-1 class without a single-chip representative")
    return spots[0]


def _require_bridgeless(graph):
    if bridges(graph):
        raise HypothesisError(
            "graph has a bridge; contract bridges first (hyperellipticity is preserved)"
        )


def is_hyperelliptic(graph):
    """Witness of hyperellipticity, or None.

    Needs a 2-edge-connected input; callers with bridges should contract
    them first, which changes neither hyperellipticity nor ranks.  A
    genus below 2 returns None (cycles admit tree quotients but fall
    outside the hyperelliptic regime, where the involution is unique).
    """
    _require_bridgeless(graph)
    if graph.genus < 2:
        return None
    n = graph.num_vertices
    witness_divisor = None
    for x in range(n):
        for y in range(x, n):
            cand = Divisor.at(graph, x) + Divisor.at(graph, y)
            if rank_at_least(cand, 1):
                witness_divisor = cand
                break
        if witness_divisor is not None:
            break
    if witness_divisor is None:
        return None
    iota = _build_involution(graph, witness_divisor)
    qgraph, qmap = quotient(graph, cyclic_group(iota))
    witness = HyperellipticWitness(witness_divisor, iota, qgraph, qmap)
    _verify_witness(graph, witness)
    return witness


def _build_involution(graph, divisor):
    n = graph.num_vertices
    vmap = [_partner(graph, divisor, x) for x in range(n)]
    if n == 2:
        # the vertex swap fixing every edge (each edge has its ends swapped)
        return GraphMorphism(
            graph, graph, tuple(vmap), tuple((EDGE, j) for j in range(graph.num_edges))
        )
    emap = [None] * graph.num_edges
    for j, (x, y) in enumerate(graph.edges):
        if vmap[x] == y:
            emap[j] = (EDGE, j)
            continue
        d1 = Divisor.at(graph, x) + Divisor.at(graph, vmap[x])
        d2 = Divisor.at(graph, y) + Divisor.at(graph, vmap[y])
        pot = _solve_potential(graph, (d1 - d2).coeffs)
        peak = max(pot)
        high = {z for z in range(n) if pot[z] == peak}
        boundary = [
            e
            for e, (u, v) in enumerate(graph.edges)
            if (u in high) != (v in high)
        ]
        if len(boundary) != 2 or j not in boundary:
            raise AssertionError("two-edge cut expected at the top level set")
        emap[j] = (EDGE, boundary[0] if boundary[1] == j else boundary[1])
    return GraphMorphism(graph, graph, tuple(vmap), tuple(emap))


def _verify_witness(graph, witness):
    if witness.divisor.degree != 2 or rank(witness.divisor) != 1:
        raise AssertionError("witness divisor must have degree 2 and rank 1")
    iota = witness.involution
    if not is_automorphism(iota):
        raise AssertionError("witness involution is not an automorphism")
    ident = identity_morphism(graph)
    sq = compose(iota, iota)
    if (sq.vmap, sq.emap) != (ident.vmap, ident.emap):
        raise AssertionError("witness involution does not square to the identity")
    if witness.quotient_graph.genus != 0:
        raise AssertionError("witness quotient is not a tree")
    cert = harmonic_certificate(witness.quotient_map)
    if cert is None:
        raise AssertionError("witness quotient map is not harmonic")
    expected = 0 if witness.quotient_graph.num_vertices == 1 else 2
    if cert.degree != expected:
        raise AssertionError("witness quotient map has the wrong degree")
    if graph.num_vertices > 2 and not cert.is_nondegenerate:
        raise AssertionError("witness quotient map is degenerate")


def hyperelliptic_involution(graph):
    """The unique involution whose quotient is a tree."""
    _require_bridgeless(graph)
    if graph.genus < 2:
        raise HypothesisError("hyperelliptic involution needs genus at least 2")
    witness = is_hyperelliptic(graph)
    if witness is None:
        raise HypothesisError("graph is not hyperelliptic")
    return witness.involution


def uniqueness_check(graph, max_vertices=10):
    """Exactly one vertex-level involution admits a tree quotient.

    Parallel classes give several edge-level squarings of one vertex
    map, so the comparison is at the vertex level: a vertex map passes
    when any of its edge-level versions quotients to a tree.
    """
    _require_bridgeless(graph)
    if graph.genus < 2:
        raise HypothesisError("uniqueness needs genus at least 2")
    passing = set()
    for iota in involutions(graph, max_vertices=max_vertices):
        qgraph, _ = quotient(graph, cyclic_group(iota))
        if qgraph.genus == 0:
            passing.add(iota.vmap)
    return len(passing) == 1


def centrality_check(graph, max_vertices=10):
    """The hyperelliptic involution commutes with every automorphism.

    Compared on vertex maps, matching the level at which the involution
    is unique.
    """
    iota = hyperelliptic_involution(graph)
    for alpha in automorphism_group(graph, max_vertices=max_vertices):
        left = tuple(iota.vmap[alpha.vmap[x]] for x in range(graph.num_vertices))
        right = tuple(alpha.vmap[iota.vmap[x]] for x in range(graph.num_vertices))
        if left != right:
            return False
    return True


def pm_one_criteria_check(graph, iota):
    """Five equivalent readings of 'iota is the hyperelliptic involution'.

    (1) a witness carries this vertex map; (2) pushforward negates every
    degree-0 class; (3) pullback does; (4) pushforward negates every
    flow; (5) the flow-space matrix is minus the identity.  The five
    must agree; their common value is returned.
    """
    _require_bridgeless(graph)
    if graph.genus < 2:
        raise HypothesisError("the plus/minus-one criteria need genus at least 2")
    if not is_automorphism(iota) or iota.source != graph:
        raise ValueError("iota must be an automorphism of the graph")
    witness = is_hyperelliptic(graph)
    c1 = witness is not None and witness.involution.vmap == iota.vmap

    n = graph.num_vertices
    gens = [Divisor.at(graph, x) - Divisor.at(graph, 0) for x in range(n)]
    c2 = all(
        divisor_class(push_divisor(iota, d)) == divisor_class(-d) for d in gens
    )
    from .morphisms import pull_divisor

    c3 = all(
        divisor_class(pull_divisor(iota, d)) == divisor_class(-d) for d in gens
    )

    basis = flow_basis(graph)
    c4 = all(
        flow_coordinates(basis, push_form(iota, lam))
        == tuple(-v for v in flow_coordinates(basis, lam))
        for lam in basis.flows
    )
    mat = aut_action_matrix(iota)
    c5 = all(
        mat[i][j] == (-1 if i == j else 0)
        for i in range(len(mat))
        for j in range(len(mat))
    )
    answers = {c1, c2, c3, c4, c5}
    if len(answers) != 1:
        raise AssertionError(
            f"plus/minus-one criteria disagree: {(c1, c2, c3, c4, c5)}"
        )
    return c1


def weierstrass_points(graph):
    """Vertices x with rank(g * (x)) at least 1 (g the genus)."""
    g = graph.genus
    return frozenset(
        x
        for x in range(graph.num_vertices)
        if rank_at_least(Divisor.at(graph, x, g), 1)
    )


@dataclass(frozen=True)
class Family:
    """Result of the Weierstrass-free classification."""

    kind: str  # "banana_unit" | "odd_triple_banana" | "theta" | "none"
    params: tuple

    @classmethod
    def none(cls):
        return cls("none", ())


def _hub_paths(graph, hubs):
    """Maximal degree-2 paths between hub vertices.

    Returns a list of path lengths, or None when some chain closes on a
    single hub (which cannot happen for two distinct degree-3 hubs).
    """
    hubset = set(hubs)
    lengths = []
    used = set()
    for h in hubs:
        for j in graph.incident_edges(h):
            if j in used:
                continue
            length = 0
            x, e = h, j
            while True:
                used.add(e)
                u, v = graph.edges[e]
                x = v if u == x else u
                length += 1
                if x in hubset:
                    break
                nxt = [k for k in graph.incident_edges(x) if k != e]
                if len(nxt) != 1:
                    return None
                e = nxt[0]
            if x == h:
                return None
            lengths.append(length)
    return lengths


def classify_weierstrass_free(graph):
    """Match against the three Weierstrass-free families.

    BananaUnit(n): two vertices, n >= 3 parallel edges.
    OddTripleBanana(l1,l2,l3): three internally disjoint odd-length paths.
    Theta(l): two length-l paths tied by parallel pairs at both ends.
    Anything else (including even-length triples) is outside, exactly
    when the graph has Weierstrass points.
    """
    _require_bridgeless(graph)
    witness = is_hyperelliptic(graph)
    if witness is None:
        raise HypothesisError("classification applies to hyperelliptic graphs")
    n, g = graph.num_vertices, graph.genus
    if n == 2:
        return Family("banana_unit", (graph.num_edges,))
    if g == 2:
        hubs = [x for x in range(n) if graph.degree(x) != 2]
        if len(hubs) == 2 and all(graph.degree(h) == 3 for h in hubs):
            lengths = _hub_paths(graph, hubs)
            if lengths is not None and len(lengths) == 3:
                lengths = tuple(sorted(lengths))
                if is_isomorphic(graph, banana(*lengths)) and all(
                    l % 2 == 1 for l in lengths
                ):
                    return Family("odd_triple_banana", lengths)
        return Family.none()
    if g == 3 and n % 2 == 0 and n >= 4:
        side = (n - 2) // 2
        if graph.num_edges == 2 * side + 4 and is_isomorphic(graph, theta_graph(side)):
            return Family("theta", (side,))
    return Family.none()


def subdivision_invariance_check(graph, k):
    """Hyperellipticity agrees between a graph and its k-fold subdivision
    (after contracting bridges on both sides)."""
    if k < 1:
        raise ValueError("subdivision factor must be at least 1")
    base, _ = contract_bridges(graph)
    subd, _ = contract_bridges(subdivision(graph, k))
    return (is_hyperelliptic(base) is not None) == (is_hyperelliptic(subd) is not None)


def bridge_equivalence_check(graph, divisor):
    """Ranks and principality are unchanged by pushing along the
    bridge-contraction surjection."""
    contracted, rho = contract_bridges(graph)
    pushed = [0] * contracted.num_vertices
    for x in range(graph.num_vertices):
        pushed[rho[x]] += divisor[x]
    image = Divisor(contracted, pushed)
    if rank(divisor) != rank(image):
        return False
    zero_src = Divisor.zero(graph)
    zero_dst = Divisor.zero(contracted)
    return is_equivalent(divisor, zero_src) == is_equivalent(image, zero_dst)


def weierstrass_free_scan(max_edges=7):
    """Survey all 2-edge-connected multigraphs with few edges.

    Yields one record per isomorphism class: the graph, its genus,
    whether it is hyperelliptic, its Weierstrass points, and (for
    hyperelliptic graphs) the family classification.
    """
    for g in two_edge_connected_multigraphs(max_edges):
        witness = is_hyperelliptic(g)
        points = weierstrass_points(g)
        family = None
        if witness is not None:
            family = classify_weierstrass_free(g)
        yield {
            "graph": g,
            "genus": g.genus,
            "hyperelliptic": witness is not None,
            "weierstrass_points": tuple(sorted(points)),
            "family": family,
        }
