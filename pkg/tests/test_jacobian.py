import pytest

from divgraph.divisors import Divisor, divisor_class
from divgraph.errors import SizeLimitError
from divgraph.forms import coboundary, flow_basis, gram_matrix, is_flow
from divgraph.graphs import (
    banana,
    complete_graph,
    cycle_graph,
    is_k_edge_connected,
    path_graph,
    uniform_banana,
)
from divgraph.jacobian import (
    abel_jacobi,
    eulerian_cut,
    invariant_factors,
    is_eulerian_cut,
    jacobian_elements,
    jacobian_structure,
    morphism_to_b2,
    reduced_laplacian,
    sk_injectivity,
    spanning_tree_count,
    two_torsion_flow,
    verify_jac_pull_injective,
    verify_jac_push_surjective,
)
from divgraph.morphisms import harmonic_certificate, is_constant

from conftest import corpus
from oracles import oracle_spanning_trees


def test_spanning_tree_counts():
    assert spanning_tree_count(uniform_banana(2)) == 2
    assert spanning_tree_count(path_graph(5)) == 1
    for n in (2, 3, 4, 5):
        assert spanning_tree_count(uniform_banana(n)) == n
        assert spanning_tree_count(cycle_graph(max(n, 3))) == max(n, 3)
    assert spanning_tree_count(complete_graph(4)) == 16


def test_tree_count_matches_enumeration():
    for name, g in corpus().items():
        if g.num_edges <= 8:
            assert spanning_tree_count(g) == oracle_spanning_trees(g), name


def test_invariant_factors_shapes():
    assert invariant_factors([[6]]) == [6]
    assert invariant_factors([[2, 0], [0, 4]]) == [2, 4]
    # swap needed plus divisibility fix-up
    assert invariant_factors([[0, 3], [5, 0]]) == [1, 15]
    assert invariant_factors([[4, 0], [0, 6]]) == [2, 12]


def test_jacobian_structures():
    for n in (2, 3, 4, 5):
        js = jacobian_structure(uniform_banana(n))
        assert js.nontrivial_factors == (n,) and js.order == n
    js = jacobian_structure(complete_graph(4))
    assert js.invariant_factors == (1, 4, 4) and js.order == 16
    for name, g in corpus().items():
        js = jacobian_structure(g)
        assert js.order == spanning_tree_count(g), name


def test_reduced_laplacian_shape():
    g = cycle_graph(3)
    assert reduced_laplacian(g) == [[2, -1], [-1, 2]]


def test_abel_jacobi_basics():
    c3 = cycle_graph(3)
    aj = abel_jacobi(c3, 0)
    assert aj(0).is_zero
    assert aj(1).order() == 3
    tree = path_graph(4)
    ajt = abel_jacobi(tree, 0)
    assert all(ajt(x).is_zero for x in range(4))
    eff = Divisor(c3, [0, 2, 1])
    assert aj.symmetric_power(eff) == aj(1) + aj(1) + aj(2)
    with pytest.raises(ValueError):
        aj.symmetric_power(Divisor(c3, [1, -1, 0]))


def test_sk_injectivity_examples():
    assert sk_injectivity(banana(2, 2, 2), 2) is False
    assert sk_injectivity(complete_graph(4), 2) is True
    assert sk_injectivity(path_graph(3), 1) is False
    assert sk_injectivity(cycle_graph(4), 1) is True
    with pytest.raises(SizeLimitError):
        sk_injectivity(banana(3, 3, 3, 3), 1, max_vertices=8)


def test_sk_injectivity_matches_connectivity():
    for name, g in corpus().items():
        if g.num_vertices == 1 or g.num_vertices > 12:
            continue
        for k in (1, 2):
            assert sk_injectivity(g, k) == is_k_edge_connected(g, k + 1), (name, k)


def test_jacobian_elements_enumeration():
    for g in [cycle_graph(5), uniform_banana(4), complete_graph(4)]:
        elements = jacobian_elements(g)
        assert len(elements) == spanning_tree_count(g)
        assert len(set(elements)) == len(elements)
    with pytest.raises(SizeLimitError):
        jacobian_elements(complete_graph(4), bound=10)


def test_two_torsion_flow():
    assert two_torsion_flow(cycle_graph(3)) is None
    assert two_torsion_flow(uniform_banana(3)) is None
    omega = two_torsion_flow(uniform_banana(2))
    assert omega is not None and is_flow(omega)
    assert sorted(str(v) for v in omega.values) == ["-1/2", "1/2"]
    for g in [cycle_graph(4), complete_graph(4), banana(2, 2, 2)]:
        omega = two_torsion_flow(g)
        assert omega is not None
        assert is_flow(omega)
        assert not omega.is_integral and (2 * omega).is_integral
        # integral pairing with every basis flow
        for lam in flow_basis(g).flows:
            pairing = sum(a * b for a, b in zip(omega.values, lam.values))
            assert pairing.denominator == 1


def test_eulerian_cut():
    b2 = uniform_banana(2)
    cut = eulerian_cut(b2)
    assert cut.edges == frozenset({0, 1})
    assert eulerian_cut(uniform_banana(3)) is None
    c4 = eulerian_cut(cycle_graph(4))
    assert is_eulerian_cut(cycle_graph(4), c4)
    # every vertex even: forced to be the alternating 4-edge cut on C4
    assert c4.edges == frozenset({0, 1, 2, 3})


def test_parity_four_way_equivalence():
    for name, g in corpus().items():
        kappa = spanning_tree_count(g)
        even = kappa % 2 == 0
        omega = two_torsion_flow(g)
        cut = eulerian_cut(g)
        phi = morphism_to_b2(g)
        assert (omega is not None) == even, name
        assert (cut is not None) == even, name
        assert (phi is not None) == even, name
        if even:
            assert is_eulerian_cut(g, cut), name
            cert = harmonic_certificate(phi)
            assert cert is not None and not is_constant(phi), name


def test_morphism_to_b2_examples():
    assert morphism_to_b2(cycle_graph(3)) is None
    phi = morphism_to_b2(uniform_banana(2))
    assert harmonic_certificate(phi).degree == 1
    phi = morphism_to_b2(cycle_graph(4))
    assert harmonic_certificate(phi).degree == 2


def test_gram_determinant_is_tree_count():
    from divgraph.jacobian import _det_bareiss

    for name, g in corpus().items():
        if g.genus == 0:
            continue
        assert _det_bareiss(gram_matrix(flow_basis(g))) == spanning_tree_count(g), name


def test_jac_pull_injective_push_surjective():
    from divgraph.morphisms import EDGE, GraphMorphism

    c6, c3 = cycle_graph(6), cycle_graph(3)
    cov = GraphMorphism(
        c6, c3, tuple(i % 3 for i in range(6)), tuple((EDGE, j % 3) for j in range(6))
    )
    assert verify_jac_pull_injective(cov)
    assert verify_jac_push_surjective(cov)
    phi = morphism_to_b2(banana(2, 2, 2))
    assert verify_jac_pull_injective(phi)
    assert verify_jac_push_surjective(phi)
