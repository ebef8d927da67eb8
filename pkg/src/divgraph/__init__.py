"""Divisor theory, Jacobians, harmonic morphisms and hyperelliptic
structure on finite connected multigraphs."""

from ._kernels import kernel_backend
from .errors import HypothesisError, SizeLimitError
from .graphs import (
    Cut,
    Multigraph,
    banana,
    bridges,
    canonical_form,
    complete_graph,
    contract_bridges,
    cut_from_side,
    cycle_graph,
    edge_connectivity,
    is_isomorphic,
    is_k_edge_connected,
    path_graph,
    subdivision,
    theta_graph,
    two_edge_connected_multigraphs,
    uniform_banana,
)
from .divisors import (
    Divisor,
    DivisorClass,
    canonical_divisor,
    clifford_check,
    dichotomy_check,
    divisor_class,
    has_effective_representative,
    is_equivalent,
    order_divisor,
    principal_divisor,
    rank,
    rank_at_least,
    reduce_divisor,
    riemann_roch_residual,
)
from .morphisms import (
    GraphMorphism,
    HarmonicCertificate,
    automorphism_group,
    collapse,
    compose,
    cyclic_group,
    degree,
    functoriality_check,
    harmonic_certificate,
    harmonic_to_edge,
    identity_morphism,
    is_automorphism,
    is_constant,
    is_covering,
    is_harmonic,
    is_morphism,
    is_nondegenerate,
    is_rational_harmonic,
    is_surjective,
    jac_pull,
    jac_push,
    morphism_violations,
    pull_divisor,
    pull_function,
    push_divisor,
    push_function,
    quotient,
    rank_transfer_check,
    riemann_hurwitz,
)
from .forms import (
    FlowBasis,
    OneForm,
    aut_action_matrix,
    aut_faithfulness_check,
    canonical_fibers,
    canonical_map,
    coboundary,
    edge_functional,
    flow_basis,
    flow_coordinates,
    gl_integrality_check,
    gram_matrix,
    is_canonical_injective,
    is_flow,
    pull_form,
    push_form,
)
from .jacobian import (
    AbelJacobi,
    JacobianStructure,
    abel_jacobi,
    eulerian_cut,
    invariant_factors,
    is_eulerian_cut,
    jacobian_elements,
    jacobian_structure,
    laplacian,
    morphism_to_b2,
    reduced_laplacian,
    sk_injectivity,
    spanning_tree_count,
    two_torsion_flow,
    verify_jac_pull_injective,
    verify_jac_push_surjective,
)
from .hyperelliptic import (
    Family,
    HyperellipticWitness,
    bridge_equivalence_check,
    centrality_check,
    classify_weierstrass_free,
    degree_two_involution,
    hyperelliptic_involution,
    involutions,
    is_hyperelliptic,
    is_mixing,
    pm_one_criteria_check,
    subdivision_invariance_check,
    uniqueness_check,
    weierstrass_free_scan,
    weierstrass_points,
)

__all__ = [name for name in dir() if not name.startswith("_")]
