"""Command-line front end.

Every subcommand maps onto one library operation or verification suite,
reads JSON inputs, and prints a deterministic report.  Exit codes:
0 success / property holds, 1 checked property false, 2 usage or parse
error, 3 hypothesis violation (for example a bridge where a
2-edge-connected graph is required).
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import divisors, forms, graphs, hyperelliptic, jacobian, morphisms
from .errors import HypothesisError

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_HYPOTHESIS = 3


def _load_json(path):
    try:
        with open(path) as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc


def _load_graph(path):
    return graphs.Multigraph.from_json_dict(_load_json(path))


def _load_divisor(path, graph):
    return divisors.Divisor.from_json_dict(graph, _load_json(path))


def _load_morphism(path, source, target):
    return morphisms.GraphMorphism.from_json_dict(source, target, _load_json(path))


def _sample_divisors(graph, count, seed):
    """Deterministic divisor sample with degrees in -3 .. 2g+1."""
    rng = random.Random(seed)
    g = graph.genus
    n = graph.num_vertices
    out = []
    for _ in range(count):
        target = rng.randint(-3, 2 * g + 1)
        coeffs = [rng.randint(-3, 4) for _ in range(n)]
        coeffs[rng.randrange(n)] += target - sum(coeffs)
        out.append(divisors.Divisor(graph, coeffs))
    return out


def cmd_info(args):
    g = _load_graph(args.graph)
    kappa = jacobian.spanning_tree_count(g)
    conn = graphs.edge_connectivity(g)
    print(f"vertices={g.num_vertices} edges={g.num_edges} genus={g.genus}")
    print(f"edge_connectivity={conn} bridges={sorted(graphs.bridges(g))}")
    print(f"kappa={kappa}")
    return EXIT_OK


def cmd_rank(args):
    g = _load_graph(args.graph)
    d = _load_divisor(args.divisor, g)
    print(f"rank={divisors.rank(d)}")
    return EXIT_OK


def cmd_reduce(args):
    g = _load_graph(args.graph)
    d = _load_divisor(args.divisor, g)
    red = divisors.reduce_divisor(d, args.base)
    print(json.dumps(red.to_json_dict(), sort_keys=True))
    return EXIT_OK


def cmd_rr_check(args):
    g = _load_graph(args.graph)
    if args.divisor:
        sample = [_load_divisor(args.divisor, g)]
    else:
        sample = _sample_divisors(g, args.samples, args.seed)
    bad = 0
    for d in sample:
        residual = divisors.riemann_roch_residual(d)
        if residual != 0:
            bad += 1
            print(f"residual={residual} coeffs={d.coeffs.tolist()}")
    print(f"checked={len(sample)} failures={bad}")
    return EXIT_OK if bad == 0 else EXIT_FALSE


def cmd_jacobian(args):
    g = _load_graph(args.graph)
    structure = jacobian.jacobian_structure(g)
    factors = (
        structure.invariant_factors if args.all_factors else structure.nontrivial_factors
    )
    print(f"kappa={structure.order} factors={list(factors)}")
    return EXIT_OK


def cmd_abel_jacobi(args):
    g = _load_graph(args.graph)
    aj = jacobian.abel_jacobi(g, args.base)
    for x in range(g.num_vertices):
        print(f"S({x})={list(aj(x).rep)}")
    return EXIT_OK


def cmd_eulerian_cut(args):
    g = _load_graph(args.graph)
    cut = jacobian.eulerian_cut(g)
    if cut is None:
        print("none (kappa is odd)")
        return EXIT_FALSE
    print(json.dumps({"side": sorted(cut.side_a), "edges": sorted(cut.edges)}, sort_keys=True))
    return EXIT_OK


def cmd_to_b2(args):
    g = _load_graph(args.graph)
    phi = jacobian.morphism_to_b2(g)
    if phi is None:
        print("none (kappa is odd)")
        return EXIT_FALSE
    print(json.dumps(phi.to_json_dict(), sort_keys=True))
    return EXIT_OK


def cmd_morphism_check(args):
    g = _load_graph(args.graph)
    h = _load_graph(args.target)
    phi = _load_morphism(args.morphism, g, h)
    problems = morphisms.morphism_violations(phi)
    if problems:
        for p in problems:
            print(f"invalid: {p}")
        return EXIT_FALSE
    cert = morphisms.harmonic_certificate(phi)
    if cert is None:
        print("valid morphism, not harmonic")
        return EXIT_FALSE
    print(
        f"harmonic degree={cert.degree}"
        f" horizontal={list(cert.horizontal)} vertical={list(cert.vertical)}"
    )
    return EXIT_OK


def cmd_rh_check(args):
    g = _load_graph(args.graph)
    h = _load_graph(args.target)
    phi = _load_morphism(args.morphism, g, h)
    ram, residual = morphisms.riemann_hurwitz(phi)
    lhs = divisors.canonical_divisor(g)
    rhs = morphisms.pull_divisor(phi, divisors.canonical_divisor(h)) + ram
    ok = lhs == rhs and residual == 0
    print(f"ramification={ram.coeffs.tolist()} residual={residual} divisor_identity={lhs == rhs}")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_push(args):
    g = _load_graph(args.graph)
    h = _load_graph(args.target)
    phi = _load_morphism(args.morphism, g, h)
    d = _load_divisor(args.divisor, g)
    print(json.dumps(morphisms.push_divisor(phi, d).to_json_dict(), sort_keys=True))
    return EXIT_OK


def cmd_pull(args):
    g = _load_graph(args.graph)
    h = _load_graph(args.target)
    phi = _load_morphism(args.morphism, g, h)
    d = _load_divisor(args.divisor, h)
    print(json.dumps(morphisms.pull_divisor(phi, d).to_json_dict(), sort_keys=True))
    return EXIT_OK


def cmd_forms(args):
    g = _load_graph(args.graph)
    basis = forms.flow_basis(g)
    print(f"genus={g.genus} tree_edges={list(basis.tree_edges)}")
    for lam, e in zip(basis.flows, basis.nontree_edges):
        print(f"flow[{e}]={[str(v) for v in lam.values]}")
    return EXIT_OK


def cmd_canonical_map(args):
    g = _load_graph(args.graph)
    functionals = forms.canonical_map(g)
    for e, func in enumerate(functionals):
        print(f"psi({e})={[str(v) for v in func]}")
    fibers = forms.canonical_fibers(g)
    print(f"fibers={fibers}")
    injective = len(fibers) == g.num_edges
    print(f"injective={injective}")
    return EXIT_OK if injective else EXIT_FALSE


def cmd_aut(args):
    g = _load_graph(args.graph)
    autos = morphisms.automorphism_group(g, max_vertices=args.budget)
    print(f"order={len(autos)}")
    for a in autos:
        print(f"vmap={list(a.vmap)} emap={[i for _, i in a.emap]}")
    return EXIT_OK


def cmd_hyperelliptic(args):
    g = _load_graph(args.graph)
    witness = hyperelliptic.is_hyperelliptic(g)
    if witness is None:
        print("not hyperelliptic")
        return EXIT_FALSE
    print(
        json.dumps(
            {
                "divisor": witness.divisor.to_json_dict(),
                "involution": witness.involution.to_json_dict(),
                "quotient": witness.quotient_graph.to_json_dict(),
                "quotient_map": witness.quotient_map.to_json_dict(),
            },
            sort_keys=True,
        )
    )
    return EXIT_OK


def cmd_weierstrass(args):
    g = _load_graph(args.graph)
    points = sorted(hyperelliptic.weierstrass_points(g))
    print(json.dumps({"weierstrass_points": points}))
    return EXIT_OK


def cmd_classify(args):
    g = _load_graph(args.graph)
    family = hyperelliptic.classify_weierstrass_free(g)
    print(f"family={family.kind} params={list(family.params)}")
    return EXIT_OK if family.kind != "none" else EXIT_FALSE


def _scan_record(graph):
    witness = hyperelliptic.is_hyperelliptic(graph)
    points = sorted(hyperelliptic.weierstrass_points(graph))
    family = None
    if witness is not None:
        fam = hyperelliptic.classify_weierstrass_free(graph)
        family = {"kind": fam.kind, "params": list(fam.params)}
    return {
        "graph": graph.to_json_dict(),
        "genus": graph.genus,
        "hyperelliptic": witness is not None,
        "weierstrass_points": points,
        "family": family,
    }


def cmd_scan(args):
    candidates = list(graphs.two_edge_connected_multigraphs(args.max_edges))
    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(_scan_record, candidates, chunksize=8))
    else:
        records = [_scan_record(g) for g in candidates]
    for record in records:
        print(json.dumps(record, sort_keys=True))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="divgraph",
        description="Divisors, Jacobians, harmonic morphisms and "
        "hyperelliptic structure on multigraphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, *, target=False, morphism=False, divisor=None):
        p = sub.add_parser(name)
        p.add_argument("graph", help="graph JSON file")
        if target:
            p.add_argument("target", help="target graph JSON file")
        if morphism:
            p.add_argument("morphism", help="morphism JSON file")
        if divisor == "required":
            p.add_argument("--divisor", required=True, help="divisor JSON file")
        elif divisor == "optional":
            p.add_argument("--divisor", help="divisor JSON file")
        p.set_defaults(fn=fn)
        return p

    add("info", cmd_info)
    add("rank", cmd_rank, divisor="required")
    p = add("reduce", cmd_reduce, divisor="required")
    p.add_argument("--base", type=int, default=0)
    p = add("rr-check", cmd_rr_check, divisor="optional")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p = add("jacobian", cmd_jacobian)
    p.add_argument("--all-factors", action="store_true")
    p = add("abel-jacobi", cmd_abel_jacobi)
    p.add_argument("--base", type=int, default=0)
    add("eulerian-cut", cmd_eulerian_cut)
    add("to-b2", cmd_to_b2)
    add("morphism-check", cmd_morphism_check, target=True, morphism=True)
    add("rh-check", cmd_rh_check, target=True, morphism=True)
    add("push", cmd_push, target=True, morphism=True, divisor="required")
    add("pull", cmd_pull, target=True, morphism=True, divisor="required")
    add("forms", cmd_forms)
    add("canonical-map", cmd_canonical_map)
    p = add("aut", cmd_aut)
    p.add_argument("--budget", type=int, default=10, help="vertex cap for enumeration")
    add("hyperelliptic", cmd_hyperelliptic)
    add("weierstrass", cmd_weierstrass)
    add("classify", cmd_classify)
    p = sub.add_parser("scan")
    p.add_argument("--max-edges", type=int, default=7)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_scan)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except HypothesisError as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
