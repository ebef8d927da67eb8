import pytest

from divgraph.graphs import (
    Multigraph,
    banana,
    complete_graph,
    cycle_graph,
    path_graph,
    theta_graph,
    uniform_banana,
)


def star_graph(leaves):
    return Multigraph(leaves + 1, [(0, i + 1) for i in range(leaves)])


def spider_tree():
    # five vertices: a path of length 2 plus two extra leaves at the center
    return Multigraph(5, [(0, 1), (1, 2), (1, 3), (3, 4)])


def two_triangles_with_bridge():
    return Multigraph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])


def corpus():
    """The fixture corpus: small trees, cycles, bananas, thetas, K4, and
    the bridged double triangle."""
    graphs = {
        "P2": path_graph(2),
        "P3": path_graph(3),
        "P4": path_graph(4),
        "P5": path_graph(5),
        "star3": star_graph(3),
        "star4": star_graph(4),
        "spider": spider_tree(),
        "C3": cycle_graph(3),
        "C4": cycle_graph(4),
        "C5": cycle_graph(5),
        "C6": cycle_graph(6),
        "B2": uniform_banana(2),
        "B3": uniform_banana(3),
        "B4": uniform_banana(4),
        "B5": uniform_banana(5),
        "B(1,1,2)": banana(1, 1, 2),
        "B(2,2,2)": banana(2, 2, 2),
        "B(1,3,5)": banana(1, 3, 5),
        "B(3,3,3,3)": banana(3, 3, 3, 3),
        "theta1": theta_graph(1),
        "theta2": theta_graph(2),
        "K4": complete_graph(4),
        "two_triangles_bridge": two_triangles_with_bridge(),
    }
    return graphs


@pytest.fixture(scope="session")
def corpus_graphs():
    return corpus()


def sample_divisors(graph, count, seed):
    """Deterministic sample with degrees spread over -3 .. 2g+1."""
    import random

    from divgraph.divisors import Divisor

    rng = random.Random(seed)
    g = graph.genus
    n = graph.num_vertices
    out = []
    for _ in range(count):
        target = rng.randint(-3, 2 * g + 1)
        coeffs = [rng.randint(-3, 4) for _ in range(n)]
        coeffs[rng.randrange(n)] += target - sum(coeffs)
        out.append(Divisor(graph, coeffs))
    return out
