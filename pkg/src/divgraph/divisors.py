"""Divisors on a multigraph: linear equivalence, reduction and rank.

A divisor is an integer coefficient per vertex.  Two divisors are
linearly equivalent when they differ by the Laplacian of an integer
vertex function; every equivalence class has a unique base-reduced
representative, which is what all equivalence and rank tests run on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import HypothesisError, SizeLimitError
from .graphs import Multigraph


class Divisor:
    """Integer-valued function on the vertices of a fixed graph.

    Supports addition, subtraction, negation and integer scaling;
    operands must live on the same graph.
    """

    __slots__ = ("graph", "coeffs")

    def __init__(self, graph, coeffs):
        arr = np.array(list(coeffs), dtype=np.int64)
        if arr.shape != (graph.num_vertices,):
            raise ValueError(
                f"divisor needs {graph.num_vertices} coefficients, got {arr.shape}"
            )
        arr.flags.writeable = False
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Divisor is immutable")

    @classmethod
    def zero(cls, graph):
        return cls(graph, [0] * graph.num_vertices)

    @classmethod
    def at(cls, graph, vertex, count=1):
        """count * (vertex)."""
        c = [0] * graph.num_vertices
        c[vertex] = count
        return cls(graph, c)

    @property
    def degree(self):
        return int(self.coeffs.sum())

    @property
    def is_effective(self):
        return bool((self.coeffs >= 0).all())

    def __getitem__(self, x):
        return int(self.coeffs[x])

    def _same_graph(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        if self.graph != other.graph:
            raise ValueError("divisors live on different graphs")
        return other

    def __add__(self, other):
        other = self._same_graph(other)
        if other is NotImplemented:
            return NotImplemented
        return Divisor(self.graph, self.coeffs + other.coeffs)

    def __sub__(self, other):
        other = self._same_graph(other)
        if other is NotImplemented:
            return NotImplemented
        return Divisor(self.graph, self.coeffs - other.coeffs)

    def __neg__(self):
        return Divisor(self.graph, -self.coeffs)

    def __mul__(self, scalar):
        return Divisor(self.graph, self.coeffs * int(scalar))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.graph == other.graph and bool((self.coeffs == other.coeffs).all())

    def __hash__(self):
        return hash((self.graph, tuple(self.coeffs.tolist())))

    def __repr__(self):
        return f"Divisor({self.coeffs.tolist()})"

    def to_json_dict(self):
        return {"coeffs": self.coeffs.tolist()}

    @classmethod
    def from_json_dict(cls, graph, data):
        try:
            coeffs = data["coeffs"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"divisor JSON needs 'coeffs': {exc}") from exc
        return cls(graph, coeffs)


def principal_divisor(graph, values):
    """Laplacian divisor of an integer vertex function.

    The coefficient at x is the sum of f(x) - f(y) over edges xy; the
    result always has degree zero.
    """
    f = np.array(list(values), dtype=np.int64)
    if f.shape != (graph.num_vertices,):
        raise ValueError("function must assign a value to every vertex")
    out = np.zeros(graph.num_vertices, dtype=np.int64)
    for u, v in graph.edges:
        out[u] += f[u] - f[v]
        out[v] += f[v] - f[u]
    return Divisor(graph, out)


def canonical_divisor(graph):
    """Divisor with coefficient deg(x) - 2 everywhere; degree 2g - 2."""
    return Divisor(graph, graph.degrees - 2)


def _reduced_array(divisor, base):
    arr = divisor.coeffs.copy()
    status = _kernels.qreduce(
        *divisor.graph._incidence[:2],
        divisor.graph.distances_from(base),
        base,
        arr,
    )
    if status != 0:
        raise RuntimeError("divisor reduction did not settle")
    return arr


def reduce_divisor(divisor, base=0):
    """The base-reduced representative of the divisor's class.

    The result is nonnegative away from the base and no nonempty vertex
    set avoiding the base can fire (each such set has a vertex with
    fewer chips than boundary edges).  Uniqueness within the class is a
    tested invariant of the suite, not an assumption of the caller.
    """
    return Divisor(divisor.graph, _reduced_array(divisor, base))


def is_reduced(divisor, base=0):
    """Check the reduced-form invariants directly (used by the oracles)."""
    coeffs = divisor.coeffs
    n = divisor.graph.num_vertices
    if any(coeffs[x] < 0 for x in range(n) if x != base):
        return False
    others = [x for x in range(n) if x != base]
    for size in range(1, len(others) + 1):
        for sub in itertools.combinations(others, size):
            inside = set(sub)
            fireable = True
            for x in sub:
                outdeg = sum(1 for y in divisor.graph.neighbors(x) if y not in inside)
                if coeffs[x] < outdeg:
                    fireable = False
                    break
            if fireable:
                return False
    return True


def is_equivalent(d1, d2):
    """Linear equivalence: equal degree and equal reduced form at base 0."""
    d2 = d1._same_graph(d2)
    if d1.degree != d2.degree:
        return False
    return bool((_reduced_array(d1, 0) == _reduced_array(d2, 0)).all())


def has_effective_representative(divisor):
    """Whether the class of the divisor contains an effective divisor."""
    if divisor.degree < 0:
        return False
    return _reduced_array(divisor, 0)[0] >= 0


def rank_at_least(divisor, k):
    """Decide rank(divisor) >= k without computing the full rank."""
    if k < 0:
        return True
    deg = divisor.degree
    if deg < 0:
        return False
    g = divisor.graph.genus
    if deg >= 2 * g - 1:
        # forced by Riemann-Roch: the complementary class has negative degree
        return deg - g >= k
    dred = _reduced_array(divisor, 0)
    if dred[0] < 0:
        return False
    if k == 0:
        return True
    return bool(
        _kernels.rank_geq(
            *divisor.graph._incidence[:2],
            divisor.graph.distances_from(0),
            0,
            dred,
            k,
        )
    )


def rank(divisor):
    """Rank of the complete linear system of the divisor.

    -1 when no effective divisor is equivalent; otherwise the largest k
    such that subtracting any effective degree-k divisor leaves a class
    with an effective representative.  Degrees at least 2g - 1 shortcut
    to deg - g.
    """
    deg = divisor.degree
    if deg < 0:
        return -1
    g = divisor.graph.genus
    if deg >= 2 * g - 1:
        return deg - g
    dred = _reduced_array(divisor, 0)
    if dred[0] < 0:
        return -1
    indptr, nbr = divisor.graph._incidence[:2]
    dist = divisor.graph.distances_from(0)
    k = 1
    while k <= deg and _kernels.rank_geq(indptr, nbr, dist, 0, dred, k):
        k += 1
    return k - 1


def riemann_roch_residual(divisor):
    """rank(D) - rank(K - D) - (deg(D) + 1 - g); zero on every graph."""
    k = canonical_divisor(divisor.graph)
    return (
        rank(divisor)
        - rank(k - divisor)
        - (divisor.degree + 1 - divisor.graph.genus)
    )


def clifford_check(divisor):
    """Verify rank(D) <= deg(D) / 2.

    Applicable only when both the class of D and of K - D contain
    effective divisors; otherwise a HypothesisError is raised.
    """
    k = canonical_divisor(divisor.graph)
    if not has_effective_representative(divisor) or not has_effective_representative(
        k - divisor
    ):
        raise HypothesisError(
            "Clifford bound needs effective representatives for D and K - D"
        )
    return 2 * rank(divisor) <= divisor.degree


def order_divisor(graph, ordering):
    """Divisor of a linear vertex ordering, of degree g - 1.

    ordering lists the vertices from smallest to largest; the
    coefficient at x is (number of edges to smaller vertices) - 1.
    """
    ordering = list(ordering)
    if sorted(ordering) != list(range(graph.num_vertices)):
        raise ValueError("ordering must be a permutation of the vertices")
    pos = {x: i for i, x in enumerate(ordering)}
    coeffs = [-1] * graph.num_vertices
    for u, v in graph.edges:
        later = u if pos[u] > pos[v] else v
        coeffs[later] += 1
    return Divisor(graph, coeffs)


def dichotomy_check(divisor, max_vertices=8):
    """Exactly one holds: rank(D) >= 0, or some ordering divisor nu has
    rank(nu - D) >= 0.  Enumerates all |V|! orderings exactly.
    """
    graph = divisor.graph
    if graph.num_vertices > max_vertices:
        raise SizeLimitError(
            f"dichotomy enumeration limited to {max_vertices} vertices"
        )
    first = has_effective_representative(divisor)
    second = False
    for perm in itertools.permutations(range(graph.num_vertices)):
        nu = order_divisor(graph, perm)
        if has_effective_representative(nu - divisor):
            second = True
            if not first:
                break
    return first != second


@dataclass(frozen=True)
class DivisorClass:
    """A linear-equivalence class, held as its base-0 reduced representative."""

    graph: Multigraph
    rep: tuple

    def divisor(self):
        return Divisor(self.graph, self.rep)

    @property
    def degree(self):
        return sum(self.rep)

    @classmethod
    def zero(cls, graph):
        return divisor_class(Divisor.zero(graph))

    @property
    def is_zero(self):
        return self == DivisorClass.zero(self.graph)

    def __add__(self, other):
        if self.graph != other.graph:
            raise ValueError("classes live on different graphs")
        return divisor_class(self.divisor() + other.divisor())

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return divisor_class(-self.divisor())

    def order(self):
        """Order in the degree-0 class group (degree must be 0)."""
        if self.degree != 0:
            raise ValueError("only degree-0 classes have finite order")
        total = self
        n = 1
        zero = DivisorClass.zero(self.graph)
        while total != zero:
            total = total + self
            n += 1
        return n


def divisor_class(divisor):
    return DivisorClass(divisor.graph, tuple(_reduced_array(divisor, 0).tolist()))
