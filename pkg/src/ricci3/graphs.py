"""Graph representation, distances, geodesic machinery and state functions.

Graphs here are finite, simple, connected and undirected, with vertex ids
``0..n-1``.  Distances are always combinatorial hop counts; the weight
scheme only affects measures and the Laplacian.  Instances are immutable
after construction and safe to share between workers.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exceptions import (
    DegreeOverflowError,
    DegreeTooHighError,
    DisconnectedError,
    DisconnectedSubsetError,
    DuplicateEdgeError,
    NotACycleError,
    NotGeodesicError,
    SelfLoopError,
)

Edge = tuple[int, int]

ONE = Fraction(1)


class WeightScheme(enum.Enum):
    COMBINATORIAL = "combinatorial"
    NORMALIZED = "normalized"
    GENERAL = "general"


class State(enum.Enum):
    """State of an interior vertex of a geodesic path in a subcubic graph.

    A degree-2 vertex is in state TWO.  A degree-3 vertex is classified by
    comparing the root distance of its extra neighbour (the one off the
    path) with its own root distance: smaller, equal or larger.
    """

    TWO = "2"
    THREE_MINUS = "3-"
    THREE_ZERO = "30"
    THREE_PLUS = "3+"


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple connected graph with a weight scheme.

    ``w`` maps edges to positive rationals and ``m`` maps vertices to
    positive rationals.  The combinatorial scheme fixes both to 1; the
    normalized scheme fixes ``w`` to 1 and ``m`` to the degree.
    """

    __slots__ = ("n", "adj", "scheme", "_w", "_m", "_dist")

    def __init__(
        self,
        n: int,
        edges: Iterable[Edge],
        scheme: WeightScheme = WeightScheme.COMBINATORIAL,
        w: Mapping[Edge, Fraction] | None = None,
        m: Mapping[int, Fraction] | None = None,
        max_degree: int | None = None,
    ):
        seen: set[Edge] = set()
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"vertex out of range in edge ({u},{v})")
            if u == v:
                raise SelfLoopError(f"self-loop at vertex {u}")
            e = _norm_edge(u, v)
            if e in seen:
                raise DuplicateEdgeError(f"duplicate edge {e}")
            seen.add(e)
            nbrs[u].append(v)
            nbrs[v].append(u)
        if max_degree is not None:
            for u in range(n):
                if len(nbrs[u]) > max_degree:
                    raise DegreeOverflowError(
                        f"vertex {u} has degree {len(nbrs[u])} > {max_degree}"
                    )
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(a)) for a in nbrs
        )
        self.scheme = scheme
        if scheme is WeightScheme.GENERAL:
            if w is None or m is None:
                raise ValueError("general scheme needs explicit w and m")
            self._w = {_norm_edge(*e): Fraction(x) for e, x in w.items()}
            if set(self._w) != seen:
                raise ValueError("w must be defined exactly on the edge set")
            self._m = {u: Fraction(m[u]) for u in range(n)}
            if any(x <= 0 for x in self._w.values()) or any(
                x <= 0 for x in self._m.values()
            ):
                raise ValueError("weights must be positive")
        else:
            if w is not None or m is not None:
                raise ValueError("w/m are implied by the scheme")
            self._w = None
            self._m = None
        self._dist: tuple[tuple[int, ...], ...] | None = None
        self._check_connected()

    def _check_connected(self) -> None:
        if self.n == 0:
            raise ValueError("empty graph")
        seen = bytearray(self.n)
        seen[0] = 1
        queue = deque([0])
        count = 1
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if not seen[v]:
                    seen[v] = 1
                    count += 1
                    queue.append(v)
        if count != self.n:
            raise DisconnectedError(f"graph has {self.n - count} unreachable vertices")

    # basic queries ----------------------------------------------------

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def max_degree(self) -> int:
        return max(len(a) for a in self.adj)

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adj[u]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> list[Edge]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def weight(self, u: int, v: int) -> Fraction:
        if not self.has_edge(u, v):
            raise ValueError(f"no edge ({u},{v})")
        if self.scheme is WeightScheme.GENERAL:
            return self._w[_norm_edge(u, v)]
        return ONE

    def vertex_weight(self, u: int) -> Fraction:
        if self.scheme is WeightScheme.COMBINATORIAL:
            return ONE
        if self.scheme is WeightScheme.NORMALIZED:
            return Fraction(self.degree(u))
        return self._m[u]

    def lazy_degree(self, u: int) -> Fraction:
        """Sum of w(u,v)/m(u) over neighbours; 1/Deg bounds valid epsilon."""
        if self.scheme is WeightScheme.COMBINATORIAL:
            return Fraction(self.degree(u))
        if self.scheme is WeightScheme.NORMALIZED:
            return ONE
        return sum((self._w[_norm_edge(u, v)] for v in self.adj[u]),
                   Fraction(0)) / self._m[u]

    def with_scheme(self, scheme: WeightScheme) -> "Graph":
        """Same underlying graph re-equipped with another standard scheme."""
        if scheme is WeightScheme.GENERAL:
            raise ValueError("general weights must be given explicitly")
        return Graph(self.n, self.edges(), scheme)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image under the permutation ``u -> perm[u]`` (same scheme)."""
        if self.scheme is WeightScheme.GENERAL:
            w = {_norm_edge(perm[u], perm[v]): self._w[_norm_edge(u, v)]
                 for u, v in self.edges()}
            m = {perm[u]: self._m[u] for u in range(self.n)}
            return Graph(self.n, list(w), WeightScheme.GENERAL, w=w, m=m)
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges()],
                     self.scheme)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Graph) and self.n == other.n
                and self.adj == other.adj and self.scheme == other.scheme)

    def __hash__(self) -> int:
        return hash((self.n, self.adj, self.scheme))

    def __repr__(self) -> str:
        return (f"Graph(n={self.n}, m={self.num_edges()}, "
                f"scheme={self.scheme.value})")

    # distances --------------------------------------------------------

    def distances(self) -> tuple[tuple[int, ...], ...]:
        """All-pairs hop distances (BFS from every vertex), cached."""
        if self._dist is None:
            rows = []
            for s in range(self.n):
                d = [-1] * self.n
                d[s] = 0
                queue = deque([s])
                while queue:
                    u = queue.popleft()
                    du1 = d[u] + 1
                    for v in self.adj[u]:
                        if d[v] < 0:
                            d[v] = du1
                            queue.append(v)
                rows.append(tuple(d))
            self._dist = tuple(rows)
        return self._dist

    def dist(self, u: int, v: int) -> int:
        return self.distances()[u][v]

    def diameter(self) -> int:
        return max(max(row) for row in self.distances())


def build_graph(
    edge_list: Iterable[Edge],
    scheme: WeightScheme = WeightScheme.COMBINATORIAL,
    n: int | None = None,
    max_degree: int | None = None,
) -> Graph:
    """Validated graph from an edge list; ``n`` defaults to max id + 1."""
    edges = [tuple(e) for e in edge_list]
    if n is None:
        if not edges:
            raise ValueError("cannot infer vertex count from an empty edge list")
        n = 1 + max(max(e) for e in edges)
    return Graph(n, edges, scheme, max_degree=max_degree)


# geodesic machinery ----------------------------------------------------


def is_geodesic_path(g: Graph, vertices: Sequence[int]) -> bool:
    """True iff the sequence is a path with d(v_i, v_j) = |i - j| throughout."""
    vs = list(vertices)
    if len(set(vs)) != len(vs) or not vs:
        return False
    for a, b in zip(vs, vs[1:]):
        if not g.has_edge(a, b):
            return False
    # d(v_0, v_l) = l forces every intermediate distance to be tight.
    return g.dist(vs[0], vs[-1]) == len(vs) - 1


def check_geodesic(g: Graph, vertices: Sequence[int]) -> tuple[int, ...]:
    if not is_geodesic_path(g, vertices):
        raise NotGeodesicError(f"not a geodesic path: {list(vertices)}")
    return tuple(vertices)


def diameter_path(g: Graph) -> tuple[int, ...]:
    """A maximum-length geodesic, lexicographically smallest among them.

    Determinism matters for reproducible reports, so ties are broken on
    the full vertex sequence.
    """
    dist = g.distances()
    diam = max(max(row) for row in dist)
    start = min(u for u in range(g.n) if max(dist[u]) == diam)
    targets = {v for v in range(g.n) if dist[start][v] == diam}
    path = [start]
    current = start
    remaining = diam
    while remaining > 0:
        for x in g.adj[current]:  # adjacency is sorted, so min comes first
            narrowed = {v for v in targets if dist[x][v] == remaining - 1}
            if narrowed:
                path.append(x)
                current = x
                targets = narrowed
                remaining -= 1
                break
    return tuple(path)


def is_geodesic_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    """True iff distances along the cycle agree with distances in ``g``."""
    vs = list(cycle)
    if vs and vs[0] == vs[-1]:
        vs = vs[:-1]
    length = len(vs)
    if length < 3 or len(set(vs)) != length:
        raise NotACycleError(f"not a cycle: {list(cycle)}")
    for i, u in enumerate(vs):
        if not g.has_edge(u, vs[(i + 1) % length]):
            raise NotACycleError(f"missing cycle edge ({u},{vs[(i + 1) % length]})")
    dist = g.distances()
    for i in range(length):
        for j in range(i + 1, length):
            dc = min(j - i, length - (j - i))
            if dist[vs[i]][vs[j]] != dc:
                return False
    return True


def is_geodesic_subgraph(g: Graph, vertex_subset: Iterable[int]) -> bool:
    """True iff induced-subgraph distances equal ambient distances."""
    subset = sorted(set(vertex_subset))
    index = {v: i for i, v in enumerate(subset)}
    k = len(subset)
    if k == 0:
        raise DisconnectedSubsetError("empty subset")
    sub_adj = [[index[v] for v in g.adj[u] if v in index] for u in subset]
    # BFS inside the induced subgraph
    dist_sub = []
    for s in range(k):
        d = [-1] * k
        d[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in sub_adj[u]:
                if d[v] < 0:
                    d[v] = d[u] + 1
                    queue.append(v)
        dist_sub.append(d)
    if any(d < 0 for d in dist_sub[0]):
        raise DisconnectedSubsetError("subset induces a disconnected subgraph")
    dist = g.distances()
    return all(
        dist_sub[i][j] == dist[subset[i]][subset[j]]
        for i in range(k)
        for j in range(i + 1, k)
    )


# state function --------------------------------------------------------


@dataclass(frozen=True)
class StateAssignment:
    """States of the interior vertices of a geodesic path, rooted at its start.

    ``labels`` and ``extra_neighbor`` are keyed by vertex id; the extra
    neighbour is only present for degree-3 vertices.
    """

    root: int
    path: tuple[int, ...]
    labels: dict[int, State]
    extra_neighbor: dict[int, int]

    def sequence(self) -> tuple[State, ...]:
        """States in path order, v_1 .. v_{l-1}."""
        return tuple(self.labels[v] for v in self.path[1:-1])


def state_function(g: Graph, path: Sequence[int]) -> StateAssignment:
    """Label each interior path vertex 2 / 3- / 30 / 3+ by its extra neighbour.

    The root distance r is taken from the first path vertex; a degree-3
    interior vertex with extra neighbour u gets 3-, 30 or 3+ according to
    r(u) < r(v), r(u) = r(v) or r(u) > r(v).
    """
    if g.max_degree() > 3:
        raise DegreeTooHighError("state function needs maximum degree <= 3")
    vs = check_geodesic(g, path)
    root = vs[0]
    r = g.distances()[root]
    labels: dict[int, State] = {}
    extra: dict[int, int] = {}
    for i in range(1, len(vs) - 1):
        v = vs[i]
        deg = g.degree(v)
        if deg == 2:
            labels[v] = State.TWO
            continue
        u = next(x for x in g.adj[v] if x != vs[i - 1] and x != vs[i + 1])
        extra[v] = u
        if r[u] < r[v]:
            labels[v] = State.THREE_MINUS
        elif r[u] == r[v]:
            labels[v] = State.THREE_ZERO
        else:
            labels[v] = State.THREE_PLUS
    return StateAssignment(root=root, path=vs, labels=labels, extra_neighbor=extra)
