"""Exact Wasserstein distance between probability measures on a graph.

Masses are rationals; the solver clears denominators and runs an integer
min-cost flow (successive shortest paths with Bellman-Ford), so every
returned cost and coupling is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Mapping

from .exceptions import EpsilonOutOfRangeError, MassMismatchError
from .graphs import Graph

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class ProbabilityMeasure:
    """Sparse nonnegative mass vector with total mass one."""

    mass: dict[int, Fraction]

    def __post_init__(self):
        clean = {v: Fraction(x) for v, x in self.mass.items() if x != 0}
        if any(x < 0 for x in clean.values()):
            raise ValueError("negative mass")
        if sum(clean.values(), ZERO) != 1:
            raise ValueError("total mass must be 1")
        object.__setattr__(self, "mass", clean)

    def support(self) -> list[int]:
        return sorted(self.mass)

    def __getitem__(self, v: int) -> Fraction:
        return self.mass.get(v, ZERO)


@dataclass(frozen=True)
class TransportPlan:
    """Coupling between two measures: entries[(u, v)] is mass moved u -> v."""

    entries: dict[tuple[int, int], Fraction]
    source: ProbabilityMeasure
    target: ProbabilityMeasure

    def cost(self, g: Graph) -> Fraction:
        dist = g.distances()
        return sum(
            (x * dist[u][v] for (u, v), x in self.entries.items()), ZERO
        )

    def validate(self) -> None:
        """Check the coupling conditions exactly; raises on violation."""
        row: dict[int, Fraction] = {}
        col: dict[int, Fraction] = {}
        for (u, v), x in self.entries.items():
            if x < 0:
                raise ValueError(f"negative coupling mass at ({u},{v})")
            row[u] = row.get(u, ZERO) + x
            col[v] = col.get(v, ZERO) + x
        if row != self.source.mass or col != self.target.mass:
            raise ValueError("marginals do not match the coupled measures")


def measure_mu(g: Graph, u: int, eps: Fraction) -> ProbabilityMeasure:
    """Lazy random-walk measure: 1 - eps*Deg(u) at u, eps*w(u,v)/m(u) at v ~ u."""
    eps = Fraction(eps)
    deg_u = g.lazy_degree(u)
    if eps < 0 or eps * deg_u > 1:
        raise EpsilonOutOfRangeError(
            f"epsilon {eps} outside [0, 1/Deg({u})] = [0, {1 / deg_u}]"
        )
    mass = {u: 1 - eps * deg_u}
    mu = g.vertex_weight(u)
    for v in g.adj[u]:
        mass[v] = eps * g.weight(u, v) / mu
    return ProbabilityMeasure(mass)


def wasserstein(
    g: Graph, mu: ProbabilityMeasure | Mapping[int, Fraction],
    nu: ProbabilityMeasure | Mapping[int, Fraction],
) -> tuple[Fraction, TransportPlan]:
    """Minimum d-weighted coupling cost, with an optimal coupling as witness."""
    if not isinstance(mu, ProbabilityMeasure):
        mu = ProbabilityMeasure(dict(mu))
    if not isinstance(nu, ProbabilityMeasure):
        nu = ProbabilityMeasure(dict(nu))
    total_mu = sum(mu.mass.values(), ZERO)
    total_nu = sum(nu.mass.values(), ZERO)
    if total_mu != total_nu:
        raise MassMismatchError(f"total masses differ: {total_mu} vs {total_nu}")

    sources = mu.support()
    sinks = nu.support()
    scale = lcm(
        *[x.denominator for x in mu.mass.values()],
        *[x.denominator for x in nu.mass.values()],
    )
    supply = [int(mu[v] * scale) for v in sources]
    demand = [int(nu[v] * scale) for v in sinks]
    dist = g.distances()
    cost = [[dist[a][b] for b in sinks] for a in sources]

    flow = _min_cost_transport(supply, demand, cost)

    total = sum(
        flow[i][j] * cost[i][j] for i in range(len(sources)) for j in range(len(sinks))
    )
    entries = {
        (sources[i], sinks[j]): Fraction(flow[i][j], scale)
        for i in range(len(sources))
        for j in range(len(sinks))
        if flow[i][j]
    }
    plan = TransportPlan(entries=entries, source=mu, target=nu)
    return Fraction(total, scale), plan


def _min_cost_transport(
    supply: list[int], demand: list[int], cost: list[list[int]]
) -> list[list[int]]:
    """Integer transportation problem by successive shortest paths.

    Uncapacitated forward arcs source i -> sink j with the given costs;
    each augmentation exhausts a supply or a demand, or empties a reverse
    arc, so the loop terminates quickly at these sizes.
    """
    m, n = len(supply), len(demand)
    supply = list(supply)
    demand = list(demand)
    flow = [[0] * n for _ in range(m)]
    remaining = sum(supply)
    guard = 0
    while remaining > 0:
        guard += 1
        if guard > 10000 + m * n * 100:
            raise RuntimeError("min-cost flow failed to terminate")  # unreachable
        # Bellman-Ford over the residual graph; nodes: sources 0..m-1,
        # sinks m..m+n-1, virtual start = all sources with supply left.
        INF = float("inf")
        d: list = [0 if i < m and supply[i] > 0 else INF for i in range(m + n)]
        parent = [-1] * (m + n)
        for _ in range(m + n):
            changed = False
            for i in range(m):
                di = d[i]
                if di < INF:
                    row = cost[i]
                    for j in range(n):
                        nd = di + row[j]
                        if nd < d[m + j]:
                            d[m + j] = nd
                            parent[m + j] = i
                            changed = True
            for i in range(m):
                fi = flow[i]
                for j in range(n):
                    if fi[j] > 0 and d[m + j] < INF:
                        nd = d[m + j] - cost[i][j]
                        if nd < d[i]:
                            d[i] = nd
                            parent[i] = m + j
                            changed = True
            if not changed:
                break
        best = min(
            (j for j in range(n) if demand[j] > 0 and d[m + j] < INF),
            key=lambda j: d[m + j],
            default=None,
        )
        if best is None:
            raise RuntimeError("infeasible transport instance")  # unreachable
        # walk back to a source with remaining supply
        path = []
        node = m + best
        while True:
            prev = parent[node]
            path.append((prev, node))
            node = prev
            if node < m and parent[node] == -1:
                break
        path.reverse()
        delta = min(supply[path[0][0]], demand[best])
        for a, b in path:
            if a < m:  # forward arc unlimited
                continue
            delta = min(delta, flow[b][a - m])
        for a, b in path:
            if a < m:
                flow[a][b - m] += delta
            else:
                flow[b][a - m] -= delta
        supply[path[0][0]] -= delta
        demand[best] -= delta
        remaining -= delta
    return flow
