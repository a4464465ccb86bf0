"""Edge curvature engines.

Two independent routes are provided: the optimal-transport route
(``kappa_eps`` / ``kappa_lly``, any scheme) and the combinatorial
transport formula (``kappa_transport``), plus the negative-curvature
shortcut used as a pre-filter in exhaustive sweeps.  All values are exact
rationals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exceptions import (
    NoConvergenceError,
    NotAdjacentError,
    WrongSchemeError,
)
from .graphs import Graph, WeightScheme
from .transport import ProbabilityMeasure, TransportPlan, measure_mu, wasserstein

_HALVING_LIMIT = 20


@dataclass(frozen=True)
class CurvatureValue:
    """Curvature with an optional certificate.

    For the transport-formula engine the witness is the optimal partial
    bijection (a dict); for the limit engine it is an optimal coupling at
    the certification point ``eps``.
    """

    value: Fraction
    witness: Optional[object] = None
    eps: Optional[Fraction] = None


@dataclass(frozen=True)
class NegativeCertificate:
    """Witness for kappa(u,v) < 0: large extra-neighbour sets, far apart."""

    n_u: frozenset[int]
    n_v: frozenset[int]
    distance: int
    size_sum: int


def kappa_eps(g: Graph, u: int, v: int, eps: Fraction) -> Fraction:
    """1 - W(mu_u^eps, mu_v^eps) / d(u, v) for any distinct pair."""
    if u == v:
        raise ValueError("kappa_eps needs two distinct vertices")
    value, _ = _kappa_eps_plan(g, u, v, Fraction(eps))
    return value


def _kappa_eps_plan(
    g: Graph, u: int, v: int, eps: Fraction
) -> tuple[Fraction, TransportPlan]:
    mu = measure_mu(g, u, eps)
    nu = measure_mu(g, v, eps)
    w, plan = wasserstein(g, mu, nu)
    return 1 - w / g.dist(u, v), plan


def kappa_ollivier(g: Graph, u: int, v: int) -> Fraction:
    """Non-lazy walk curvature kappa_1 on a normalized graph."""
    if g.scheme is not WeightScheme.NORMALIZED:
        raise WrongSchemeError("kappa_ollivier is defined on normalized graphs")
    return kappa_eps(g, u, v, Fraction(1))


def kappa_lly(g: Graph, u: int, v: int) -> CurvatureValue:
    """Limit curvature lim_{eps->0+} kappa_eps/eps on an edge.

    eps -> kappa_eps is concave and piecewise linear with kappa_0 = 0, so
    if the slopes through 0 agree at eps1 and eps1/2 the map is linear on
    (0, eps1] and the limit equals that slope.  Otherwise halve and retry;
    piecewise linearity guarantees termination, so exhausting the budget
    signals a bug.
    """
    if not g.has_edge(u, v):
        raise NotAdjacentError(f"({u},{v}) is not an edge")
    if g.scheme is WeightScheme.GENERAL:
        eps1 = min(1 / g.lazy_degree(u), 1 / g.lazy_degree(v)) / 2
    else:
        eps1 = Fraction(1, g.max_degree() + 1)
    for _ in range(_HALVING_LIMIT):
        k1, plan = _kappa_eps_plan(g, u, v, eps1)
        k2, _ = _kappa_eps_plan(g, u, v, eps1 / 2)
        slope1 = k1 / eps1
        slope2 = k2 / (eps1 / 2)
        if slope1 == slope2:
            return CurvatureValue(value=slope1, witness=plan, eps=eps1)
        eps1 = eps1 / 2
    raise NoConvergenceError(
        f"no linear segment certified for edge ({u},{v}) after "
        f"{_HALVING_LIMIT} halvings"
    )


def _closed_ball(g: Graph, u: int) -> set[int]:
    return {u, *g.adj[u]}


def kappa_transport(g: Graph, u: int, v: int) -> CurvatureValue:
    """Combinatorial-graph curvature via optimal partial bijections.

    With B_uv the intersection of the closed unit balls and B_u^v, B_v^u
    their differences, the curvature is #B_uv minus the cheapest way to
    either match a vertex across (cost d-1) or leave it unmatched (cost 1).
    """
    if g.scheme is not WeightScheme.COMBINATORIAL:
        raise WrongSchemeError("the transport formula needs the combinatorial scheme")
    if not g.has_edge(u, v):
        raise NotAdjacentError(f"({u},{v}) is not an edge")
    ball_u = _closed_ball(g, u)
    ball_v = _closed_ball(g, v)
    shared = len(ball_u & ball_v)
    dom = sorted(ball_u - ball_v)
    ran = sorted(ball_v - ball_u)
    dist = g.distances()
    best, phi = _best_partial_bijection(dom, ran, dist)
    return CurvatureValue(value=Fraction(shared - best), witness=phi)


def _best_partial_bijection(
    dom: Sequence[int], ran: Sequence[int], dist
) -> tuple[int, dict[int, int]]:
    """Min of #unmatched + sum of (d-1) over matched pairs, with a witness."""
    p, q = len(dom), len(ran)
    best = p + q
    phi: dict[int, int] = {}
    if p <= 3 and q <= 3:
        for k in range(1, min(p, q) + 1):
            for dsub in itertools.combinations(range(p), k):
                for rsub in itertools.permutations(range(q), k):
                    cost = (p - k) + (q - k) + sum(
                        dist[dom[i]][ran[j]] - 1 for i, j in zip(dsub, rsub)
                    )
                    if cost < best:
                        best = cost
                        phi = {dom[i]: ran[j] for i, j in zip(dsub, rsub)}
        return best, phi
    # larger degrees: subset DP over the range side
    full = 1 << q
    INF = float("inf")
    f = [[INF] * full for _ in range(p + 1)]
    f[0][0] = 0
    for i in range(1, p + 1):
        di = dom[i - 1]
        for s in range(full):
            cur = f[i - 1][s]
            if cur == INF:
                continue
            if cur + 1 < f[i][s]:
                f[i][s] = cur + 1  # leave dom[i-1] unmatched
            for j in range(q):
                bit = 1 << j
                if not s & bit:
                    c = cur + dist[di][ran[j]] - 1
                    if c < f[i][s | bit]:
                        f[i][s | bit] = c
    best_s = min(range(full), key=lambda s: f[p][s] + q - bin(s).count("1"))
    best = int(f[p][best_s] + q - bin(best_s).count("1"))
    # reconstruct
    s = best_s
    cur = f[p][s]
    for i in range(p, 0, -1):
        if f[i - 1][s] + 1 == cur:
            cur = f[i - 1][s]
            continue
        for j in range(q):
            bit = 1 << j
            if s & bit and f[i - 1][s ^ bit] + dist[dom[i - 1]][ran[j]] - 1 == cur:
                phi[dom[i - 1]] = ran[j]
                s ^= bit
                cur = f[i - 1][s]
                break
    return best, phi


def negative_test(g: Graph, u: int, v: int) -> Optional[NegativeCertificate]:
    """Sound (never complete) shortcut: certificate implies kappa(u,v) < 0.

    Fires when the extra neighbours N_u, N_v number at least three in
    total and sit at distance >= 3 from each other.
    """
    if g.scheme is not WeightScheme.COMBINATORIAL:
        raise WrongSchemeError("the negative shortcut needs the combinatorial scheme")
    if not g.has_edge(u, v):
        raise NotAdjacentError(f"({u},{v}) is not an edge")
    n_u = frozenset(g.adj[u]) - {v}
    n_v = frozenset(g.adj[v]) - {u}
    size_sum = len(n_u) + len(n_v)
    if size_sum < 3:
        return None
    dist = g.distances()
    d = min((dist[a][b] for a in n_u for b in n_v), default=g.n)
    if d >= 3:
        return NegativeCertificate(n_u=n_u, n_v=n_v, distance=d, size_sum=size_sum)
    return None


def edge_curvature(g: Graph, u: int, v: int, engine: str = "auto") -> Fraction:
    """Curvature of one edge under the named engine.

    ``auto`` picks the transport formula on combinatorial graphs and the
    limit engine otherwise.
    """
    if engine == "auto":
        engine = (
            "transport" if g.scheme is WeightScheme.COMBINATORIAL else "ot-limit"
        )
    if engine == "transport":
        return kappa_transport(g, u, v).value
    if engine == "ot-limit":
        return kappa_lly(g, u, v).value
    if engine == "ollivier":
        return kappa_ollivier(g, u, v)
    raise ValueError(f"unknown engine {engine!r}")


def edge_curvatures(g: Graph, engine: str = "auto") -> dict[tuple[int, int], Fraction]:
    """Curvature of every edge, keyed by sorted vertex pair."""
    return {(u, v): edge_curvature(g, u, v, engine) for u, v in g.edges()}


def min_curvature(g: Graph, engine: str = "auto") -> Fraction:
    """Minimum edge curvature under the graph's scheme."""
    if g.num_edges() == 0:
        raise ValueError("graph has no edges")
    return min(edge_curvatures(g, engine).values())


def is_nonnegatively_curved(g: Graph) -> bool:
    """Sign-only query with early exit; edgeless graphs count as nonnegative.

    On combinatorial graphs the negative-curvature shortcut is tried
    before the full computation of each edge.
    """
    combinatorial = g.scheme is WeightScheme.COMBINATORIAL
    for u, v in g.edges():
        if combinatorial:
            if negative_test(g, u, v) is not None:
                return False
            if kappa_transport(g, u, v).value < 0:
                return False
        elif kappa_lly(g, u, v).value < 0:
            return False
    return True


def curvature_profile(
    g: Graph, u: int, v: int, eps_samples: Sequence[Fraction]
) -> list[tuple[Fraction, Fraction]]:
    """Exact (eps, kappa_eps) pairs, e.g. to confirm concavity empirically."""
    out = []
    for eps in eps_samples:
        eps = Fraction(eps)
        if eps == 0:
            out.append((eps, Fraction(0)))
        else:
            out.append((eps, kappa_eps(g, u, v, eps)))
    return out
