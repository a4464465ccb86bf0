"""Isomorph-free exhaustive generation of connected subcubic graphs.

Canonical augmentation: a graph on n vertices is produced exactly once,
from the parent obtained by deleting its canonical non-cut vertex.  Each
parent proposes attachment sets (one per automorphism orbit); a child is
kept only when the vertex just added is automorphic to the canonical
deletion choice.  Workers can split the level-k graph list and extend
independently without any shared state.

The verification harnesses that drive the curvature engines and the
classifier over every enumerated graph live here too.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .canon import canonical_result
from .curvature import (
    edge_curvatures,
    is_nonnegatively_curved,
    kappa_eps,
    kappa_lly,
    kappa_transport,
    negative_test,
)
from .exceptions import ResourceExceededError
from .graphs import Graph, WeightScheme
from .graphio import emit_graph6

Nbrs = tuple[tuple[int, ...], ...]

_HARD_CAP = 14  # exact exhaustive runs beyond this are not desk scale


@dataclass(frozen=True)
class EnumerationConfig:
    n_max: int
    max_degree: int = 3
    min_diameter: int | None = None
    require_kappa_nonneg: bool = False
    scheme: WeightScheme = WeightScheme.COMBINATORIAL
    jobs: int = 1


def _non_cut_vertices(nbrs: Nbrs) -> list[int]:
    n = len(nbrs)
    out = []
    for v in range(n):
        seen = [False] * n
        start = 0 if v != 0 else 1
        seen[start] = True
        seen[v] = True
        stack = [start]
        count = 1
        while stack:
            u = stack.pop()
            for x in nbrs[u]:
                if not seen[x]:
                    seen[x] = True
                    count += 1
                    stack.append(x)
        if count == n - 1:
            out.append(v)
    return out


def _children(nbrs: Nbrs, max_degree: int) -> Iterator[Nbrs]:
    """Accepted canonical children of one parent (one more vertex)."""
    n = len(nbrs)
    free = [v for v in range(n) if len(nbrs[v]) < max_degree]
    # orbit representatives of attachment sets under Aut(parent)
    gens = canonical_result(nbrs).generators
    seen_sets: set[tuple[int, ...]] = set()
    for size in range(1, max_degree + 1):
        for subset in itertools.combinations(free, size):
            if subset in seen_sets:
                continue
            orbit = {subset}
            frontier = [subset]
            while frontier:
                s = frontier.pop()
                for gen in gens:
                    img = tuple(sorted(gen[x] for x in s))
                    if img not in orbit:
                        orbit.add(img)
                        frontier.append(img)
            seen_sets.update(orbit)
            child = tuple(
                tuple(sorted(nbrs[v] + (n,))) if v in subset else nbrs[v]
                for v in range(n)
            ) + (tuple(sorted(subset)),)
            if _is_canonical_child(child):
                yield child


def _is_canonical_child(nbrs: Nbrs) -> bool:
    n = len(nbrs)
    res = canonical_result(nbrs)
    non_cut = _non_cut_vertices(nbrs)
    vstar = max(non_cut, key=lambda v: res.labeling[v])
    return res.orbit_of[n - 1] == res.orbit_of[vstar]


def _extend_batch(args: tuple[list[Nbrs], int]) -> list[Nbrs]:
    parents, max_degree = args
    out: list[Nbrs] = []
    for p in parents:
        out.extend(_children(p, max_degree))
    return out


def enumerate_levels(
    n_max: int, max_degree: int = 3, jobs: int = 1
) -> Iterator[tuple[int, list[Nbrs]]]:
    """Yield (n, all connected graphs with n vertices), one per iso class."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    level: list[Nbrs] = [((),)]
    yield 1, level
    for n in range(2, n_max + 1):
        if jobs > 1 and len(level) > 4 * jobs:
            from multiprocessing import Pool

            chunks = [level[i::jobs] for i in range(jobs)]
            with Pool(jobs) as pool:
                parts = pool.map(
                    _extend_batch, [(c, max_degree) for c in chunks]
                )
            nxt = [g for part in parts for g in part]
        else:
            nxt = _extend_batch((level, max_degree))
        nxt.sort()
        level = nxt
        yield n, level


def enumerate_subcubic(
    n: int, max_degree: int = 3, jobs: int = 1
) -> Iterator[Graph]:
    """Connected simple graphs with exactly n vertices, max degree bounded."""
    for k, level in enumerate_levels(n, max_degree, jobs):
        if k == n:
            for nbrs in level:
                yield _to_graph(nbrs)


def _to_graph(nbrs: Nbrs, scheme: WeightScheme = WeightScheme.COMBINATORIAL) -> Graph:
    edges = [(u, v) for u in range(len(nbrs)) for v in nbrs[u] if u < v]
    return Graph(len(nbrs), edges, scheme)


# ---------------------------------------------------------------------
# verification harnesses


@dataclass
class VerificationReport:
    task: str
    config: dict
    counts: dict[int, dict] = field(default_factory=dict)
    unrecognized: list[str] = field(default_factory=list)
    counterexamples: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.unrecognized and not self.counterexamples

    def to_json(self) -> dict:
        return {
            "task": self.task,
            "config": self.config,
            "counts": {str(n): c for n, c in sorted(self.counts.items())},
            "unrecognized": sorted(self.unrecognized),
            "counterexamples": sorted(self.counterexamples),
            "ok": self.ok,
            "wall_time_s": round(self.wall_time, 3),
        }


def _check_cap(n_max: int) -> None:
    if n_max > _HARD_CAP:
        raise ResourceExceededError(
            f"exhaustive runs are capped at n = {_HARD_CAP}; got {n_max}"
        )


def verify_classification(n_max: int, jobs: int = 1) -> VerificationReport:
    """Every subcubic graph with diameter >= 6 and kappa >= 0 must classify."""
    from .classify import Family, classify  # deferred: families data load

    _check_cap(n_max)
    t0 = time.perf_counter()
    report = VerificationReport(
        task="classification", config={"n_max": n_max, "jobs": jobs}
    )
    for n, level in enumerate_levels(n_max, 3, jobs):
        generated = len(level)
        survivors = 0
        kinds: dict[str, int] = {}
        for nbrs in level:
            g = _to_graph(nbrs)
            if g.diameter() < 6 or not is_nonnegatively_curved(g):
                continue
            survivors += 1
            desc = classify(g, require_membership=False)
            if desc.kind is Family.UNRECOGNIZED:
                report.unrecognized.append(emit_graph6(g))
            else:
                kinds[desc.kind.value] = kinds.get(desc.kind.value, 0) + 1
        report.counts[n] = {
            "generated": generated,
            "survivors": survivors,
            "kinds": dict(sorted(kinds.items())),
        }
    report.wall_time = time.perf_counter() - t0
    return report


def verify_scheme_equivalence(n_max: int, jobs: int = 1) -> VerificationReport:
    """Nonnegativity is scheme-independent; kappa_C = deg * kappa_N when
    the endpoint degrees agree."""
    _check_cap(n_max)
    t0 = time.perf_counter()
    report = VerificationReport(
        task="scheme-equivalence", config={"n_max": n_max, "jobs": jobs}
    )
    for n, level in enumerate_levels(n_max, 3, jobs):
        checked = 0
        for nbrs in level:
            g = _to_graph(nbrs)
            if g.num_edges() == 0:
                continue
            gn = _to_graph(nbrs, WeightScheme.NORMALIZED)
            kc = edge_curvatures(g, "transport")
            kn = {e: kappa_lly(gn, *e).value for e in gn.edges()}
            if (min(kc.values()) >= 0) != (min(kn.values()) >= 0):
                report.counterexamples.append(emit_graph6(g))
                continue
            for u, v in g.edges():
                if g.degree(u) == g.degree(v) and kc[(u, v)] != g.degree(u) * kn[(u, v)]:
                    report.counterexamples.append(emit_graph6(g))
                    break
            checked += 1
        report.counts[n] = {"generated": len(level), "checked": checked}
    report.wall_time = time.perf_counter() - t0
    return report


def cross_check_engines(n_max: int, jobs: int = 1) -> VerificationReport:
    """kappa_transport must equal kappa_lly exactly on every edge."""
    _check_cap(n_max)
    t0 = time.perf_counter()
    report = VerificationReport(
        task="engine-cross-check", config={"n_max": n_max, "jobs": jobs}
    )
    for n, level in enumerate_levels(n_max, 3, jobs):
        edges_checked = 0
        for nbrs in level:
            g = _to_graph(nbrs)
            for u, v in g.edges():
                if kappa_transport(g, u, v).value != kappa_lly(g, u, v).value:
                    report.counterexamples.append(emit_graph6(g))
                    break
                edges_checked += 1
        report.counts[n] = {"generated": len(level), "edges": edges_checked}
    report.wall_time = time.perf_counter() - t0
    return report


def verify_ollivier_classification(n_max: int, jobs: int = 1) -> VerificationReport:
    """Normalized graphs with nonnegative non-lazy curvature and diameter
    >= 6 classify into the reduced family list (no sporadic graph), and
    kappa_ollivier >= 0 forces kappa >= 0 on the same edge."""
    from .classify import Family, classify

    _check_cap(n_max)
    allowed = {
        Family.PATH,
        Family.CYCLE,
        Family.PRISM,
        Family.MOBIUS_LADDER,
        Family.QUASI_LADDER,
    }
    t0 = time.perf_counter()
    report = VerificationReport(
        task="ollivier-classification", config={"n_max": n_max, "jobs": jobs}
    )
    for n, level in enumerate_levels(n_max, 3, jobs):
        survivors = 0
        kinds: dict[str, int] = {}
        for nbrs in level:
            gn = _to_graph(nbrs, WeightScheme.NORMALIZED)
            if gn.num_edges() == 0:
                continue
            k_o = {e: kappa_eps(gn, *e, Fraction(1)) for e in gn.edges()}
            for e, ko in k_o.items():
                if ko >= 0 and kappa_lly(gn, *e).value < 0:
                    report.counterexamples.append(emit_graph6(gn))
                    break
            if min(k_o.values()) < 0 or gn.diameter() < 6:
                continue
            survivors += 1
            desc = classify(_to_graph(nbrs), require_membership=False)
            if desc.kind not in allowed:
                report.unrecognized.append(emit_graph6(gn))
            else:
                kinds[desc.kind.value] = kinds.get(desc.kind.value, 0) + 1
        report.counts[n] = {
            "generated": len(level),
            "survivors": survivors,
            "kinds": dict(sorted(kinds.items())),
        }
    report.wall_time = time.perf_counter() - t0
    return report
