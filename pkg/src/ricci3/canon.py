"""Canonical labeling by colour refinement with backtracking.

Complete isomorphism invariant for the desk-scale graphs handled here
(at most a few dozen vertices).  The search keeps every optimal leaf, so
the automorphism group size and the vertex orbits fall out for free; the
enumeration module relies on both.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graphs import Graph
from .graphio import emit_graph6

Nbrs = Sequence[Sequence[int]]


@dataclass(frozen=True)
class CanonResult:
    """Canonical key plus group data.

    ``key`` is the canonically relabelled adjacency (row bitmasks);
    ``labeling`` maps each vertex to its canonical position; ``orbit_of``
    maps each vertex to the smallest vertex in its automorphism orbit.
    """

    key: tuple[int, ...]
    labeling: tuple[int, ...]
    orbit_of: tuple[int, ...]
    aut_size: int
    generators: tuple[tuple[int, ...], ...]


def _refine(n: int, nbrs: Nbrs, colors: list[int]) -> list[int]:
    """Equitable refinement: split classes by multisets of neighbour colours."""
    ncolors = len(set(colors))
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in nbrs[v])))
            for v in range(n)
        ]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [rank[s] for s in sigs]
        k = len(rank)
        if k == ncolors:
            return colors
        ncolors = k


class _Search:
    def __init__(self, n: int, nbrs: Nbrs):
        self.n = n
        self.nbrs = nbrs
        self.best_key: tuple[int, ...] | None = None
        self.best_labelings: list[tuple[int, ...]] = []

    def visit(self, colors: list[int]) -> None:
        n = self.n
        if max(colors) + 1 == n:
            rows = [0] * n
            for v in range(n):
                m = 0
                for u in self.nbrs[v]:
                    m |= 1 << colors[u]
                rows[colors[v]] = m
            key = tuple(rows)
            if self.best_key is None or key < self.best_key:
                self.best_key = key
                self.best_labelings = [tuple(colors)]
            elif key == self.best_key:
                self.best_labelings.append(tuple(colors))
            return
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k > 1)
        cell = [v for v in range(n) if colors[v] == target]
        for v in cell:
            child = [2 * c for c in colors]
            child[v] -= 1
            self.visit(_refine(n, self.nbrs, child))


def canonical_result(nbrs: Nbrs, initial_colors: Sequence[int] | None = None) -> CanonResult:
    """Run the full search on an adjacency-list graph."""
    n = len(nbrs)
    if n == 0:
        raise ValueError("empty graph")
    colors = list(initial_colors) if initial_colors is not None else [0] * n
    search = _Search(n, nbrs)
    search.visit(_refine(n, nbrs, colors))
    labs = search.best_labelings
    lab0 = labs[0]
    # orbits: union-find over the automorphisms linking optimal leaves
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    gens = []
    for lab in labs[1:]:
        inv = [0] * n
        for v in range(n):
            inv[lab[v]] = v
        sigma = tuple(inv[lab0[v]] for v in range(n))
        gens.append(sigma)
        for v in range(n):
            a, b = find(v), find(sigma[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    orbit_of = tuple(find(v) for v in range(n))
    return CanonResult(
        key=search.best_key,
        labeling=lab0,
        orbit_of=orbit_of,
        aut_size=len(labs),
        generators=tuple(gens),
    )


def canonical_key(nbrs: Nbrs) -> tuple[int, ...]:
    return canonical_result(nbrs).key


def canonical_form(g: Graph) -> bytes:
    """Canonical graph6 bytes: equal exactly for isomorphic graphs."""
    lab = canonical_result(g.adj).labeling
    relabelled = g.relabel(lab)
    return emit_graph6(relabelled).encode("ascii")


def isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n != g2.n or g1.num_edges() != g2.num_edges():
        return False
    if sorted(map(len, g1.adj)) != sorted(map(len, g2.adj)):
        return False
    return canonical_key(g1.adj) == canonical_key(g2.adj)


def automorphism_orbits(g: Graph) -> tuple[int, ...]:
    """Vertex -> smallest vertex in the same automorphism orbit."""
    return canonical_result(g.adj).orbit_of
