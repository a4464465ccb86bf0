"""Deterministic generators for every classified family.

Finite families: paths, cycles, prisms, Moebius ladders, one 10-vertex
pinched-ladder graph, quasi-ladders (a ladder core capped on both ends by
forms from a small data-driven catalog), and two sporadic 12-vertex
cages.  Infinite families are represented as finite windows whose edges
far from the truncation boundary carry their true curvature.
"""

from __future__ import annotations

import enum
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .curvature import is_nonnegatively_curved
from .exceptions import BadParamError, SelfValidationError
from .graphs import Graph, WeightScheme


class Family(enum.Enum):
    PATH = "path"
    CYCLE = "cycle"
    PRISM = "prism"
    MOBIUS_LADDER = "mobius_ladder"
    PARTICULAR = "particular"
    QUASI_LADDER = "quasi_ladder"
    SPORADIC = "sporadic"
    INFINITE_WINDOW = "infinite_window"
    UNRECOGNIZED = "unrecognized"


@dataclass(frozen=True)
class FamilyDescriptor:
    kind: Family
    params: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"kind": self.kind.value, **self.params}


@dataclass(frozen=True)
class QuasiLadderSpec:
    """Ladder core of ``core_rungs`` columns capped left and right.

    ``flip_right`` mirrors the right cap across the two rails; it only
    changes the graph when both caps lack the rail-swap symmetry (of the
    shipped catalog, only ``pendant``).
    """

    core_rungs: int
    left_form: str
    right_form: str
    flip_right: bool = False


@dataclass(frozen=True)
class EndForm:
    """Cap template: vertices c0..c{k-1} plus attachment edges to x / y."""

    id: str
    cap_vertices: int
    edges: tuple[tuple[str, str], ...]

    def is_symmetric(self) -> bool:
        """Invariant under swapping the two rail attachment points."""
        swap = {"x": "y", "y": "x"}
        mirrored = {
            tuple(sorted((swap.get(a, a), swap.get(b, b)))) for a, b in self.edges
        }
        return mirrored == {tuple(sorted(e)) for e in self.edges}


# data loading ----------------------------------------------------------

_DATA_ENV = "RICCI_DATA_DIR"


def _data_path(name: str) -> Path:
    override = os.environ.get(_DATA_ENV)
    if override:
        return Path(override) / name
    return Path(__file__).parent / "data" / name


def _load_json(name: str) -> dict:
    with open(_data_path(name), "r", encoding="utf-8") as fh:
        return json.load(fh)


_catalog_cache: dict[str, list[EndForm]] = {}


def end_form_catalog() -> list[EndForm]:
    """The cap catalog, loaded once per data location."""
    key = str(_data_path("end_forms.json"))
    if key not in _catalog_cache:
        raw = _load_json("end_forms.json")
        _catalog_cache[key] = [
            EndForm(
                id=f["id"],
                cap_vertices=int(f["cap_vertices"]),
                edges=tuple((a, b) for a, b in f["edges"]),
            )
            for f in raw["forms"]
        ]
    return list(_catalog_cache[key])


def _form_by_id(form_id: str) -> EndForm:
    for f in end_form_catalog():
        if f.id == form_id:
            return f
    raise BadParamError(f"unknown end form {form_id!r}")


def sporadic_catalog() -> dict[str, Graph]:
    """The exceptional desk-scale members, by id."""
    raw = _load_json("sporadic.json")
    return {
        g["id"]: Graph(int(g["n"]), [tuple(e) for e in g["edges"]])
        for g in raw["graphs"]
    }


# simple families -------------------------------------------------------


def gen_path(n: int, scheme: WeightScheme = WeightScheme.COMBINATORIAL) -> Graph:
    """Path with n edges (n + 1 vertices)."""
    if n < 1:
        raise BadParamError("a path needs at least one edge")
    return Graph(n + 1, [(i, i + 1) for i in range(n)], scheme)


def gen_cycle(n: int, scheme: WeightScheme = WeightScheme.COMBINATORIAL) -> Graph:
    if n < 3:
        raise BadParamError("a cycle needs at least three vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)], scheme)


def gen_prism(k: int, scheme: WeightScheme = WeightScheme.COMBINATORIAL) -> Graph:
    """Cartesian product of a k-cycle with one edge: 0..k-1 and k..2k-1."""
    if k < 3:
        raise BadParamError("a prism needs a cycle of length at least three")
    edges = []
    for i in range(k):
        edges.append((i, (i + 1) % k))
        edges.append((k + i, k + (i + 1) % k))
        edges.append((i, k + i))
    return Graph(2 * k, edges, scheme)


def gen_mobius(k: int, scheme: WeightScheme = WeightScheme.COMBINATORIAL) -> Graph:
    """Cycle of length 2k plus all k antipodal chords."""
    if k < 3:
        raise BadParamError("a Moebius ladder needs at least three rungs")
    n = 2 * k
    edges = [(i, (i + 1) % n) for i in range(n)] + [(i, i + k) for i in range(k)]
    return Graph(n, edges, scheme)


def gen_particular(scheme: WeightScheme = WeightScheme.COMBINATORIAL) -> Graph:
    """The 10-vertex pinched ladder: a 6-edge path 0..6 with an off-path
    chain 7-8-9 hung from vertices 1, 3, 5."""
    edges = [(i, i + 1) for i in range(6)]
    edges += [(1, 7), (3, 8), (5, 9), (7, 8), (8, 9)]
    g = Graph(10, edges, scheme)
    combinatorial = g if scheme is WeightScheme.COMBINATORIAL else g.with_scheme(
        WeightScheme.COMBINATORIAL
    )
    if (
        g.max_degree() != 3
        or g.diameter() != 6
        or not is_nonnegatively_curved(combinatorial)
    ):
        raise SelfValidationError("pinched-ladder reconstruction failed its checks")
    return g


# quasi-ladders ---------------------------------------------------------


def _attach_cap(
    edges: list[tuple[int, int]], form: EndForm, x: int, y: int, base: int
) -> int:
    """Append cap edges mapped onto concrete ids; returns new vertex count."""
    def resolve(name: str) -> int:
        if name == "x":
            return x
        if name == "y":
            return y
        return base + int(name[1:])

    for a, b in form.edges:
        edges.append((resolve(a), resolve(b)))
    return base + form.cap_vertices


def build_quasi_ladder(spec: QuasiLadderSpec) -> Graph:
    """Construct the graph for a spec without curvature validation."""
    k = spec.core_rungs
    if k < 2:
        raise BadParamError("a quasi-ladder needs at least two rungs")
    left = _form_by_id(spec.left_form)
    right = _form_by_id(spec.right_form)
    if k == 2 and left.id == "bare" and right.id == "bare":
        raise BadParamError("two bare caps on a 2-rung core degenerate to a 4-cycle")
    edges: list[tuple[int, int]] = []
    for i in range(k - 1):
        edges.append((i, i + 1))              # rail x: 0 .. k-1
        edges.append((k + i, k + i + 1))      # rail y: k .. 2k-1
    for i in range(k):
        edges.append((i, k + i))              # rungs
    nv = _attach_cap(edges, left, 0, k, 2 * k)
    rx, ry = k - 1, 2 * k - 1
    if spec.flip_right:
        rx, ry = ry, rx
    nv = _attach_cap(edges, right, rx, ry, nv)
    return Graph(nv, edges)


def gen_quasi_ladder(spec: QuasiLadderSpec) -> Graph:
    """Validated quasi-ladder; raises if the result is not nonnegatively curved."""
    g = build_quasi_ladder(spec)
    if g.max_degree() > 3:
        raise SelfValidationError(f"{spec} exceeds degree 3")
    if not is_nonnegatively_curved(g):
        raise SelfValidationError(f"{spec} has a negatively curved edge")
    return g


# infinite-family windows ----------------------------------------------

WINDOW_KINDS = {
    "a": "line",
    "b": "half_line",
    "c": "ladder",
    "d": "half_ladder_bare",
    "e": "half_ladder_pendant",
    "f": "half_ladder_apex",
    "g": "half_ladder_apex_pendant",
    "h": "half_ladder_double_pendant",
    "i": "half_ladder_pentagon",
    "j": "half_ladder_pentagon_pendant",
}

_KIND_BY_NAME = {v: k for k, v in WINDOW_KINDS.items()}


@dataclass(frozen=True)
class WindowGraph:
    """Finite truncation of an infinite family.

    ``interior_edges`` are more than 3 hops from every truncation-boundary
    vertex, so their curvature equals the value in the infinite graph.
    """

    kind: str
    width: int
    graph: Graph
    boundary: frozenset[int]
    interior_edges: frozenset[tuple[int, int]]


def gen_infinite_window(kind: str, width: int) -> WindowGraph:
    """Window of an infinite family; ``kind`` is a letter a-j or its name.

    Width counts vertices for the line kinds and ladder columns otherwise.
    """
    if kind in _KIND_BY_NAME:
        kind = _KIND_BY_NAME[kind]
    if kind not in WINDOW_KINDS:
        raise BadParamError(f"unknown window kind {kind!r}")
    name = WINDOW_KINDS[kind]
    if width < 8:
        raise BadParamError("windows narrower than 8 are all boundary")
    if name == "line":
        g = gen_path(width - 1)
        boundary = {0, width - 1}
    elif name == "half_line":
        g = gen_path(width - 1)
        boundary = {width - 1}
    elif name == "ladder":
        g = build_quasi_ladder(QuasiLadderSpec(width, "bare", "bare"))
        boundary = {0, width - 1, width, 2 * width - 1}
    else:
        form = name.removeprefix("half_ladder_")
        g = build_quasi_ladder(QuasiLadderSpec(width, form, "bare"))
        boundary = {width - 1, 2 * width - 1}
    dist = g.distances()
    interior = frozenset(
        (u, v)
        for u, v in g.edges()
        if all(dist[w][b] > 3 for w in (u, v) for b in boundary)
    )
    return WindowGraph(
        kind=_KIND_BY_NAME[name],
        width=width,
        graph=g,
        boundary=frozenset(boundary),
        interior_edges=interior,
    )
