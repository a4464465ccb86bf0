"""Membership test, local-structure checker, and the family recognizer.

The recognizer realizes the classification: paths and cycles by degree
counts, prisms and Moebius ladders by canonical-form match, the two
kinds of sporadic graphs likewise, and quasi-ladders by locating the
ladder core along a diameter path and matching the remnants against the
end-form catalog (with a certified rebuild, and a bounded spec sweep as
fallback).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .canon import canonical_key, isomorphic
from .curvature import min_curvature
from .exceptions import NotClassifiableError, NotGeodesicError
from .families import (
    Family,
    FamilyDescriptor,
    QuasiLadderSpec,
    _load_json,
    build_quasi_ladder,
    end_form_catalog,
    gen_mobius,
    gen_particular,
    gen_prism,
    sporadic_catalog,
)
from .graphs import Graph, State, check_geodesic, diameter_path, state_function

# membership ------------------------------------------------------------


@dataclass(frozen=True)
class ClassMembership:
    """The three defining conditions, evaluated exactly."""

    max_degree_ok: bool
    min_curvature: Optional[Fraction]
    diameter: int
    in_class: bool


def membership(g: Graph) -> ClassMembership:
    """Max degree <= 3, every edge curvature >= 0, diameter >= 6."""
    deg_ok = g.max_degree() <= 3
    diam = g.diameter()
    kappa = min_curvature(g) if g.num_edges() else None
    return ClassMembership(
        max_degree_ok=deg_ok,
        min_curvature=kappa,
        diameter=diam,
        in_class=deg_ok and diam >= 6 and kappa is not None and kappa >= 0,
    )


# local-structure checker ------------------------------------------------

_STATE_KEY = {
    State.TWO: "2",
    State.THREE_MINUS: "3-",
    State.THREE_ZERO: "30",
    State.THREE_PLUS: "3+",
}


@dataclass(frozen=True)
class WindowCheck:
    """One window v_i..v_{i+3}: which realization matched, if any."""

    index: int
    pair: tuple[str, str]
    template: Optional[str]        # first matching realization
    template_long: Optional[str]   # first match among long-path realizations


@dataclass(frozen=True)
class LocalStructureReport:
    path: tuple[int, ...]
    windows: tuple[WindowCheck, ...]

    @property
    def violations(self) -> tuple[WindowCheck, ...]:
        return tuple(w for w in self.windows if w.template is None)

    @property
    def ok(self) -> bool:
        return not self.violations


_patterns_cache: dict[str, dict] = {}


def _patterns() -> dict:
    key = "local_patterns.json"
    if key not in _patterns_cache:
        _patterns_cache[key] = _load_json(key)["pairs"]
    return _patterns_cache[key]


def _match_template(
    g: Graph, r: Sequence[int], window: Sequence[int], extras: dict[int, int],
    template: dict, base: int,
) -> bool:
    v = list(window)
    u1 = extras.get(v[1])
    u2 = extras.get(v[2])
    if template.get("same_extra"):
        return u1 is not None and u1 == u2
    named = {"v0": v[0], "v1": v[1], "v2": v[2], "v3": v[3]}
    if u1 is not None:
        named["u1"] = u1
    if u2 is not None:
        named["u2"] = u2
    new = template.get("new", [])
    required = [tuple(e) for e in template.get("edges", [])]

    def assign(idx: int) -> bool:
        if idx == len(new):
            return all(
                a in named and b in named and g.has_edge(named[a], named[b])
                for a, b in required
            )
        spec = new[idx]
        want_r = base + spec["r"]
        name = spec["name"]
        for z in range(g.n):
            if r[z] == want_r:
                named[name] = z
                if assign(idx + 1):
                    return True
        named.pop(name, None)
        return False

    return assign(0)


def forbidden_pair_check(g: Graph, path: Sequence[int]) -> LocalStructureReport:
    """Check every window of the geodesic path against the realization table.

    A window with no matching realization is a violation; on a graph with
    all edge curvatures nonnegative this can never happen, so violations
    on such inputs falsify the table (or the curvature engine).
    """
    vs = check_geodesic(g, path)
    sf = state_function(g, vs)
    r = g.distances()[vs[0]]
    table = _patterns()
    checks = []
    for i in range(len(vs) - 3):
        window = vs[i : i + 4]
        pair = (_STATE_KEY[sf.labels[window[1]]], _STATE_KEY[sf.labels[window[2]]])
        entry = table[f"{pair[0]},{pair[1]}"]
        matched = None
        matched_long = None
        if not entry.get("forbidden"):
            for t in entry["templates"]:
                if _match_template(g, r, window, sf.extra_neighbor, t, i):
                    if matched is None:
                        matched = t["id"]
                    if t["long_ok"]:
                        matched_long = t["id"]
                        break
        checks.append(
            WindowCheck(index=i, pair=pair, template=matched, template_long=matched_long)
        )
    return LocalStructureReport(path=vs, windows=tuple(checks))


def propagation_check(g: Graph, path: Sequence[int]) -> bool:
    """A 3+ state forces 3+ everywhere before it; a 3- state at index
    >= 2 forces 3- everywhere after it (up to the last interior vertex)."""
    vs = check_geodesic(g, path)
    if len(vs) < 5:
        raise NotGeodesicError("propagation needs a path of length at least 4")
    sf = state_function(g, vs)
    seq = sf.sequence()
    l = len(vs) - 1
    for i, s in enumerate(seq, start=1):
        if s is State.THREE_PLUS and any(
            seq[j - 1] is not State.THREE_PLUS for j in range(1, i)
        ):
            return False
        if s is State.THREE_MINUS and i >= 2 and any(
            seq[j - 1] is not State.THREE_MINUS for j in range(i, l)
        ):
            return False
    return True


# geodesic-cycle search (supporting operation) ---------------------------


def find_geodesic_cycle(
    g: Graph,
    part_a: Sequence[int],
    part_b: Sequence[int],
    clique1: Sequence[int],
    clique2: Sequence[int],
) -> tuple[int, ...]:
    """Shortest closed walk crossing clique1 -> A -> clique2 -> B -> clique1.

    The partition must satisfy: no edges between A and B, both cliques
    complete, and both sides (with the cliques) connected.  The returned
    walk is a cycle; under those hypotheses it is geodesic.
    """
    a, b = set(part_a), set(part_b)
    c1, c2 = list(clique1), list(clique2)
    all_parts = [a, b, set(c1), set(c2)]
    if sum(len(p) for p in all_parts) != g.n or set().union(*all_parts) != set(
        range(g.n)
    ):
        raise ValueError("parts must partition the vertex set")
    for u in a:
        if any(w in b for w in g.adj[u]):
            raise ValueError("edges between the two sides are not allowed")
    for clique in (c1, c2):
        for i, u in enumerate(clique):
            for v in clique[i + 1 :]:
                if not g.has_edge(u, v):
                    raise ValueError("clique parts must induce complete graphs")

    def paths_within(allowed: set[int], sources: Sequence[int]):
        import heapq

        best: dict[int, tuple[int, tuple[int, ...]]] = {}
        heap = [(0, (s,)) for s in sources]
        while heap:
            d, path = heapq.heappop(heap)
            v = path[-1]
            if v in best and best[v][0] <= d:
                continue
            best[v] = (d, path)
            for w in g.adj[v]:
                if w in allowed and (w not in best or best[w][0] > d + 1):
                    heapq.heappush(heap, (d + 1, path + (w,)))
        return best

    side_a = a | set(c1) | set(c2)
    side_b = b | set(c1) | set(c2)
    best_cycle: tuple[int, ...] | None = None
    for s1 in c1:
        reach_a = paths_within(side_a, [s1])
        for t2 in c2:
            if t2 not in reach_a:
                continue
            da, pa = reach_a[t2]
            for s2 in c2:
                reach_b = paths_within(side_b, [s2])
                for t1 in c1:
                    if t1 not in reach_b:
                        continue
                    db, pb = reach_b[t1]
                    length = da + db + (s2 != t2) + (t1 != s1)
                    if best_cycle is not None and length >= len(best_cycle):
                        continue
                    walk = list(pa)
                    if s2 != t2:
                        walk.append(s2)
                    walk.extend(pb[1:])
                    if t1 != s1 and walk[-1] != walk[0]:
                        pass  # closing edge implied
                    if walk[-1] == walk[0]:
                        walk = walk[:-1]
                    if len(set(walk)) == len(walk) and len(walk) >= 3:
                        best_cycle = tuple(walk)
    if best_cycle is None:
        raise ValueError("the two cliques are not joined through both sides")
    return best_cycle


# family recognizer ------------------------------------------------------


def _match_cap(g: Graph, cap: set[int], x: int, y: int) -> list[tuple[str, bool]]:
    """Catalog forms (with flip) whose template equals the given remnant."""
    out = []
    for form in end_form_catalog():
        if form.cap_vertices != len(cap):
            continue
        for flip in (False, True):
            names = {"x": x, "y": y} if not flip else {"x": y, "y": x}
            ids = sorted(cap)
            mapping = dict(names)
            ok = False
            for perm in itertools.permutations(ids):
                mapping.update({f"c{i}": v for i, v in enumerate(perm)})
                want = {
                    tuple(sorted((mapping[a], mapping[b]))) for a, b in form.edges
                }
                have = set()
                for v in cap:
                    for w in g.adj[v]:
                        if w in cap or w in (x, y):
                            have.add(tuple(sorted((v, w))))
                if want == have:
                    ok = True
                    break
            if ok:
                out.append((form.id, flip))
                if form.is_symmetric():
                    break
    return out


def _decompose_quasi_ladder(g: Graph) -> Optional[QuasiLadderSpec]:
    """Fast path: read the ladder off a diameter path's state structure."""
    path = diameter_path(g)
    sf = state_function(g, path)
    l = len(path) - 1
    partners = sf.extra_neighbor
    # maximal run of interior indices whose partners chain along a rail
    runs: list[tuple[int, int]] = []
    i = 1
    while i < l:
        if path[i] not in partners:
            i += 1
            continue
        j = i
        while (
            j + 1 < l
            and path[j + 1] in partners
            and g.has_edge(partners[path[j]], partners[path[j + 1]])
        ):
            j += 1
        runs.append((i, j))
        i = j + 1
    if not runs:
        return None
    a, b = max(runs, key=lambda ab: ab[1] - ab[0])
    rail_x = [path[i] for i in range(a, b + 1)]
    rail_y = [partners[v] for v in rail_x]
    if len(set(rail_y)) != len(rail_y) or set(rail_x) & set(rail_y):
        return None
    used = set(rail_x) | set(rail_y)
    # grow the core outward while full columns continue
    def grow(end_x: int, end_y: int, front: bool) -> None:
        nonlocal rail_x, rail_y, used
        while True:
            cand = [
                (nx, ny)
                for nx in g.adj[end_x]
                if nx not in used
                for ny in g.adj[end_y]
                if ny not in used and nx != ny and g.has_edge(nx, ny)
            ]
            if len(cand) != 1:
                return
            nx, ny = cand[0]
            if front:
                rail_x.insert(0, nx)
                rail_y.insert(0, ny)
            else:
                rail_x.append(nx)
                rail_y.append(ny)
            used |= {nx, ny}
            end_x, end_y = nx, ny

    grow(rail_x[0], rail_y[0], front=True)
    grow(rail_x[-1], rail_y[-1], front=False)
    core = len(rail_x)
    if core < 2:
        return None
    rest = set(range(g.n)) - used
    left_cap, right_cap = set(), set()
    left_cols = {rail_x[0], rail_y[0]}
    right_cols = {rail_x[-1], rail_y[-1]}
    # split the remnant by attachment side
    for v in rest:
        stack, comp = [v], {v}
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if w in rest and w not in comp:
                    comp.add(w)
                    stack.append(w)
        touches_left = any(w in left_cols for u in comp for w in g.adj[u])
        touches_right = any(w in right_cols for u in comp for w in g.adj[u])
        if touches_left and not touches_right:
            left_cap |= comp
        elif touches_right and not touches_left:
            right_cap |= comp
        else:
            return None
    if left_cap | right_cap != rest:
        return None
    left_matches = _match_cap(g, left_cap, rail_x[0], rail_y[0])
    right_matches = _match_cap(g, right_cap, rail_x[-1], rail_y[-1])
    for lf, lflip in left_matches:
        for rf, rflip in right_matches:
            # orientations interact: re-anchor so the left cap is unflipped
            spec = QuasiLadderSpec(
                core_rungs=core,
                left_form=lf,
                right_form=rf,
                flip_right=(lflip != rflip),
            )
            try:
                if isomorphic(g, build_quasi_ladder(spec)):
                    return _canonical_spec(spec, g)
            except Exception:
                continue
    return None


def _canonical_spec(spec: QuasiLadderSpec, g: Graph) -> QuasiLadderSpec:
    """Deterministic representative among the specs describing one graph."""
    candidates = [spec]
    mirrored = QuasiLadderSpec(
        spec.core_rungs, spec.right_form, spec.left_form, spec.flip_right
    )
    candidates.append(mirrored)
    for flip in (False, True):
        for left, right in (
            (spec.left_form, spec.right_form),
            (spec.right_form, spec.left_form),
        ):
            candidates.append(QuasiLadderSpec(spec.core_rungs, left, right, flip))
    key = canonical_key(g.adj)
    valid = []
    for c in candidates:
        try:
            if canonical_key(build_quasi_ladder(c).adj) == key:
                valid.append((c.left_form, c.right_form, c.flip_right, c))
        except Exception:
            continue
    valid.sort(key=lambda t: (t[0], t[1], t[2]))
    return valid[0][3] if valid else spec


def _sweep_quasi_ladder(g: Graph) -> Optional[QuasiLadderSpec]:
    """Complete bounded search over specs with the right vertex count."""
    key = canonical_key(g.adj)
    forms = sorted(end_form_catalog(), key=lambda f: f.id)
    for left in forms:
        for right in forms:
            rest = g.n - left.cap_vertices - right.cap_vertices
            if rest % 2 or rest < 4:
                continue
            core = rest // 2
            for flip in (False, True):
                spec = QuasiLadderSpec(core, left.id, right.id, flip)
                try:
                    cand = build_quasi_ladder(spec)
                except Exception:
                    continue
                if canonical_key(cand.adj) == key:
                    return _canonical_spec(spec, g)
    return None


def classify(g: Graph, require_membership: bool = True) -> FamilyDescriptor:
    """Recognize the family of a graph; Unrecognized is returned, not guessed."""
    if require_membership:
        m = membership(g)
        if not m.in_class:
            raise NotClassifiableError(
                f"not in the classified class: degree ok {m.max_degree_ok}, "
                f"min curvature {m.min_curvature}, diameter {m.diameter}"
            )
    degs = sorted(g.degree(v) for v in range(g.n))
    if g.n >= 2 and degs[-1] <= 2:
        if degs[0] == 1:
            return FamilyDescriptor(Family.PATH, {"length": g.n - 1})
        return FamilyDescriptor(Family.CYCLE, {"n": g.n})
    if degs[0] == 3 and g.n % 2 == 0 and g.n >= 6:
        k = g.n // 2
        if k >= 3 and isomorphic(g, gen_prism(k)):
            return FamilyDescriptor(Family.PRISM, {"k": k})
        if k >= 3 and isomorphic(g, gen_mobius(k)):
            return FamilyDescriptor(Family.MOBIUS_LADDER, {"k": k})
    if g.n == 10 and isomorphic(g, gen_particular()):
        return FamilyDescriptor(Family.PARTICULAR, {})
    for name, sg in sporadic_catalog().items():
        if g.n == sg.n and isomorphic(g, sg):
            return FamilyDescriptor(Family.SPORADIC, {"id": name})
    spec = None
    try:
        spec = _decompose_quasi_ladder(g)
    except Exception:
        spec = None
    if spec is None:
        spec = _sweep_quasi_ladder(g)
    if spec is not None:
        return FamilyDescriptor(
            Family.QUASI_LADDER,
            {
                "core_rungs": spec.core_rungs,
                "left_form": spec.left_form,
                "right_form": spec.right_form,
                "flip_right": spec.flip_right,
            },
        )
    return FamilyDescriptor(Family.UNRECOGNIZED, {})
