"""End-to-end surface constructions.

Chains the other modules: double-pyramid extraction from dense colinks,
the full torus-building pipeline (edge selection, torus-like cycle,
randomized half-sphere embedding, gluing), the shared-edge gluing
recursion for higher genus, and bounded exhaustive search for
sub-triangulations of a given surface.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

from .admissible import AdmissParams, rich_edges, select_semi_admissible_F
from .cycles import (
    GlueSpec,
    TopCycleCert,
    double_pyramid_sphere,
    find_topological_cycle,
    glue_spheres,
)
from .errors import (
    CapExceeded,
    DisjointnessViolation,
    EmptyResult,
    NotASphere,
    RangeViolation,
    SphereMissingEdge,
    StageFailure,
)
from .hypercore import (
    Edge3,
    Hypergraph3,
    SimpleGraph,
    colink_graph,
    edge3,
    neighboring,
    pair_neighborhood,
)
from .rainbow import (
    build_link_of_edges,
    diverse_subgraph,
    find_rainbow_cycle,
    rainbow_to_topcycle,
    three_partition,
)
from .rngutil import keyed_rng
from .surface import SurfaceClass, Verdict, classify_surface

V_MAX_CAP = 10


# --- double pyramids from dense colinks -------------------------------------


@dataclass(frozen=True)
class DoublePyramidFind:
    apexes: tuple[int, int]
    cycle: tuple[int, ...]
    sphere: Hypergraph3


def _shortest_cycle(g: SimpleGraph) -> Optional[list[int]]:
    """Shortest simple cycle, as a vertex list; None in a forest.

    For each edge, the shortest cycle through it is that edge plus the
    shortest path between its endpoints avoiding the edge itself.
    """
    adj = g.adjacency()
    best: Optional[list[int]] = None
    for a, b in sorted(g.edges):
        prev = {a: a}
        queue = deque([a])
        while queue:
            v = queue.popleft()
            if v == b:
                break
            for u in sorted(adj[v]):
                if (v, u) == (a, b) or u in prev:
                    continue
                prev[u] = v
                queue.append(u)
        if b not in prev:
            continue
        path = [b]
        while path[-1] != a:
            path.append(prev[path[-1]])
        if best is None or len(path) < len(best):
            best = path
    return best


def bes_double_pyramid(h: Hypergraph3) -> Optional[DoublePyramidFind]:
    """First apex pair (by descending colink edge count) whose colink
    contains a cycle, with a shortest such cycle.

    Every colink cycle spans a double pyramid inside H: each cycle edge
    {a, b} certifies that both x a b and x' a b are hyperedges.
    """
    support = sorted(h.support())
    ranked = []
    for x, x2 in itertools.combinations(support, 2):
        colink = colink_graph(h, x, x2)
        if colink.n_edges >= 3:
            ranked.append((-colink.n_edges, x, x2, colink))
    ranked.sort(key=lambda t: t[:3])
    for _, x, x2, colink in ranked:
        cycle = _shortest_cycle(colink)
        if cycle is None:
            continue
        faces = []
        for i in range(len(cycle)):
            a, b = cycle[i], cycle[(i + 1) % len(cycle)]
            faces.append((x, a, b))
            faces.append((x2, a, b))
        sphere = Hypergraph3.from_edges(faces, n_vertices=h.n_vertices)
        return DoublePyramidFind(apexes=(x, x2), cycle=tuple(cycle), sphere=sphere)
    return None


# --- sphere search between two neighboring edges -----------------------------


def find_sphere_through(
    h: Hypergraph3, e: Edge3, f: Edge3, allowed: Iterable[int]
) -> Optional[Hypergraph3]:
    """Double-pyramid sphere containing the neighboring pair e, f with
    every other vertex drawn from `allowed`.

    The shared pair {y, z} closes a cycle with any y-z path in the
    colink of the two apexes, so the search is a breadth-first shortest
    path in the restricted colink (the direct edge yz corresponds to the
    pair e, f itself and is skipped).
    """
    if not neighboring(e, f):
        raise RangeViolation("edges are not neighboring")
    allowed = set(allowed)
    if not (set(e) | set(f)) <= allowed:
        raise RangeViolation("allowed must contain both edges")
    y, z = sorted(set(e) & set(f))
    x = next(v for v in e if v not in (y, z))
    x2 = next(v for v in f if v not in (y, z))
    colink = colink_graph(h, x, x2)
    interior_ok = allowed - set(e) - set(f)
    adj = colink.adjacency()
    prev = {y: y}
    queue = deque([y])
    while queue:
        v = queue.popleft()
        if v == z:
            break
        for u in sorted(adj[v]):
            if u in prev:
                continue
            if u != z and u not in interior_ok:
                continue
            if v == y and u == z:
                continue  # the direct yz edge is the pair e, f itself
            prev[u] = v
            queue.append(u)
    if z not in prev:
        return None
    path = [z]
    while path[-1] != y:
        path.append(prev[path[-1]])
    path.reverse()  # y ... z, in colink-adjacency order
    interior = path[1:-1]
    if not interior:
        return None
    sphere = double_pyramid_sphere(e, f, interior)
    assert sphere.edges <= h.edges
    return Hypergraph3(n_vertices=h.n_vertices, edges=sphere.edges)


# --- the torus pipeline ------------------------------------------------------


def _cycle_via_rainbow(
    h: Hypergraph3, max_cycle_len: int, seed: int
) -> Optional[tuple[TopCycleCert, Hypergraph3]]:
    """Torus-like topological cycle via the rainbow machinery: 3-partition,
    edge-link graph, diverse subgraph, rainbow cycle, conversion."""
    try:
        witness, sub = three_partition(h, seed=seed)
    except EmptyResult:
        return None
    if not sub.edges:
        return None
    link = build_link_of_edges(sub, witness)
    diverse = diverse_subgraph(link)
    # a rainbow cycle of length m converts to at most 3m hyperedges
    rainbow = find_rainbow_cycle(
        diverse, link.natural_coloring(), max(3, max_cycle_len // 3)
    )
    if rainbow is None:
        return None
    cert, cyc = rainbow_to_topcycle(sub, witness, link, rainbow)
    if cert.r > max_cycle_len:
        return None
    return cert, cyc


def _choose_witnesses(
    h: Hypergraph3, cert: TopCycleCert
) -> Optional[list[Edge3]]:
    """One edge f_i per consecutive pair (e_i, e_{i+1}), sharing their
    common pair, with the outside vertices pairwise distinct and off the
    cycle.  Greedy in ascending vertex order."""
    cycle_verts = {v for e in cert.ordering for v in e}
    used: set[int] = set()
    witnesses: list[Edge3] = []
    for i in range(cert.r):
        e, f = cert.ordering[i], cert.ordering[(i + 1) % cert.r]
        y, z = sorted(set(e) & set(f))
        found = None
        for w in sorted(pair_neighborhood(h, y, z)):
            if w in cycle_verts or w in used:
                continue
            found = edge3(w, y, z)
            used.add(w)
            break
        if found is None:
            return None
        witnesses.append(found)
    return witnesses


def _merge_half_spheres(
    s1: Hypergraph3, s2: Hypergraph3, f: Edge3
) -> Optional[Hypergraph3]:
    merged = Hypergraph3(
        n_vertices=max(s1.n_vertices, s2.n_vertices),
        edges=(s1.edges | s2.edges) - {f},
    )
    if not classify_surface(merged).is_sphere():
        return None
    return merged


def build_torus(
    h: Hypergraph3,
    params: AdmissParams,
    max_cycle_len: int,
    seed: int = 0,
    retries: int = 64,
    skip_F: bool = False,
    mode: str = "exact",
    trials: int = 2_000,
) -> tuple[Hypergraph3, TopCycleCert]:
    """Torus sub-triangulation via the full pipeline.

    Stages: (1) restrict to a semi-admissible edge set F; (2) find a
    torus-like topological cycle of length <= max_cycle_len in F, first
    through the rainbow machinery, then by direct bounded search;
    (3) pick witness edges f_i with distinct outside vertices; (4) color
    the remaining vertices with 2r colors; (5) grow the two half-spheres
    of each cycle segment inside its two color classes and merge them;
    (6) glue; (7) verify the result classifies as a torus.  Stages 4-6
    retry with fresh colorings.  Deterministic under a fixed seed: the
    lowest succeeding retry index wins.
    """
    if skip_F:
        restricted = h
    else:
        selected = select_semi_admissible_F(h, params, mode=mode, trials=trials, seed=seed)
        if not selected:
            raise StageFailure("select-F", "no semi-admissible edges survive selection")
        restricted = Hypergraph3(n_vertices=h.n_vertices, edges=selected)

    found = _cycle_via_rainbow(restricted, max_cycle_len, seed)
    if found is None:
        found = find_topological_cycle(restricted, max_len=max_cycle_len)
    if found is None:
        raise StageFailure(
            "find-cycle",
            f"no torus-like topological cycle of length <= {max_cycle_len}",
        )
    cert, _ = found
    r = cert.r

    witnesses = _choose_witnesses(h, cert)
    if witnesses is None:
        raise StageFailure(
            "witnesses", "no witness edges with pairwise distinct outside vertices"
        )
    fixed = {v for e in cert.ordering for v in e} | {v for f in witnesses for v in f}
    free = sorted(h.support() - fixed)

    last_diag = "no retries attempted"
    for attempt in range(max(1, retries)):
        rng = keyed_rng(seed, "torus-coloring", attempt)
        colors = rng.integers(0, 2 * r, size=len(free))
        cls: dict[int, set[int]] = {c: set() for c in range(2 * r)}
        for v, c in zip(free, colors):
            cls[int(c)].add(v)

        spheres: list[Hypergraph3] = []
        failed = None
        for i in range(r):
            e_i = cert.ordering[i]
            e_next = cert.ordering[(i + 1) % r]
            f_i = witnesses[i]
            s1 = find_sphere_through(h, e_i, f_i, cls[i] | set(e_i) | set(f_i))
            s2 = find_sphere_through(h, f_i, e_next, cls[r + i] | set(f_i) | set(e_next))
            if s1 is None or s2 is None:
                failed = f"retry {attempt}: no half-sphere for segment {i}"
                break
            merged = _merge_half_spheres(s1, s2, f_i)
            if merged is None:
                failed = f"retry {attempt}: merged segment {i} is not a sphere"
                break
            spheres.append(merged)
        if failed:
            last_diag = failed
            continue
        try:
            glued = glue_spheres(GlueSpec(cycle=cert, spheres=tuple(spheres)))
        except (DisjointnessViolation, SphereMissingEdge, NotASphere) as exc:
            last_diag = f"retry {attempt}: gluing failed: {exc}"
            continue
        verdict = classify_surface(glued)
        if str(verdict) != "OrientableGenus(1)":
            last_diag = f"retry {attempt}: glued complex classifies as {verdict}"
            continue
        assert glued.edges <= h.edges
        return glued, cert
    raise StageFailure("spheres", last_diag)


# --- higher genus via shared-edge gluing -------------------------------------


def _target_matches(verdict: SurfaceClass, target: SurfaceClass) -> bool:
    if verdict.verdict is not target.verdict:
        return False
    if target.verdict is Verdict.ORIENTABLE:
        return verdict.genus == target.genus
    return verdict.cross_caps == target.cross_caps


def orientable_target(g: int) -> SurfaceClass:
    return SurfaceClass(verdict=Verdict.ORIENTABLE, genus=g, chi=2 - 2 * g)


def _target_chi(target: SurfaceClass) -> int:
    if target.verdict is Verdict.ORIENTABLE:
        return 2 - 2 * target.genus
    return 2 - target.cross_caps


def _grow_triangulations(
    h: Hypergraph3,
    target: SurfaceClass,
    v_max: int,
    through: Optional[Edge3] = None,
    first_only: bool = False,
):
    """Face-pairing growth search for closed sub-triangulations.

    States grow deterministically: the lexicographically smallest open
    pair (a pair covered by exactly one chosen face) is always closed
    next, so every closed complex is reached along a unique path from
    its minimal face — no deduplication needed.  Prunes on the face
    budget f = 2v - 2chi and on pair multiplicity > 2.
    """
    max_faces = 2 * v_max - 2 * _target_chi(target)
    pair_map = h.pair_map()
    starts = [through] if through is not None else h.sorted_edges()
    results = []
    for start in starts:
        if start not in h.edges:
            continue
        stack: list[frozenset[Edge3]] = [frozenset([start])]
        while stack:
            faces = stack.pop()
            counts: dict[tuple[int, int], int] = {}
            for a, b, c in faces:
                for p in ((a, b), (a, c), (b, c)):
                    counts[p] = counts.get(p, 0) + 1
            open_pairs = sorted(p for p, k in counts.items() if k == 1)
            if not open_pairs:
                sub = Hypergraph3(n_vertices=h.n_vertices, edges=faces)
                if _target_matches(classify_surface(sub), target):
                    results.append(sub)
                    if first_only:
                        return results
                continue
            if len(faces) >= max_faces:
                continue
            verts = {v for e in faces for v in e}
            a, b = open_pairs[0]
            for w in sorted(pair_map.get((a, b), ())):
                cand = edge3(a, b, w)
                if cand in faces or (through is None and cand < start):
                    continue
                new_verts = len(verts | {w})
                if new_verts > v_max:
                    continue
                ok = True
                for p in ((a, w) if a < w else (w, a), (b, w) if b < w else (w, b)):
                    if counts.get(p, 0) >= 2:
                        ok = False
                        break
                if ok:
                    stack.append(faces | {cand})
    return results


def find_surface_genus_g(
    h: Hypergraph3,
    g: int,
    params: AdmissParams,
    seed: int = 0,
    retries: int = 64,
    v_max: int = V_MAX_CAP,
    mode: str = "mc",
    rich_trials: int = 32,
    check_richness: bool = False,
    **torus_kwargs,
) -> Hypergraph3:
    """Orientable genus-g sub-triangulation.

    g = 1 delegates to build_torus.  For g > 1: pick an edge e through
    which both a genus-(g-1) copy and a torus are found (optionally
    confirmed rich for both family oracles under p-random retention),
    two-color the remaining vertices, search a red genus-(g-1) copy and
    a blue torus sharing exactly e, and return their union minus e.
    The recursion bottoms out in the bounded growth search, so its depth
    is capped by g.
    """
    if g < 1:
        raise RangeViolation(f"genus must be >= 1, got {g}")
    if g == 1:
        torus, _ = build_torus(h, params, seed=seed, retries=retries, **torus_kwargs)
        return torus

    smaller = orientable_target(g - 1)
    torus_t = orientable_target(1)

    def has_both(sub: Hypergraph3, e: Edge3) -> bool:
        return bool(
            _grow_triangulations(sub, smaller, v_max, through=e, first_only=True)
        ) and bool(_grow_triangulations(sub, torus_t, v_max, through=e, first_only=True))

    candidates = [e for e in h.sorted_edges() if has_both(h, e)]
    if check_richness and candidates:
        report = rich_edges(
            h, has_both, params.p, params.eps, mode=mode, trials=rich_trials, seed=seed
        )
        candidates = [e for e in candidates if e in report.rich]
    if not candidates:
        raise StageFailure("rich-edge", "no edge supports both surface families")

    last_diag = "no retries attempted"
    for e in candidates:
        rest = sorted(h.support() - set(e))
        for attempt in range(max(1, retries)):
            rng = keyed_rng(seed, "genus-coloring", e, attempt)
            coin = rng.integers(0, 2, size=len(rest))
            red = {v for v, c in zip(rest, coin) if c == 0} | set(e)
            blue = {v for v, c in zip(rest, coin) if c == 1} | set(e)
            red_h = Hypergraph3(
                n_vertices=h.n_vertices,
                edges=frozenset(t for t in h.edges if set(t) <= red),
            )
            blue_h = Hypergraph3(
                n_vertices=h.n_vertices,
                edges=frozenset(t for t in h.edges if set(t) <= blue),
            )
            found_red = _grow_triangulations(red_h, smaller, v_max, through=e, first_only=True)
            found_blue = _grow_triangulations(blue_h, torus_t, v_max, through=e, first_only=True)
            if not found_red or not found_blue:
                last_diag = f"edge {e}, retry {attempt}: missing a colored copy"
                continue
            t_red, t_blue = found_red[0], found_blue[0]
            if t_red.edges & t_blue.edges != {e}:
                last_diag = f"edge {e}, retry {attempt}: copies share more than e"
                continue
            union = Hypergraph3(
                n_vertices=h.n_vertices, edges=(t_red.edges | t_blue.edges) - {e}
            )
            verdict = classify_surface(union)
            if _target_matches(verdict, orientable_target(g)):
                assert union.edges <= h.edges
                return union
            last_diag = f"edge {e}, retry {attempt}: union classifies as {verdict}"
    raise StageFailure("glue-recursion", last_diag)


# --- exhaustive sub-triangulation search -------------------------------------


def count_sub_triangulations(
    h: Hypergraph3,
    target: SurfaceClass,
    v_max: int,
    cap: int = V_MAX_CAP,
) -> list[Hypergraph3]:
    """All connected sub-complexes on <= v_max non-isolated vertices that
    classify exactly as `target`, deduplicated canonically."""
    if v_max > cap:
        raise CapExceeded(f"v_max = {v_max} exceeds the configured cap {cap}")
    if not h.edges:
        return []
    found = _grow_triangulations(h, target, v_max)
    unique = {sub.edges: sub for sub in found}
    return [unique[key] for key in sorted(unique, key=sorted)]
