"""Topological cycles: construction, recognition, classification, gluing.

A topological cycle is a triangulated cylinder or Moebius strip with every
vertex on the boundary.  Combinatorially (the recognizer's contract): r
edges on r vertices, the neighboring relation on edges is a single
r-cycle, every vertex link is a simple path, chi = 0, and the boundary
2-edges form two disjoint cycles (cylinder) or one cycle (Moebius)
covering all vertices.

The certificate carries the proper edge ordering, the boundary 2-edge s_i
of each edge, and the signs eps_i (+1 iff s_i and s_{i+1} share a vertex).
The product of the signs is +1 exactly for the cylinder, and equals
(-1)^r exactly for the torus-like cycles.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import (
    DisjointnessViolation,
    NotATopCycle,
    NotASphere,
    NotThreePartite,
    RangeViolation,
    SphereMissingEdge,
    TooShort,
)
from .hypercore import Edge3, Hypergraph3, Pair, edge3, neighboring
from .surface import classify_surface, euler_characteristic

CYLINDER = "Cylinder"
MOEBIUS = "Moebius"


@dataclass(frozen=True)
class TopCycleCert:
    ordering: tuple[Edge3, ...]
    boundary2edges: tuple[Pair, ...]
    epsilons: tuple[int, ...]
    kind: str  # CYLINDER or MOEBIUS
    torus_like: bool

    @property
    def r(self) -> int:
        return len(self.ordering)

    def sign_product(self) -> int:
        prod = 1
        for s in self.epsilons:
            prod *= s
        return prod


@dataclass(frozen=True)
class GlueSpec:
    cycle: TopCycleCert
    spheres: tuple[Hypergraph3, ...]


# --- constructors --------------------------------------------------------


def tight_cycle(r: int, allow_degenerate: bool = False) -> Hypergraph3:
    """Vertices 0..r-1, edges {i-1, i, i+1} mod r.

    r = 4 collapses to the tetrahedron boundary (a sphere, not a
    cylinder); it is rejected unless allow_degenerate is set.
    """
    if r < 4:
        raise TooShort(f"tight cycle needs r >= 4, got {r}")
    if r == 4 and not allow_degenerate:
        raise TooShort("tight cycle of length 4 degenerates to the tetrahedron "
                       "boundary; pass allow_degenerate=True to build it anyway")
    return Hypergraph3.from_edges(
        [((i - 1) % r, i, (i + 1) % r) for i in range(r)], n_vertices=r
    )


def double_pyramid(s: int) -> Hypergraph3:
    """Apexes 0 and 1 over the cycle 2..s+1; a triangulated sphere."""
    if s < 3:
        raise TooShort(f"double pyramid needs s >= 3, got {s}")
    cycle = list(range(2, s + 2))
    edges = []
    for i in range(s):
        a, b = cycle[i], cycle[(i + 1) % s]
        edges.append((0, a, b))
        edges.append((1, a, b))
    return Hypergraph3.from_edges(edges, n_vertices=s + 2)


def double_pyramid_sphere(e: Edge3, f: Edge3, interior: Sequence[int]) -> Hypergraph3:
    """Sphere containing both edges of a neighboring pair.

    e = xyz and f = x'yz become faces of the double pyramid with apexes
    x, x' over the cycle y, interior..., z.  The interior vertices must be
    fresh (disjoint from e and f) and nonempty.
    """
    shared = sorted(set(e) & set(f))
    if len(shared) != 2:
        raise RangeViolation("edges are not neighboring")
    if not interior:
        raise RangeViolation("need at least one interior vertex")
    if set(interior) & (set(e) | set(f)):
        raise RangeViolation("interior vertices must avoid e and f")
    y, z = shared
    x = next(v for v in e if v not in shared)
    x2 = next(v for v in f if v not in shared)
    cycle = [y, *interior, z]
    edges = []
    for i in range(len(cycle)):
        a, b = cycle[i], cycle[(i + 1) % len(cycle)]
        edges.append((x, a, b))
        edges.append((x2, a, b))
    n = max(max(e), max(f), max(interior)) + 1
    return Hypergraph3.from_edges(edges, n_vertices=n)


def pyramid_topcycle(s: int, r: int) -> tuple[TopCycleCert, Hypergraph3]:
    """The topological cycle e_1..e_r, f_r..f_s, f_1 inside double_pyramid(s)."""
    if s < 4 or not 3 <= r <= s - 1:
        raise RangeViolation(f"need s >= 4 and 3 <= r <= s-1, got s={s}, r={r}")
    y = list(range(2, s + 2))

    def e(i):  # 1-based
        return edge3(0, y[i - 1], y[i % s])

    def f(i):
        return edge3(1, y[i - 1], y[i % s])

    sequence = [e(i) for i in range(1, r + 1)]
    sequence += [f(i) for i in range(r, s + 1)]
    sequence.append(f(1))
    h = Hypergraph3.from_edges(sequence, n_vertices=s + 2)
    cert = recognize_topological_cycle(h)
    return cert, h


# --- recognition ---------------------------------------------------------


def _pair_counts(edges: Iterable[Edge3]) -> dict[Pair, int]:
    counts: dict[Pair, int] = {}
    for a, b, c in edges:
        for p in ((a, b), (a, c), (b, c)):
            counts[p] = counts.get(p, 0) + 1
    return counts


def _cycle_components(adj: dict[int, set[int]]) -> Optional[list[set[int]]]:
    """Split a 2-regular graph into cycle components; None if not 2-regular."""
    if any(len(nbrs) != 2 for nbrs in adj.values()):
        return None
    seen: set[int] = set()
    comps = []
    for start in adj:
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(comp)
    return comps


def _is_simple_path(adj: dict[int, set[int]]) -> bool:
    """One connected path on >= 2 vertices (>= 1 edge)."""
    if len(adj) < 2:
        return False
    degs = sorted(len(nbrs) for nbrs in adj.values())
    if degs.count(1) != 2 or any(d > 2 for d in degs):
        return False
    start = next(v for v, nbrs in adj.items() if len(nbrs) == 1)
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(adj)


def recognize_topological_cycle(h: Hypergraph3) -> TopCycleCert:
    """Certify h as a topological cycle or raise NotATopCycle with a reason."""
    if not h.edges:
        raise NotATopCycle("EmptyComplex")
    edges = h.sorted_edges()
    r = len(edges)
    support = h.support()
    if r < 3:
        raise NotATopCycle("TooFewEdges")
    if len(support) != r:
        raise NotATopCycle("EdgeVertexCountMismatch")

    # (b) neighboring relation must be a single r-cycle
    nbr: dict[Edge3, list[Edge3]] = {e: [] for e in edges}
    for e, f in itertools.combinations(edges, 2):
        if neighboring(e, f):
            nbr[e].append(f)
            nbr[f].append(e)
    if any(len(v) != 2 for v in nbr.values()):
        raise NotATopCycle("NeighborRelationNotACycle")
    start = edges[0]
    ordering = [start, min(nbr[start])]
    while len(ordering) < r:
        prev, cur = ordering[-2], ordering[-1]
        nxt = nbr[cur][0] if nbr[cur][0] != prev else nbr[cur][1]
        if nxt == start:
            break
        ordering.append(nxt)
    if len(ordering) != r or not neighboring(ordering[-1], start):
        raise NotATopCycle("NeighborRelationNotACycle")

    # (c) every vertex link is a simple path
    from .surface import _vertex_links

    links = _vertex_links(h)
    for v in sorted(links):
        if not _is_simple_path(links[v]):
            raise NotATopCycle(f"LinkNotAPath({v})")

    # (d) chi = 0 over the 2-skeleton
    if euler_characteristic(h) != 0:
        raise NotATopCycle("EulerCharacteristicNotZero")

    # (e) boundary structure
    counts = _pair_counts(edges)
    if any(c > 2 for c in counts.values()):
        raise NotATopCycle("PairInMoreThanTwoTriangles")
    boundary_pairs = [p for p, c in counts.items() if c == 1]
    badj: dict[int, set[int]] = {}
    for u, v in boundary_pairs:
        badj.setdefault(u, set()).add(v)
        badj.setdefault(v, set()).add(u)
    comps = _cycle_components(badj) if badj else None
    if comps is None or set(badj) != support or len(comps) not in (1, 2):
        raise NotATopCycle("BoundaryNotOneOrTwoCycles")

    # boundary 2-edge per edge: the unique pair in exactly one triangle
    boundary_set = set(boundary_pairs)
    s_list: list[Pair] = []
    for e in ordering:
        a, b, c = e
        own = [p for p in ((a, b), (a, c), (b, c)) if p in boundary_set]
        if len(own) != 1:
            raise NotATopCycle("BoundaryEdgeNotUnique")
        s_list.append(own[0])
    epsilons = []
    for i in range(r):
        shared = set(s_list[i]) & set(s_list[(i + 1) % r])
        epsilons.append(1 if shared else -1)
    prod = 1
    for s in epsilons:
        prod *= s
    kind = CYLINDER if prod == 1 else MOEBIUS
    if (kind == CYLINDER) != (len(comps) == 2):
        raise NotATopCycle("SignBoundaryMismatch")
    torus_like = prod == (-1) ** r
    if torus_like != ((kind == CYLINDER) == (r % 2 == 0)):
        raise NotATopCycle("ParityMismatch")
    return TopCycleCert(
        ordering=tuple(ordering),
        boundary2edges=tuple(s_list),
        epsilons=tuple(epsilons),
        kind=kind,
        torus_like=torus_like,
    )


def is_torus_like(cert: TopCycleCert) -> bool:
    """(Cylinder and even) or (Moebius and odd); equals sign product == (-1)^r."""
    parity = (cert.kind == CYLINDER) == (cert.r % 2 == 0)
    assert parity == (cert.sign_product() == (-1) ** cert.r)
    return parity


def check_3partite_torus_like(h: Hypergraph3, parts: Sequence[Iterable[int]]) -> bool:
    """Verify the 3-partition, recognize the cycle, return torus-likeness."""
    sets = [set(p) for p in parts]
    if len(sets) != 3:
        raise NotThreePartite("need exactly 3 parts")
    for a, b in itertools.combinations(sets, 2):
        if a & b:
            raise NotThreePartite("parts not disjoint")
    support = h.support()
    if support - (sets[0] | sets[1] | sets[2]):
        raise NotThreePartite("parts do not cover all non-isolated vertices")
    for e in h.edges:
        if any(len(set(e) & s) != 1 for s in sets):
            raise NotThreePartite(f"edge {e} is not transversal")
    cert = recognize_topological_cycle(h)
    return is_torus_like(cert)


def admits_3_partition(h: Hypergraph3) -> Optional[list[set[int]]]:
    """Search a vertex 3-partition making every edge transversal.

    Equivalent to proper 3-coloring of the 2-skeleton graph; brute-force,
    intended for small complexes only.
    """
    support = sorted(h.support())
    if not support:
        return None
    adj: dict[int, set[int]] = {v: set() for v in support}
    for a, b, c in h.edges:
        adj[a].update((b, c))
        adj[b].update((a, c))
        adj[c].update((a, b))
    color: dict[int, int] = {}

    def backtrack(i: int) -> bool:
        if i == len(support):
            return True
        v = support[i]
        used = {color[w] for w in adj[v] if w in color}
        for col in range(3):
            if col not in used:
                color[v] = col
                if backtrack(i + 1):
                    return True
                del color[v]
        return False

    if not backtrack(0):
        return None
    parts: list[set[int]] = [set(), set(), set()]
    for v, col in color.items():
        parts[col].add(v)
    return parts


# --- bounded search ------------------------------------------------------


def enumerate_topological_cycles(h: Hypergraph3, max_edges: int = 8):
    """All edge subsets of size <= max_edges forming topological cycles.

    Exhaustive subset scan; intended for hypergraphs with few edges.
    Yields (edge_subset, certificate).
    """
    edges = h.sorted_edges()
    for r in range(3, min(max_edges, len(edges)) + 1):
        for subset in itertools.combinations(edges, r):
            sub = Hypergraph3(n_vertices=h.n_vertices, edges=frozenset(subset))
            try:
                cert = recognize_topological_cycle(sub)
            except NotATopCycle:
                continue
            yield frozenset(subset), cert


def find_topological_cycle(
    h: Hypergraph3,
    max_len: int,
    require_torus_like: bool = True,
    node_cap: int = 1_000_000,
) -> Optional[tuple[TopCycleCert, Hypergraph3]]:
    """Depth-first search for a proper ordering of length <= max_len.

    Prunes on the r-edges/r-vertices budget: exactly two extension steps
    may reuse only known vertices.  Returns the first verified cycle.
    """
    edges = h.sorted_edges()
    pairs = h.pair_map()
    nodes = 0

    def neighbors_of(e: Edge3):
        a, b, c = e
        for p in ((a, b), (a, c), (b, c)):
            for w in pairs.get(p, ()):
                if w not in e:
                    yield edge3(p[0], p[1], w)

    for start in edges:
        stack = [([start], set(start), {start}, 0)]
        while stack:
            seq, verts, used, slack = stack.pop()
            nodes += 1
            if nodes > node_cap:
                return None
            last = seq[-1]
            if len(seq) >= 4 and len(verts) == len(seq) and slack == 2:
                if neighboring(last, start):
                    sub = Hypergraph3(n_vertices=h.n_vertices, edges=frozenset(seq))
                    try:
                        cert = recognize_topological_cycle(sub)
                    except NotATopCycle:
                        cert = None
                    if cert and (cert.torus_like or not require_torus_like):
                        return cert, sub
            if len(seq) == max_len:
                continue
            # push in reverse order so the stack explores the smallest
            # candidate edge first (greedy lexicographic descent)
            for g in sorted(set(neighbors_of(last)), reverse=True):
                if g in used or g < start:
                    continue
                new = set(g) - verts
                nslack = slack + (0 if new else 1)
                if nslack > 2:
                    continue
                if len(verts) + len(new) > max_len:
                    continue
                stack.append((seq + [g], verts | new, used | {g}, nslack))
    return None


# --- gluing --------------------------------------------------------------


def glue_spheres(spec: GlueSpec) -> Hypergraph3:
    """Union of the spheres minus the cycle's edges (torus / Klein bottle).

    Validates every precondition before building: each sphere classifies
    as a sphere, contains its two cycle edges, and shares no vertex with
    the cycle or the other spheres outside e_i and e_{i+1}.
    """
    cert = spec.cycle
    r = cert.r
    if len(spec.spheres) != r:
        raise RangeViolation(f"need {r} spheres, got {len(spec.spheres)}")
    cycle_edges = set(cert.ordering)
    cycle_verts = {v for e in cycle_edges for v in e}
    allowed_shared = []
    for i in range(r):
        e_i = cert.ordering[i]
        e_next = cert.ordering[(i + 1) % r]
        allowed_shared.append(set(e_i) | set(e_next))
        sphere = spec.spheres[i]
        if e_i not in sphere.edges or e_next not in sphere.edges:
            raise SphereMissingEdge(f"sphere {i} does not contain both cycle edges")
        cls = classify_surface(sphere)
        if not cls.is_sphere():
            raise NotASphere(f"sphere {i} classifies as {cls}")
    supports = [s.support() for s in spec.spheres]
    for i in range(r):
        extra = supports[i] - allowed_shared[i]
        if extra & cycle_verts:
            raise DisjointnessViolation(f"sphere {i} meets the cycle outside its edges")
        for j in range(i + 1, r):
            overlap = (supports[i] & supports[j]) - (allowed_shared[i] & allowed_shared[j])
            if overlap:
                raise DisjointnessViolation(f"spheres {i} and {j} share vertices {sorted(overlap)}")
    union: set[Edge3] = set()
    for sphere in spec.spheres:
        union |= sphere.edges
    union -= cycle_edges
    n = max(s.n_vertices for s in spec.spheres)
    return Hypergraph3(n_vertices=n, edges=frozenset(union))
