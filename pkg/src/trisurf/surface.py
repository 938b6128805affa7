"""Closed-surface recognition and classification for 3-uniform complexes.

A hypergraph is viewed as a 2-dimensional simplicial complex (all subsets
of its triples).  A complex is a closed surface iff it is connected and
the link of every non-isolated vertex is a single cycle.  Classification
is by Euler characteristic plus orientability: orientable surfaces have
chi = 2 - 2g, non-orientable ones chi = 2 - k.

Isolated vertices are ignored throughout: padding vertices must not
affect the topology.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import EmptyComplex, InconsistentChi, NotAClosedSurfaceError
from .hypercore import Hypergraph3, Pair


class Verdict(Enum):
    ORIENTABLE = "OrientableGenus"
    NON_ORIENTABLE = "NonOrientableCrossCaps"
    NOT_A_SURFACE = "NotAClosedSurface"


@dataclass(frozen=True)
class SurfaceClass:
    verdict: Verdict
    genus: Optional[int] = None       # handles, orientable case
    cross_caps: Optional[int] = None  # non-orientable case
    chi: Optional[int] = None
    reason: Optional[str] = None

    @property
    def is_surface(self) -> bool:
        return self.verdict is not Verdict.NOT_A_SURFACE

    def is_sphere(self) -> bool:
        return self.verdict is Verdict.ORIENTABLE and self.genus == 0

    def __str__(self):
        if self.verdict is Verdict.ORIENTABLE:
            return f"OrientableGenus({self.genus})"
        if self.verdict is Verdict.NON_ORIENTABLE:
            return f"NonOrientableCrossCaps({self.cross_caps})"
        return f"NotAClosedSurface({self.reason})"


@dataclass(frozen=True)
class SkeletonCounts:
    v: int  # vertices incident to >= 1 edge
    e: int  # distinct 2-element subsets of edges
    f: int  # 3-edges


def skeleton_counts(h: Hypergraph3) -> SkeletonCounts:
    if not h.edges:
        raise EmptyComplex("skeleton counts of an empty complex")
    pairs: set[Pair] = set()
    verts: set[int] = set()
    for a, b, c in h.edges:
        verts.update((a, b, c))
        pairs.update(((a, b), (a, c), (b, c)))
    return SkeletonCounts(v=len(verts), e=len(pairs), f=len(h.edges))


def euler_characteristic(h: Hypergraph3) -> int:
    c = skeleton_counts(h)
    return c.v - c.e + c.f


def _vertex_links(h: Hypergraph3) -> dict[int, dict[int, set[int]]]:
    """Link adjacency per non-isolated vertex (restricted to its link)."""
    links: dict[int, dict[int, set[int]]] = {}
    for a, b, c in h.edges:
        for x, y, z in ((a, b, c), (b, a, c), (c, a, b)):
            adj = links.setdefault(x, {})
            adj.setdefault(y, set()).add(z)
            adj.setdefault(z, set()).add(y)
    return links


def _is_single_cycle(adj: dict[int, set[int]]) -> bool:
    """True iff the link adjacency is one cycle on >= 3 vertices."""
    if len(adj) < 3:
        return False
    if any(len(nbrs) != 2 for nbrs in adj.values()):
        return False
    start = next(iter(adj))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(adj)


def _is_connected(h: Hypergraph3) -> bool:
    support = h.support()
    if not support:
        return False
    adj: dict[int, set[int]] = {v: set() for v in support}
    for a, b, c in h.edges:
        adj[a].update((b, c))
        adj[b].update((a, c))
        adj[c].update((a, b))
    start = next(iter(support))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(support)


def is_closed_surface(h: Hypergraph3) -> tuple[bool, Optional[str]]:
    """Check the link-is-a-cycle condition at every vertex, plus connectivity.

    Returns (verdict, reason); reason names the first failing vertex or
    "Disconnected".
    """
    if not h.edges:
        raise EmptyComplex("empty complex")
    links = _vertex_links(h)
    for v in sorted(links):
        if not _is_single_cycle(links[v]):
            return False, f"LinkNotACycle({v})"
    if not _is_connected(h):
        return False, "Disconnected"
    return True, None


def _dual_adjacency(h: Hypergraph3) -> dict[tuple, list[tuple]]:
    """Triangles sharing a 2-face.  Assumes every pair is in <= 2 triangles."""
    by_pair: dict[Pair, list[tuple]] = {}
    for e in h.edges:
        a, b, c = e
        for p in ((a, b), (a, c), (b, c)):
            by_pair.setdefault(p, []).append(e)
    adj: dict[tuple, list[tuple]] = {e: [] for e in h.edges}
    for p, tris in by_pair.items():
        if len(tris) == 2:
            adj[tris[0]].append(tris[1])
            adj[tris[1]].append(tris[0])
    return adj


def _induced_pair_orientation(tri: tuple, sign: int, p: Pair) -> tuple[int, int]:
    """Directed pair induced on p by the triangle's cyclic orientation.

    sign=+1 orients the sorted triple (a, b, c) as a->b->c->a.
    """
    a, b, c = tri
    cycle = [(a, b), (b, c), (c, a)] if sign == 1 else [(b, a), (c, b), (a, c)]
    for u, v in cycle:
        if (min(u, v), max(u, v)) == p:
            return (u, v)
    raise AssertionError("pair not in triangle")


def is_orientable(h: Hypergraph3) -> bool:
    """Sign propagation over the dual graph; requires a closed surface."""
    ok, reason = is_closed_surface(h)
    if not ok:
        raise NotAClosedSurfaceError(reason)
    dual = _dual_adjacency(h)
    signs: dict[tuple, int] = {}
    for root in h.sorted_edges():
        if root in signs:
            continue
        signs[root] = 1
        queue = deque([root])
        while queue:
            tri = queue.popleft()
            for other in dual[tri]:
                shared = tuple(sorted(set(tri) & set(other)))
                d1 = _induced_pair_orientation(tri, signs[tri], shared)
                # compatible iff the shared pair gets opposite directions
                want = -1 if _induced_pair_orientation(other, 1, shared) == d1 else 1
                if other in signs:
                    if signs[other] != want:
                        return False
                else:
                    signs[other] = want
                    queue.append(other)
    return True


def is_orientable_bruteforce(h: Hypergraph3) -> bool:
    """Independent oracle: try all 2^f orientation assignments (f <= 20)."""
    edges = h.sorted_edges()
    if len(edges) > 20:
        raise ValueError("brute-force orientability capped at 20 faces")
    dual_pairs = []
    by_pair: dict[Pair, list[int]] = {}
    for i, e in enumerate(edges):
        a, b, c = e
        for p in ((a, b), (a, c), (b, c)):
            by_pair.setdefault(p, []).append(i)
    for p, tris in by_pair.items():
        if len(tris) == 2:
            dual_pairs.append((tris[0], tris[1], p))
    for assignment in itertools.product((1, -1), repeat=len(edges)):
        if all(
            _induced_pair_orientation(edges[i], assignment[i], p)
            != _induced_pair_orientation(edges[j], assignment[j], p)
            for i, j, p in dual_pairs
        ):
            return True
    return False


def classify_surface(h: Hypergraph3) -> SurfaceClass:
    if not h.edges:
        return SurfaceClass(verdict=Verdict.NOT_A_SURFACE, reason="EmptyComplex")
    ok, reason = is_closed_surface(h)
    if not ok:
        return SurfaceClass(verdict=Verdict.NOT_A_SURFACE, reason=reason)
    chi = euler_characteristic(h)
    if is_orientable(h):
        if chi % 2 != 0:
            raise InconsistentChi(f"orientable complex with odd chi {chi}")
        return SurfaceClass(verdict=Verdict.ORIENTABLE, genus=(2 - chi) // 2, chi=chi)
    return SurfaceClass(verdict=Verdict.NON_ORIENTABLE, cross_caps=2 - chi, chi=chi)


def face_count_identity(h: Hypergraph3) -> bool:
    """f = 2v - 4 + 2g with g = 2 - chi (cross-check on surface verdicts)."""
    cls = classify_surface(h)
    if not cls.is_surface:
        raise NotAClosedSurfaceError(cls.reason)
    counts = skeleton_counts(h)
    g = 2 - cls.chi
    return counts.f == 2 * counts.v - 4 + 2 * g
