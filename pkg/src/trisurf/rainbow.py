"""Set-colored graph machinery over 3-partite hypergraphs.

The central object is the edge-link graph L(H) of a 3-partite 3-uniform
hypergraph: its vertices are the hyperedges, with e -> f when the two
interpolating triples (first coordinate of e with tails of f) are also
hyperedges, and an undirected L-edge when either direction holds.  Each
L-vertex is naturally colored by its own triple; rainbow cycles of L
under a diverse coloring convert into torus-like topological cycles.

Also here: random 3-partitioning, exact homomorphism counting for even
cycles and walks, the Sidorenko inequality check, the non-rainbow
homomorphism bound, the dyadic co-degree regularization, and the greedy
diverse subgraph extraction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import sqrt
from typing import Optional, Sequence

from .cycles import TopCycleCert, recognize_topological_cycle
from .errors import (
    ColoringIncomplete,
    EmptyResult,
    InvalidWitness,
    MissingInterpolant,
    NotRainbow,
    RangeViolation,
    TooLarge,
)
from .hypercore import Edge3, Hypergraph3, SimpleGraph, edge3
from .rngutil import keyed_rng


@dataclass(frozen=True)
class SetColoring:
    """An r-set coloring: every vertex gets an r-element color set."""

    r: int
    colors: dict[int, frozenset]

    def __post_init__(self):
        for v, s in self.colors.items():
            if len(s) != self.r:
                raise RangeViolation(f"color set of {v} has {len(s)} != {self.r} elements")


@dataclass(frozen=True)
class PartiteWitness:
    """Three disjoint classes covering the support; edges are transversal."""

    parts: tuple[frozenset[int], frozenset[int], frozenset[int]]

    def __post_init__(self):
        a, b, c = self.parts
        if a & b or a & c or b & c:
            raise InvalidWitness("parts are not disjoint")

    def class_of(self) -> dict[int, int]:
        return {v: i for i, part in enumerate(self.parts) for v in part}

    def validate(self, h: Hypergraph3) -> None:
        cls = self.class_of()
        covered = set(cls)
        if h.support() - covered:
            raise InvalidWitness("parts do not cover all non-isolated vertices")
        for e in h.edges:
            if sorted(cls[v] for v in e) != [0, 1, 2]:
                raise InvalidWitness(f"edge {e} is not transversal")

    def order_edge(self, e: Edge3) -> tuple[int, int, int]:
        """The edge as (x1, x2, x3) with x_i in part i."""
        cls = self.class_of()
        out = [None, None, None]
        for v in e:
            out[cls[v]] = v
        if None in out:
            raise InvalidWitness(f"edge {e} is not transversal")
        return tuple(out)


@dataclass(frozen=True)
class LinkOfEdgesGraph:
    """L(H): one vertex per hyperedge, adjacency when an interpolating
    direction holds.  `direction[(i, j)]` (i < j) is a bitmask: bit 0 for
    payload_i -> payload_j, bit 1 for the reverse."""

    base: SimpleGraph
    payloads: tuple[Edge3, ...]
    ordered: tuple[tuple[int, int, int], ...]  # payloads in class order
    direction: dict[tuple[int, int], int]

    def natural_coloring(self) -> SetColoring:
        return SetColoring(
            r=3, colors={i: frozenset(p) for i, p in enumerate(self.payloads)}
        )


# --- partitioning ----------------------------------------------------------


def three_partition(
    h: Hypergraph3, seed: int = 0, retries: int = 64
) -> tuple[PartiteWitness, Hypergraph3]:
    """Best-of-`retries` random balanced 3-partition, keeping transversal
    edges.  A uniformly random balanced partition keeps each edge with
    probability about 2/9, so the best retained subhypergraph is
    expected to carry at least that fraction."""
    if not h.edges:
        raise EmptyResult("cannot partition an empty hypergraph")
    support = sorted(h.support())
    best: tuple[int, PartiteWitness, Hypergraph3] | None = None
    for attempt in range(max(1, retries)):
        rng = keyed_rng(seed, "three-partition", attempt)
        order = list(support)
        rng.shuffle(order)
        third = (len(order) + 2) // 3
        parts = (
            frozenset(order[:third]),
            frozenset(order[third: 2 * third]),
            frozenset(order[2 * third:]),
        )
        cls = {v: i for i, part in enumerate(parts) for v in part}
        kept = [e for e in h.edges if sorted(cls[v] for v in e) == [0, 1, 2]]
        if best is None or len(kept) > best[0]:
            best = (
                len(kept),
                PartiteWitness(parts=parts),
                Hypergraph3(n_vertices=h.n_vertices, edges=frozenset(kept)),
            )
    _, witness, sub = best
    return witness, sub


# --- the edge-link graph ---------------------------------------------------


def build_link_of_edges(h: Hypergraph3, parts: PartiteWitness) -> LinkOfEdgesGraph:
    """L(H) with direction data; e -> f iff x1 y2 y3 and x1 x2 y3 are edges."""
    parts.validate(h)
    payloads = tuple(h.sorted_edges())
    ordered = tuple(parts.order_edge(e) for e in payloads)
    edge_set = h.edges

    def arrow(e: tuple, f: tuple) -> bool:
        x1, x2, _ = e
        _, y2, y3 = f
        return edge3(x1, y2, y3) in edge_set and edge3(x1, x2, y3) in edge_set

    direction: dict[tuple[int, int], int] = {}
    l_edges = []
    for i, j in itertools.combinations(range(len(payloads)), 2):
        if set(payloads[i]) & set(payloads[j]):
            continue
        bits = (1 if arrow(ordered[i], ordered[j]) else 0) | (
            2 if arrow(ordered[j], ordered[i]) else 0
        )
        if bits:
            direction[(i, j)] = bits
            l_edges.append((i, j))
    base = SimpleGraph.from_edges(l_edges, n_vertices=len(payloads))
    return LinkOfEdgesGraph(
        base=base, payloads=payloads, ordered=ordered, direction=direction
    )


# --- diverse colorings -----------------------------------------------------


def is_diverse(g: SimpleGraph, coloring: SetColoring):
    """Diverse: vertices at distance 1 or 2 have disjoint color sets.

    Returns (True, None) or (False, (v, w)) with the first violation in
    canonical order.
    """
    missing = [v for v in range(g.n_vertices) if v not in coloring.colors]
    if missing:
        raise ColoringIncomplete(f"no color set for vertices {missing[:5]}")
    adj = g.adjacency()
    for v in range(g.n_vertices):
        near = set(adj[v])
        for u in adj[v]:
            near |= adj[u]
        near.discard(v)
        for w in sorted(near):
            if w > v and coloring.colors[v] & coloring.colors[w]:
                return False, (v, w)
    return True, None


# --- homomorphism counting -------------------------------------------------


def _adjacency_matrix(g: SimpleGraph) -> list[list[int]]:
    n = g.n_vertices
    mat = [[0] * n for _ in range(n)]
    for u, v in g.edges:
        mat[u][v] = 1
        mat[v][u] = 1
    return mat


def _mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    n = len(a)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        row = a[i]
        oi = out[i]
        for k in range(n):
            aik = row[k]
            if aik:
                bk = b[k]
                for j in range(n):
                    oi[j] += aik * bk[j]
    return out


def _mat_pow(mat: list[list[int]], exp: int) -> list[list[int]]:
    n = len(mat)
    result = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    base = mat
    while exp:
        if exp & 1:
            result = _mat_mul(result, base)
        base = _mat_mul(base, base)
        exp >>= 1
    return result


def hom_cycle(g: SimpleGraph, length: int) -> int:
    """hom(C_len, G) = number of closed walks of length `length`.

    Exact arbitrary-precision integers throughout, so the count cannot
    silently overflow.  C_2 counts each edge twice.
    """
    if length < 2 or length % 2 != 0:
        raise RangeViolation(f"cycle length must be even and >= 2, got {length}")
    power = _mat_pow(_adjacency_matrix(g), length)
    return sum(power[i][i] for i in range(g.n_vertices))


def hom_path_endpoints(g: SimpleGraph, y: int, z: int, length: int) -> int:
    """Number of walks of the given length from y to z."""
    if length < 1:
        raise RangeViolation(f"walk length must be >= 1, got {length}")
    return _mat_pow(_adjacency_matrix(g), length)[y][z]


def sidorenko_check(g: SimpleGraph, k: int):
    """hom(C_2k, G) >= (2|E|)^{2k} / n^{2k}, compared in exact arithmetic.

    Returns (holds, hom_value, lower_bound_as_float).
    """
    if k < 1:
        raise RangeViolation(f"k must be >= 1, got {k}")
    n = g.n_vertices
    hom = hom_cycle(g, 2 * k)
    if n == 0:
        return True, 0, 0.0
    lhs_scaled = hom * n ** (2 * k)
    rhs_scaled = (2 * g.n_edges) ** (2 * k)
    return lhs_scaled >= rhs_scaled, hom, rhs_scaled / n ** (2 * k)


def count_nonrainbow_homs(g: SimpleGraph, coloring: SetColoring, length: int):
    """Exact count of non-rainbow closed walks of the given even length,
    plus the guaranteed bound 16 l (r l Delta hom(C_{2l-2}) hom(C_{2l}))^{1/2}.

    A walk is rainbow when all its vertex color sets are pairwise
    disjoint; a repeated vertex meets its own set, so walks with repeats
    are never rainbow.  Requires a diverse coloring (the bound assumes
    it) and a total walk count within the exhaustive cap.
    """
    if length < 4 or length % 2 != 0:
        raise RangeViolation(f"length must be even and >= 4, got {length}")
    ok, violation = is_diverse(g, coloring)
    if not ok:
        raise RangeViolation(f"coloring is not diverse: vertices {violation} clash")
    ell = length // 2
    total = hom_cycle(g, length)
    if total > 10_000_000:
        raise TooLarge(f"{total} homomorphisms exceeds the exhaustive cap")
    adj = g.adjacency()

    rainbow = 0
    # DFS over walks with pairwise-disjoint color sets; anything pruned
    # here is non-rainbow by definition
    def extend(first: int, v: int, depth: int, union: frozenset) -> int:
        if depth == length:
            return 1 if first in adj[v] else 0
        count = 0
        for u in adj[v]:
            cu = coloring.colors[u]
            if cu & union:
                continue
            count += extend(first, u, depth + 1, union | cu)
        return count

    for start in range(g.n_vertices):
        rainbow += extend(start, start, 1, coloring.colors[start])
    nonrainbow = total - rainbow
    degrees = g.degree_sequence()
    delta = max(degrees, default=0)
    hom_shorter = hom_cycle(g, length - 2)
    bound = 16 * ell * sqrt(coloring.r * ell * delta * hom_shorter * total)
    if nonrainbow > bound:
        raise AssertionError(
            f"non-rainbow count {nonrainbow} exceeds the bound {bound}"
        )
    return nonrainbow, bound


def find_rainbow_cycle(
    g: SimpleGraph, coloring: SetColoring, max_len: int
) -> Optional[list[int]]:
    """A simple cycle of length <= max_len with pairwise-disjoint colors.

    Depth-limited backtracking; each cycle is searched from its minimum
    vertex only, so the scan is exhaustive without duplication.
    """
    missing = [v for v in range(g.n_vertices) if v not in coloring.colors]
    if missing:
        raise ColoringIncomplete(f"no color set for vertices {missing[:5]}")
    adj = g.adjacency()

    def dfs(start: int, path: list[int], union: frozenset) -> Optional[list[int]]:
        v = path[-1]
        if len(path) >= 3 and start in adj[v]:
            return path[:]
        if len(path) == max_len:
            return None
        for u in sorted(adj[v]):
            if u <= start or u in path:
                continue
            cu = coloring.colors[u]
            if cu & union:
                continue
            found = dfs(start, path + [u], union | cu)
            if found:
                return found
        return None

    for start in range(g.n_vertices):
        found = dfs(start, [start], coloring.colors[start])
        if found:
            return found
    return None


# --- co-degree regularization ----------------------------------------------


@dataclass(frozen=True)
class BalancedReport:
    sub: Hypergraph3
    thresholds: tuple[int, ...]
    windows: tuple[tuple[int, int], ...]  # observed (min, max) co-degree per side
    retained_fraction: float


def _codegrees(edges: set[tuple], side: int) -> dict[tuple, int]:
    out: dict[tuple, int] = {}
    for e in edges:
        key = e[:side] + e[side + 1:]
        out[key] = out.get(key, 0) + 1
    return out


def _balanced_rec(edges: set[tuple], r: int) -> tuple[set[tuple], list[int]]:
    """Dyadic majority-bucket regularization; edges are class-ordered
    r-tuples.  Returns the surviving edges and thresholds t_1..t_r."""
    if not edges:
        raise EmptyResult("regularization emptied the hypergraph")
    if r == 1:
        return set(edges), [1]

    # bucket the last-side co-degrees dyadically, keep the majority bucket
    codeg = _codegrees(edges, r - 1)
    weight: dict[int, int] = {}
    for key, d in codeg.items():
        weight[d.bit_length()] = weight.get(d.bit_length(), 0) + d
    bucket = max(sorted(weight), key=lambda b: weight[b])
    kept0 = {e for e in edges if codeg[e[:r - 1]].bit_length() == bucket}
    u_last = 1 << (bucket - 1)

    # regularize each last-class link, then group links by their
    # threshold vectors and keep the heaviest group
    groups: dict[tuple, set[tuple]] = {}
    by_last: dict[int, set[tuple]] = {}
    for e in kept0:
        by_last.setdefault(e[-1], set()).add(e[:-1])
    for v, link in sorted(by_last.items()):
        sub_link, ts = _balanced_rec(link, r - 1)
        signature = tuple(t.bit_length() for t in ts)
        groups.setdefault(signature, set()).update(x + (v,) for x in sub_link)
    signature = max(sorted(groups), key=lambda s: len(groups[s]))
    h1 = groups[signature]
    u = [1 << (b - 1) for b in signature] + [u_last]

    # deletion loop: drop low co-degree (r-1)-sets until all sides are
    # above threshold
    thresholds = [max(1, ui // (2 * r)) for ui in u]
    changed = True
    while changed and h1:
        changed = False
        for side in range(r):
            codeg = _codegrees(h1, side)
            bad = {key for key, d in codeg.items() if d < thresholds[side]}
            if bad:
                h1 = {e for e in h1 if e[:side] + e[side + 1:] not in bad}
                changed = True
    if not h1:
        raise EmptyResult("regularization emptied the hypergraph")
    return h1, thresholds


def balanced_subhypergraph(h: Hypergraph3, parts: PartiteWitness) -> BalancedReport:
    """Regularized subhypergraph whose co-degrees all sit inside one
    dyadic window per side, with the thresholds and the observed windows
    reported."""
    parts.validate(h)
    if not h.edges:
        raise EmptyResult("empty hypergraph")
    ordered = {parts.order_edge(e) for e in h.edges}
    surviving, thresholds = _balanced_rec(ordered, 3)
    windows = []
    for side in range(3):
        codeg = _codegrees(surviving, side)
        windows.append((min(codeg.values()), max(codeg.values())))
    sub = Hypergraph3(
        n_vertices=h.n_vertices, edges=frozenset(edge3(*e) for e in surviving)
    )
    return BalancedReport(
        sub=sub,
        thresholds=tuple(thresholds),
        windows=tuple(windows),
        retained_fraction=len(surviving) / h.n_edges,
    )


# --- diverse subgraph extraction -------------------------------------------


def diverse_subgraph(link: LinkOfEdgesGraph) -> SimpleGraph:
    """Edge-subgraph of L on which the natural coloring is diverse.

    Greedy maximal independent set of the conflict graph: two L-edges
    conflict when they share an endpoint and the payloads of the other
    endpoints intersect.  The result is re-checked with is_diverse.
    """
    l_edges = sorted(link.base.edges)
    chosen: list[tuple[int, int]] = []
    incident: dict[int, list[int]] = {}

    def conflicts(a: tuple[int, int], b: tuple[int, int]) -> bool:
        for shared in set(a) & set(b):
            other_a = a[0] if a[1] == shared else a[1]
            other_b = b[0] if b[1] == shared else b[1]
            if other_a != other_b and (
                set(link.payloads[other_a]) & set(link.payloads[other_b])
            ):
                return True
        return False

    for cand in l_edges:
        touching = incident.get(cand[0], []) + incident.get(cand[1], [])
        if any(conflicts(cand, chosen[i]) for i in touching):
            continue
        idx = len(chosen)
        chosen.append(cand)
        incident.setdefault(cand[0], []).append(idx)
        incident.setdefault(cand[1], []).append(idx)

    result = SimpleGraph(n_vertices=link.base.n_vertices, edges=frozenset(chosen))
    ok, violation = is_diverse(result, link.natural_coloring())
    if not ok:
        raise AssertionError(f"greedy selection left a diversity clash at {violation}")
    return result


# --- rainbow cycle -> topological cycle ------------------------------------


def rainbow_to_topcycle(
    h: Hypergraph3,
    parts: PartiteWitness,
    link: LinkOfEdgesGraph,
    cycle: Sequence[int],
) -> tuple[TopCycleCert, Hypergraph3]:
    """Convert a rainbow cycle f_1..f_m of L(H) into a topological cycle.

    For each consecutive pair the two interpolants f_i', f_i'' are
    inserted according to the arrow direction (forward preferred when
    both hold); source and sink vertices f_i (arrows pointing out of or
    into both neighbors) are dropped.  The result is certified by the
    recognizer and is torus-like because H is 3-partite.
    """
    m = len(cycle)
    if m < 3:
        raise RangeViolation(f"need a cycle of length >= 3, got {m}")
    payload_sets = [set(link.payloads[i]) for i in cycle]
    for a, b in itertools.combinations(range(m), 2):
        if payload_sets[a] & payload_sets[b]:
            raise NotRainbow(
                f"cycle vertices {cycle[a]} and {cycle[b]} have meeting colors"
            )

    forward: list[bool] = []
    for idx in range(m):
        i, j = cycle[idx], cycle[(idx + 1) % m]
        key, flipped = ((i, j), False) if i < j else ((j, i), True)
        bits = link.direction.get(key)
        if bits is None:
            raise MissingInterpolant(f"no arrow between {i} and {j} in L")
        if flipped:
            bits = ((bits & 1) << 1) | ((bits & 2) >> 1)
        forward.append(bool(bits & 1))  # prefer f_i -> f_{i+1} when both

    x = [link.ordered[i] for i in cycle]
    sequence: list[Edge3] = []
    for idx in range(m):
        nxt = (idx + 1) % m
        keep = forward[idx] == forward[idx - 1]
        if keep:
            sequence.append(edge3(*x[idx]))
        if forward[idx]:
            fp = (x[idx][0], x[idx][1], x[nxt][2])
            fpp = (x[idx][0], x[nxt][1], x[nxt][2])
        else:
            fp = (x[nxt][0], x[idx][1], x[idx][2])
            fpp = (x[nxt][0], x[nxt][1], x[idx][2])
        for tri in (fp, fpp):
            if edge3(*tri) not in h.edges:
                raise MissingInterpolant(
                    f"interpolant {tuple(sorted(tri))} is not an edge of the hypergraph"
                )
            sequence.append(edge3(*tri))

    sub = Hypergraph3(n_vertices=h.n_vertices, edges=frozenset(sequence))
    cert = recognize_topological_cycle(sub)
    if not cert.torus_like:
        raise AssertionError("3-partite topological cycle failed the torus-like check")
    return cert, sub
