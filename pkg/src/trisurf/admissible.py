"""Admissible-edge machinery on random vertex retention.

An edge xy of a graph G is (p, eps, k)-admissible when, after keeping
each vertex independently with probability p (with x and y forced in),
the endpoints stay joined by k internally vertex-disjoint paths other
than the direct edge, with probability at least 1 - eps.  This module
provides the disjoint-path counter, exact and Monte-Carlo admissibility
tests, the non-admissible edge count with its 2kn/(p^2 eps) bound, a
highly-connected-subgraph extractor, the common-neighborhood core of the
top-degree vertices, admissibility of neighboring hyperedge pairs
through colink graphs, the semi-admissible selection procedure, and
family-richness of hyperedges under the same retention experiment.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import sqrt
from typing import Callable, Iterable, Sequence

from . import _kernels
from .errors import (
    NotNeighboring,
    RangeViolation,
    SameVertex,
    TooLargeForExact,
)
from .hypercore import Edge3, Hypergraph3, Pair, SimpleGraph, colink_graph, edge3, neighboring, pair
from .rngutil import keyed_rng


@dataclass(frozen=True)
class AdmissParams:
    """Retention probability p, failure budget eps, path count k, and the
    witness count r used for semi-admissibility."""

    p: float
    eps: float
    k: int
    r: int = 1

    def __post_init__(self):
        if not 0 < self.p <= 1:
            raise RangeViolation(f"p = {self.p} outside (0, 1]")
        if not 0 < self.eps <= 1:
            raise RangeViolation(f"eps = {self.eps} outside (0, 1]")
        if self.k < 1:
            raise RangeViolation(f"k = {self.k} must be >= 1")
        if self.r < 1:
            raise RangeViolation(f"r = {self.r} must be >= 1")


@dataclass(frozen=True)
class EdgeRecord:
    """Per-edge admissibility (or richness) result."""

    edge: tuple
    prob: float
    stderr: float
    exact: bool
    verdict: bool


@dataclass(frozen=True)
class AdmissReport:
    params: AdmissParams
    mode: str
    n_vertices: int
    records: tuple[EdgeRecord, ...]
    bound: float

    @property
    def n_edges(self) -> int:
        return len(self.records)

    @property
    def n_nonadmissible(self) -> int:
        return sum(1 for rec in self.records if not rec.verdict)

    def to_json_dict(self) -> dict:
        return {
            "params": {
                "p": self.params.p,
                "eps": self.params.eps,
                "k": self.params.k,
                "r": self.params.r,
            },
            "mode": self.mode,
            "n_vertices": self.n_vertices,
            "n_edges": self.n_edges,
            "n_nonadmissible": self.n_nonadmissible,
            "bound": self.bound,
            "records": [
                {
                    "edge": list(rec.edge),
                    "prob": rec.prob,
                    "stderr": rec.stderr,
                    "exact": rec.exact,
                    "verdict": rec.verdict,
                }
                for rec in self.records
            ],
        }


# --- disjoint-path counting ------------------------------------------------


def menger_count(g: SimpleGraph, x: int, y: int, k: int) -> int:
    """min(k, max number of internally vertex-disjoint x-y paths), the
    direct edge xy never counting as a path."""
    if x == y:
        raise SameVertex(f"path count from {x} to itself")
    return _kernels.menger_count(g.adjacency_masks(), x, y, k)


def _relevant_vertices(g: SimpleGraph, x: int, y: int) -> list[int]:
    """Vertices that can influence the retention event at xy: the
    endpoints plus every non-isolated vertex.  Isolated vertices
    marginalize out of the retention probability exactly."""
    keep = {x, y}
    for u, v in g.edges:
        keep.add(u)
        keep.add(v)
    return sorted(keep)


def _relabeled_masks(g: SimpleGraph, verts: Sequence[int]) -> list[int]:
    index = {v: i for i, v in enumerate(verts)}
    masks = [0] * len(verts)
    for u, v in g.edges:
        if u in index and v in index:
            masks[index[u]] |= 1 << index[v]
            masks[index[v]] |= 1 << index[u]
    return masks


def edge_profile(g: SimpleGraph, e: Pair, kmax: int, exact_threshold: int = 16):
    """Exhaustive subset profile counts[s][m] for the retention experiment
    at edge e, restricted to the vertices that matter.  Reusable across
    any (p, eps, k <= kmax) without re-enumeration."""
    x, y = pair(*e)
    verts = _relevant_vertices(g, x, y)
    if len(verts) > exact_threshold:
        raise TooLargeForExact(
            f"{len(verts)} relevant vertices exceeds exact threshold {exact_threshold}"
        )
    masks = _relabeled_masks(g, verts)
    index = {v: i for i, v in enumerate(verts)}
    return _kernels.admissible_profile(masks, index[x], index[y], kmax)


def prob_from_profile(counts: list[list[int]], p: float, k: int) -> float:
    """P(>= k disjoint paths survive) from a subset profile."""
    t = len(counts) - 1
    prob = 0.0
    for s, row in enumerate(counts):
        good = sum(row[k:])
        if good:
            prob += good * (p ** s) * ((1.0 - p) ** (t - s))
    return min(prob, 1.0)


def admissible_exact(
    g: SimpleGraph, e: Pair, params: AdmissParams, exact_threshold: int = 16
) -> EdgeRecord:
    """Exact P(A_e) by enumerating every retention outcome."""
    counts = edge_profile(g, e, params.k, exact_threshold=exact_threshold)
    prob = prob_from_profile(counts, params.p, params.k)
    return EdgeRecord(
        edge=pair(*e), prob=prob, stderr=0.0, exact=True, verdict=prob >= 1.0 - params.eps
    )


def admissible_mc(
    g: SimpleGraph, e: Pair, params: AdmissParams, trials: int = 10_000, seed: int = 0
) -> EdgeRecord:
    """Monte-Carlo estimate of P(A_e) over `trials` independent retention
    samples.  The stream is keyed by (seed, edge); trial i consumes row i
    of the counter-based stream, so results are order-independent and
    reproducible."""
    if trials < 1:
        raise RangeViolation(f"trials = {trials} must be >= 1")
    x, y = pair(*e)
    verts = _relevant_vertices(g, x, y)
    masks = _relabeled_masks(g, verts)
    index = {v: i for i, v in enumerate(verts)}
    xi, yi = index[x], index[y]
    free = [i for i in range(len(verts)) if i != xi and i != yi]

    rng = keyed_rng(seed, "admissible", (x, y))
    draws = rng.random((trials, len(free)))
    base = (1 << xi) | (1 << yi)
    hits = 0
    for row in draws:
        active = base
        for j, u in enumerate(free):
            if row[j] < params.p:
                active |= 1 << u
        if _kernels.menger_count(masks, xi, yi, params.k, active) >= params.k:
            hits += 1
    est = hits / trials
    stderr = sqrt(est * (1.0 - est) / trials)
    return EdgeRecord(
        edge=(x, y), prob=est, stderr=stderr, exact=False, verdict=est >= 1.0 - params.eps
    )


def count_nonadmissible(
    g: SimpleGraph,
    params: AdmissParams,
    mode: str = "exact",
    trials: int = 10_000,
    seed: int = 0,
    exact_threshold: int = 16,
) -> AdmissReport:
    """Per-edge admissibility over all of E(G) plus the guaranteed bound
    2kn/(p^2 eps) on the number of non-admissible edges.  In exact mode
    the bound is checked and a violation raises (it would mean a bug, not
    an unlucky input)."""
    if mode not in ("exact", "mc"):
        raise RangeViolation(f"unknown mode {mode!r}")
    records = []
    for e in sorted(g.edges):
        if mode == "exact":
            records.append(admissible_exact(g, e, params, exact_threshold=exact_threshold))
        else:
            records.append(admissible_mc(g, e, params, trials=trials, seed=seed))
    bound = 2.0 * params.k * g.n_vertices / (params.p ** 2 * params.eps)
    report = AdmissReport(
        params=params, mode=mode, n_vertices=g.n_vertices, records=tuple(records), bound=bound
    )
    if mode == "exact" and report.n_nonadmissible > bound:
        raise AssertionError(
            f"non-admissible count {report.n_nonadmissible} exceeds bound {bound}"
        )
    return report


# --- highly connected subgraphs --------------------------------------------


def _connectivity_certificate(g: SimpleGraph, verts: Sequence[int], c: int):
    """Check that G[verts] is c-vertex-connected.

    Returns (True, None) on success, else (False, cut) where `cut` is a
    separator of size < c found from a failing non-adjacent pair (the cut
    may be empty when the induced graph is disconnected).  Local
    connectivity of every adjacent pair is also checked, with the direct
    edge contributing one path.
    """
    verts = sorted(verts)
    m = len(verts)
    if m < c + 1:
        return False, []
    masks = _relabeled_masks(g, verts)
    adjacent = [[masks[i] >> j & 1 for j in range(m)] for i in range(m)]
    complete = True
    for i in range(m):
        for j in range(i + 1, m):
            if adjacent[i][j]:
                if _kernels.menger_count(masks, i, j, c - 1) < c - 1:
                    # cannot happen if every non-adjacent pair passes;
                    # checked anyway so a returned certificate never lies
                    return False, []
                continue
            complete = False
            flow, cut = _kernels.menger_cut(masks, i, j, c)
            if flow < c:
                return False, [verts[u] for u in cut]
    if complete:
        return m - 1 >= c, []
    return True, None


def is_vertex_connected(g: SimpleGraph, verts: Iterable[int], c: int) -> bool:
    """True iff the induced subgraph on `verts` is c-vertex-connected."""
    ok, _ = _connectivity_certificate(g, list(verts), c)
    return ok


def _components(adj: list[set[int]], verts: set[int]) -> list[set[int]]:
    comps = []
    todo = set(verts)
    while todo:
        start = todo.pop()
        comp = {start}
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for u in adj[v] & todo:
                todo.discard(u)
                comp.add(u)
                frontier.append(u)
        comps.append(comp)
    return comps


def mader_subgraph(g: SimpleGraph, k: int) -> list[int] | None:
    """A vertex set inducing a (k+1)-vertex-connected subgraph, or None.

    Search: peel low-degree vertices, test connectivity, and on failure
    split along the separator found, recursing on the denser side first.
    Guaranteed to succeed when the average degree is at least 4k (the
    peel and split steps each preserve the density invariant
    |E| > 2k(|V| - k), which forces a connected certificate eventually);
    may also succeed below that threshold.  Every returned set is
    re-verified pair by pair before being reported, so a false
    certificate is impossible.  Falls back to exhaustive subset search
    for n <= 12 before giving up.
    """
    if k < 1:
        raise RangeViolation(f"k = {k} must be >= 1")
    n = g.n_vertices
    adj = g.adjacency()
    stack: list[frozenset[int]] = [frozenset(range(n))]
    seen: set[frozenset[int]] = set()
    while stack:
        cur = set(stack.pop())
        while True:
            low = [v for v in cur if len(adj[v] & cur) <= 2 * k - 1]
            if not low:
                break
            cur.difference_update(low)
        if len(cur) < k + 2:
            continue
        frozen = frozenset(cur)
        if frozen in seen:
            continue
        seen.add(frozen)
        ok, cut = _connectivity_certificate(g, cur, k + 1)
        if ok:
            return sorted(cur)
        cut_set = set(cut)
        branches = [comp | cut_set for comp in _components(adj, cur - cut_set)]
        branches = [b for b in branches if b != cur]
        branches.sort(key=lambda b: sum(1 for v in b for u in adj[v] & b) // 2)
        stack.extend(frozenset(b) for b in branches)  # densest popped first
    if n <= 12:
        verts = list(range(n))
        for size in range(n, k + 1, -1):
            for subset in itertools.combinations(verts, size):
                ok, _ = _connectivity_certificate(g, subset, k + 1)
                if ok:
                    return list(subset)
    return None


def common_core(g: SimpleGraph, r: int) -> set[int]:
    """Common neighborhood W of the r highest-degree vertices (ties by
    ascending id).  Guarantees |V| - |W| <= r + 2rq/|V| with q the
    non-edge count (the r accounts for the chosen vertices themselves,
    which never lie in their own open neighborhoods), and every pair in
    W has at least r paths of length two."""
    if r < 1:
        raise RangeViolation(f"r = {r} must be >= 1")
    n = g.n_vertices
    if n == 0:
        return set()
    deg = g.degree_sequence()
    hubs = sorted(range(n), key=lambda v: (-deg[v], v))[: min(r, n)]
    adj = g.adjacency()
    core = set(adj[hubs[0]])
    for h in hubs[1:]:
        core &= adj[h]
    return core


# --- neighboring hyperedge pairs -------------------------------------------


def _split_neighbors(e: Edge3, f: Edge3) -> tuple[int, int, Pair]:
    """For neighboring triples e = xyz and f = x'yz, return (x, x', (y, z))."""
    if not neighboring(e, f):
        raise NotNeighboring(f"{e} and {f} do not share exactly two vertices")
    shared = set(e) & set(f)
    x = next(v for v in e if v not in shared)
    x2 = next(v for v in f if v not in shared)
    y, z = sorted(shared)
    return x, x2, (y, z)


def pair_admissible(
    h: Hypergraph3,
    e: Edge3,
    f: Edge3,
    params: AdmissParams,
    mode: str = "exact",
    trials: int = 10_000,
    seed: int = 0,
    exact_threshold: int = 16,
) -> bool:
    """Whether the shared pair yz is admissible inside the colink graph of
    the two off vertices."""
    x, x2, yz = _split_neighbors(edge3(*e), edge3(*f))
    g = colink_graph(h, x, x2)
    if mode == "exact":
        return admissible_exact(g, yz, params, exact_threshold=exact_threshold).verdict
    return admissible_mc(g, yz, params, trials=trials, seed=seed).verdict


def pair_semi_admissible(
    h: Hypergraph3,
    e: Edge3,
    f: Edge3,
    params: AdmissParams,
    mode: str = "exact",
    trials: int = 10_000,
    seed: int = 0,
    exact_threshold: int = 16,
) -> tuple[bool, list[Edge3]]:
    """Semi-admissibility of a neighboring pair: r intermediate edges
    g = x''yz with (e, g) and (g, f) both admissible.  Returns the
    verdict plus up to r witnesses."""
    e = edge3(*e)
    f = edge3(*f)
    x, x2, (y, z) = _split_neighbors(e, f)
    witnesses: list[Edge3] = []
    candidates = sorted(
        w for w in (set(v for t in h.edges if y in t and z in t for v in t) - {y, z, x, x2})
        if edge3(w, y, z) in h.edges
    )
    kw = dict(mode=mode, trials=trials, seed=seed, exact_threshold=exact_threshold)
    for w in candidates:
        mid = edge3(w, y, z)
        if pair_admissible(h, e, mid, params, **kw) and pair_admissible(h, mid, f, params, **kw):
            witnesses.append(mid)
            if len(witnesses) == params.r:
                break
    return len(witnesses) >= params.r, witnesses


def select_semi_admissible_F(
    h: Hypergraph3,
    params: AdmissParams,
    mode: str = "exact",
    trials: int = 10_000,
    seed: int = 0,
    exact_threshold: int = 16,
    verify: bool = True,
    verify_samples: int = 64,
) -> frozenset[Edge3]:
    """Deletion procedure yielding a subset F of E(H) in which every
    neighboring pair is semi-admissible with r witnesses.

    For each cover pair {y, z}: build the admissibility graph on N(y, z)
    (vertices x, x' joined iff (xyz, x'yz) is an admissible pair), keep
    the common core of its r top-degree vertices, then re-admit deleted
    vertices that still share at least r admissibility-neighbors with
    everything kept (the core hubs themselves never lie in their own open
    neighborhood, so without the re-add pass even a complete
    admissibility graph would lose its hubs).  Edges through the rest are
    deleted.  The result is post-verified (exhaustively in exact mode, by
    sampling otherwise).
    """
    kw = dict(mode=mode, trials=trials, seed=seed, exact_threshold=exact_threshold)
    doomed: set[Edge3] = set()
    for (y, z), members in sorted(h.pair_map().items()):
        if len(members) < 2:
            continue
        local = sorted(members)
        index = {x: i for i, x in enumerate(local)}
        adm_edges = []
        for x, x2 in itertools.combinations(local, 2):
            if pair_admissible(h, edge3(x, y, z), edge3(x2, y, z), params, **kw):
                adm_edges.append((index[x], index[x2]))
        adm_graph = SimpleGraph.from_edges(adm_edges, n_vertices=len(local))
        kept = common_core(adm_graph, params.r)
        adm_adj = adm_graph.adjacency()
        for i in sorted(set(range(len(local))) - kept):
            if all(len(adm_adj[i] & adm_adj[j]) >= params.r for j in kept):
                kept.add(i)
        for i, x in enumerate(local):
            if i not in kept:
                doomed.add(edge3(x, y, z))
    selected = frozenset(h.edges - doomed)

    if verify:
        pairs = [
            (e, f)
            for e, f in itertools.combinations(sorted(selected), 2)
            if neighboring(e, f)
        ]
        if mode != "exact" and len(pairs) > verify_samples:
            rng = keyed_rng(seed, "selection-verify")
            idx = rng.choice(len(pairs), size=verify_samples, replace=False)
            pairs = [pairs[int(i)] for i in idx]
        for e, f in pairs:
            ok, _ = pair_semi_admissible(h, e, f, params, **kw)
            if not ok:
                raise AssertionError(
                    f"selected pair {e}, {f} is not semi-admissible with r = {params.r}"
                )
    return selected


# --- family richness --------------------------------------------------------


@dataclass(frozen=True)
class RichReport:
    p: float
    eps: float
    mode: str
    records: tuple[EdgeRecord, ...]
    rich: frozenset[Edge3] = field(default_factory=frozenset)

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "eps": self.eps,
            "mode": self.mode,
            "n_rich": len(self.rich),
            "records": [
                {
                    "edge": list(rec.edge),
                    "prob": rec.prob,
                    "stderr": rec.stderr,
                    "exact": rec.exact,
                    "verdict": rec.verdict,
                }
                for rec in self.records
            ],
        }


def _induced(h: Hypergraph3, keep: frozenset[int]) -> Hypergraph3:
    return Hypergraph3(
        n_vertices=h.n_vertices,
        edges=frozenset(e for e in h.edges if e[0] in keep and e[1] in keep and e[2] in keep),
    )


def rich_edges(
    h: Hypergraph3,
    family_oracle: Callable[[Hypergraph3, Edge3], bool],
    p: float,
    eps: float,
    mode: str = "exact",
    trials: int = 10_000,
    seed: int = 0,
    exact_threshold: int = 16,
) -> RichReport:
    """Edges e with P(family copy through e survives | e retained) > 1 - eps
    under p-random vertex retention.  `family_oracle(h_sub, e)` decides
    whether the retained sub-hypergraph contains a family member through e.
    """
    if not 0 < p <= 1 or not 0 < eps <= 1:
        raise RangeViolation(f"p = {p}, eps = {eps} must lie in (0, 1]")
    support = sorted(h.support())
    records = []
    for e in h.sorted_edges():
        free = [v for v in support if v not in e]
        if mode == "exact":
            if len(free) + 3 > exact_threshold:
                raise TooLargeForExact(
                    f"{len(free) + 3} relevant vertices exceeds exact threshold {exact_threshold}"
                )
            prob = 0.0
            for size in range(len(free) + 1):
                weight = (p ** size) * ((1.0 - p) ** (len(free) - size))
                if weight == 0.0:
                    continue
                for chosen in itertools.combinations(free, size):
                    keep = frozenset(e) | frozenset(chosen)
                    if family_oracle(_induced(h, keep), e):
                        prob += weight
            prob = min(prob, 1.0)
            records.append(
                EdgeRecord(edge=e, prob=prob, stderr=0.0, exact=True, verdict=prob > 1.0 - eps)
            )
        elif mode == "mc":
            rng = keyed_rng(seed, "rich", e)
            draws = rng.random((trials, len(free)))
            hits = 0
            for row in draws:
                keep = frozenset(e) | frozenset(
                    v for j, v in enumerate(free) if row[j] < p
                )
                if family_oracle(_induced(h, keep), e):
                    hits += 1
            est = hits / trials
            stderr = sqrt(est * (1.0 - est) / trials)
            records.append(
                EdgeRecord(edge=e, prob=est, stderr=stderr, exact=False, verdict=est > 1.0 - eps)
            )
        else:
            raise RangeViolation(f"unknown mode {mode!r}")
    rich = frozenset(rec.edge for rec in records if rec.verdict)
    return RichReport(p=p, eps=eps, mode=mode, records=tuple(records), rich=rich)
