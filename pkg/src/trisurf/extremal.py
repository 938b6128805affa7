"""Probabilistic-deletion lower-bound generator and the shared-edge
gluing extremal harness.

Exact extremal (Turán) numbers at desk scale are computed as
|E(K_n^3)| minus a minimum hitting set over all copies of the forbidden
family, found by branch and bound.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CapExceeded, RangeViolation
from .hypercore import Edge3, Hypergraph3
from .pipeline import count_sub_triangulations
from .rngutil import keyed_rng
from .surface import SurfaceClass

N_MAX_CAP = 9


# --- random construction with deletion ---------------------------------------


@dataclass(frozen=True)
class LowerBoundReport:
    n: int
    c0: float
    p_used: float
    edges_before: int
    triangulations_found: int
    edges_deleted: int
    edges_after: int
    target_surface: str
    v_max: int

    def __post_init__(self):
        assert self.edges_after == self.edges_before - self.edges_deleted
        assert self.edges_deleted <= self.triangulations_found

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "c0": self.c0,
            "p_used": self.p_used,
            "edges_before": self.edges_before,
            "triangulations_found": self.triangulations_found,
            "edges_deleted": self.edges_deleted,
            "edges_after": self.edges_after,
            "target_surface": self.target_surface,
            "v_max": self.v_max,
        }


def lower_bound_generate(
    n: int,
    target: SurfaceClass,
    c0: float,
    v_max: int,
    seed: int = 0,
) -> tuple[Hypergraph3, LowerBoundReport]:
    """Sample each triple with probability min(1, c0 n^{-1/2}), then delete
    the lowest canonical edge of every surviving target sub-triangulation,
    re-enumerating after each deletion round until none remain."""
    if n < 4:
        raise RangeViolation(f"need n >= 4, got {n}")
    if c0 <= 0:
        raise RangeViolation(f"need c0 > 0, got {c0}")
    p = min(1.0, c0 / math.sqrt(n))
    triples = list(itertools.combinations(range(n), 3))
    rng = keyed_rng(seed, "lower-bound", n)
    draws = rng.random(len(triples))
    edges = {t for t, d in zip(triples, draws) if d < p}
    edges_before = len(edges)

    found_total = 0
    deleted_total = 0
    while True:
        h = Hypergraph3(n_vertices=n, edges=frozenset(edges))
        if not edges:
            break
        tris = count_sub_triangulations(h, target, v_max)
        if not tris:
            break
        found_total += len(tris)
        victims = {min(t.edges) for t in tris}
        edges -= victims
        deleted_total += len(victims)

    result = Hypergraph3(n_vertices=n, edges=frozenset(edges))
    report = LowerBoundReport(
        n=n,
        c0=c0,
        p_used=p,
        edges_before=edges_before,
        triangulations_found=found_total,
        edges_deleted=deleted_total,
        edges_after=len(edges),
        target_surface=str(target),
        v_max=v_max,
    )
    return result, report


# --- exact extremal numbers ---------------------------------------------------


def _canonical(edges: Iterable[tuple]) -> frozenset[Edge3]:
    """Isomorphism-canonical form: minimum relabeling over all permutations
    of the support (supports here are tiny)."""
    edges = [tuple(sorted(e)) for e in edges]
    verts = sorted({v for e in edges for v in e})
    best = None
    for perm in itertools.permutations(range(len(verts))):
        mapping = dict(zip(verts, perm))
        image = tuple(sorted(tuple(sorted(mapping[v] for v in e)) for e in edges))
        if best is None or image < best:
            best = image
    return frozenset(best)


def enumerate_copies(member: frozenset[Edge3], n: int) -> list[frozenset[Edge3]]:
    """All distinct edge-set images of `member` under injections into [n]."""
    verts = sorted({v for e in member for v in e})
    copies = set()
    for image in itertools.permutations(range(n), len(verts)):
        mapping = dict(zip(verts, image))
        copies.add(
            frozenset(tuple(sorted(mapping[v] for v in e)) for e in member)
        )
    return sorted(copies, key=sorted)


def _min_hitting_set(
    copies: Sequence[frozenset[Edge3]],
) -> tuple[int, frozenset[Edge3]]:
    """Minimum set of triples meeting every copy (branch and bound)."""
    copies = [frozenset(c) for c in copies]
    start = frozenset(min(c) for c in copies)
    best: list = [len(start), start]

    def disjoint_lower_bound(remaining: list[frozenset]) -> int:
        used: set[Edge3] = set()
        bound = 0
        for c in remaining:
            if not (c & used):
                bound += 1
                used |= c
        return bound

    def rec(remaining: list[frozenset], chosen: frozenset[Edge3]):
        if not remaining:
            if len(chosen) < best[0]:
                best[0], best[1] = len(chosen), chosen
            return
        if len(chosen) + disjoint_lower_bound(remaining) >= best[0]:
            return
        pivot = min(remaining, key=len)
        for edge in sorted(pivot):
            rest = [c for c in remaining if edge not in c]
            rec(rest, chosen | {edge})

    rec(copies, frozenset())
    return best[0], best[1]


def _all_copies(family: Sequence[Hypergraph3], n: int) -> list[frozenset[Edge3]]:
    copies: set[frozenset[Edge3]] = set()
    for member in family:
        if len(member.support()) > n:
            continue
        copies.update(enumerate_copies(frozenset(member.edges), n))
    return sorted(copies, key=sorted)


def extremal_witness(
    family: Sequence[Hypergraph3], n: int
) -> tuple[int, Hypergraph3]:
    """ex(n, family) together with an extremal copy-free witness on [n]."""
    total = set(itertools.combinations(range(n), 3))
    copies = _all_copies(family, n)
    if not copies:
        return len(total), Hypergraph3.from_edges(sorted(total), n_vertices=n)
    # a copy containing another copy is never the cheaper constraint
    minimal = [c for c in copies if not any(o < c for o in copies)]
    size, hitting = _min_hitting_set(minimal)
    witness = Hypergraph3.from_edges(sorted(total - hitting), n_vertices=n)
    return len(total) - size, witness


def extremal_number(family: Sequence[Hypergraph3], n: int) -> int:
    """ex(n, family): most triples on [n] containing no copy of any member."""
    return extremal_witness(family, n)[0]


# --- shared-edge gluing -------------------------------------------------------


def glue_family(
    family_a: Sequence[Hypergraph3], family_b: Sequence[Hypergraph3]
) -> list[Hypergraph3]:
    """All gluings of an edge of a member of A to an edge of a member of B,
    deduplicated up to isomorphism.

    Gluing identifies the two triples (in every vertex correspondence) and
    keeps the shared edge; all other vertices stay distinct.  Identifying
    an edge with itself (the degenerate single-edge case) is allowed and
    yields the member unchanged.
    """
    members: dict[frozenset[Edge3], Hypergraph3] = {}
    for ha, hb in itertools.product(family_a, family_b):
        a_edges = ha.sorted_edges()
        b_edges = hb.sorted_edges()
        b_verts = sorted(hb.support())
        for e in a_edges:
            for f in b_edges:
                for target in itertools.permutations(e):
                    mapping = dict(zip(f, target))
                    fresh = max(max(v for t in a_edges for v in t), max(target)) + 1
                    for v in b_verts:
                        if v not in mapping:
                            mapping[v] = fresh
                            fresh += 1
                    glued = set(a_edges) | {
                        tuple(sorted(mapping[v] for v in t)) for t in b_edges
                    }
                    key = _canonical(glued)
                    if key not in members:
                        members[key] = Hypergraph3.from_edges(sorted(key))
    return [members[k] for k in sorted(members, key=sorted)]


@dataclass(frozen=True)
class GluingRow:
    n: int
    ex_a: int
    ex_b: int
    ex_glued: int
    bound: int
    ok: bool


def gluing_bound_check(
    n_max: int,
    family_a: Sequence[Hypergraph3],
    family_b: Sequence[Hypergraph3],
) -> list[GluingRow]:
    """Row-by-row verification of ex(n, A+B) <= 2^{r+1} (ex(n,A) + ex(n,B))
    with r = 3, i.e. bound factor 16, for all n <= n_max."""
    if n_max > N_MAX_CAP:
        raise CapExceeded(f"n_max = {n_max} exceeds the configured cap {N_MAX_CAP}")
    glued = glue_family(family_a, family_b)
    rows = []
    for n in range(3, n_max + 1):
        ex_a = extremal_number(family_a, n)
        ex_b = extremal_number(family_b, n)
        ex_g = extremal_number(glued, n)
        bound = 16 * (ex_a + ex_b)
        rows.append(
            GluingRow(n=n, ex_a=ex_a, ex_b=ex_b, ex_glued=ex_g, bound=bound, ok=ex_g <= bound)
        )
    return rows
