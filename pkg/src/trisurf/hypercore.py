"""Core data types: 3-uniform hypergraphs, simple graphs, link graphs, I/O.

Vertices are dense integer ids in [0, n_vertices).  Edges are stored as
sorted tuples, so equality and hashing are canonical.  ``n_vertices`` may
exceed the largest id appearing in an edge: isolated vertices are
representable (the lower-bound generator needs them).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import IO, Iterable

from .errors import (
    DegenerateEdge,
    DuplicateEdge,
    MalformedLine,
    SameVertex,
    VertexOutOfRange,
)

Edge3 = tuple[int, int, int]
Pair = tuple[int, int]


def edge3(a: int, b: int, c: int) -> Edge3:
    """Normalize three distinct vertex ids into a sorted triple."""
    if a == b or b == c or a == c:
        raise DegenerateEdge(f"repeated vertex in triple ({a}, {b}, {c})")
    x, y, z = sorted((a, b, c))
    return (x, y, z)


def pair(a: int, b: int) -> Pair:
    if a == b:
        raise DegenerateEdge(f"loop pair ({a}, {b})")
    return (a, b) if a < b else (b, a)


def neighboring(e: Edge3, f: Edge3) -> bool:
    """True iff the two triples intersect in exactly two vertices."""
    return len(set(e) & set(f)) == 2


@dataclass(frozen=True)
class Hypergraph3:
    """A 3-uniform hypergraph: vertex count plus a set of sorted triples."""

    n_vertices: int
    edges: frozenset[Edge3]

    def __post_init__(self):
        if self.n_vertices < 0:
            raise VertexOutOfRange("negative vertex count")
        for e in self.edges:
            if len(set(e)) != 3:
                raise DegenerateEdge(f"degenerate edge {e}")
            if tuple(sorted(e)) != e:
                raise MalformedLine(f"unsorted edge {e}")
            if e[2] >= self.n_vertices or e[0] < 0:
                raise VertexOutOfRange(f"edge {e} outside [0, {self.n_vertices})")

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[int]], n_vertices: int | None = None) -> "Hypergraph3":
        norm = set()
        for e in edges:
            t = edge3(*e)
            if t in norm:
                raise DuplicateEdge(f"duplicate edge {t}")
            norm.add(t)
        max_id = max((e[2] for e in norm), default=-1)
        if n_vertices is None:
            n_vertices = max_id + 1
        return cls(n_vertices=n_vertices, edges=frozenset(norm))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def support(self) -> set[int]:
        """Vertices incident to at least one edge."""
        return {v for e in self.edges for v in e}

    def sorted_edges(self) -> list[Edge3]:
        return sorted(self.edges)

    def pair_map(self) -> dict[Pair, list[int]]:
        """Map each 2-subset of an edge to the sorted list of third vertices."""
        out: dict[Pair, list[int]] = {}
        for a, b, c in self.edges:
            out.setdefault((a, b), []).append(c)
            out.setdefault((a, c), []).append(b)
            out.setdefault((b, c), []).append(a)
        for v in out.values():
            v.sort()
        return out


@dataclass(frozen=True)
class SimpleGraph:
    """An undirected simple graph on dense integer ids."""

    n_vertices: int
    edges: frozenset[Pair]

    def __post_init__(self):
        if self.n_vertices < 0:
            raise VertexOutOfRange("negative vertex count")
        for u, v in self.edges:
            if u == v:
                raise DegenerateEdge(f"loop at {u}")
            if u > v:
                raise MalformedLine(f"unsorted pair ({u}, {v})")
            if v >= self.n_vertices or u < 0:
                raise VertexOutOfRange(f"pair ({u}, {v}) outside [0, {self.n_vertices})")

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[int]], n_vertices: int | None = None) -> "SimpleGraph":
        norm = {pair(*e) for e in edges}
        max_id = max((p[1] for p in norm), default=-1)
        if n_vertices is None:
            n_vertices = max_id + 1
        return cls(n_vertices=n_vertices, edges=frozenset(norm))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n_vertices)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def adjacency_masks(self) -> list[int]:
        """Adjacency as python-int bitmasks, one per vertex."""
        masks = [0] * self.n_vertices
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return masks

    def degree_sequence(self) -> list[int]:
        deg = [0] * self.n_vertices
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def subgraph(self, keep: Iterable[int]) -> "SimpleGraph":
        """Induced subgraph on `keep`, vertex ids preserved."""
        keep = set(keep)
        return SimpleGraph(
            n_vertices=self.n_vertices,
            edges=frozenset(e for e in self.edges if e[0] in keep and e[1] in keep),
        )


def link_graph(h: Hypergraph3, x: int) -> SimpleGraph:
    """Graph on V(H) whose edges are the pairs {y, z} with xyz an edge."""
    if not 0 <= x < h.n_vertices:
        raise VertexOutOfRange(f"vertex {x} outside [0, {h.n_vertices})")
    pairs = set()
    for e in h.edges:
        if x in e:
            rest = tuple(v for v in e if v != x)
            pairs.add(rest)
    return SimpleGraph(n_vertices=h.n_vertices, edges=frozenset(pairs))


def colink_graph(h: Hypergraph3, x: int, x2: int) -> SimpleGraph:
    """Edge-intersection of the link graphs of x and x2."""
    if x == x2:
        raise SameVertex(f"colink of {x} with itself")
    g1 = link_graph(h, x)
    g2 = link_graph(h, x2)
    return SimpleGraph(n_vertices=h.n_vertices, edges=g1.edges & g2.edges)


def pair_neighborhood(h: Hypergraph3, y: int, z: int) -> set[int]:
    """All w with wyz an edge of H."""
    if y == z:
        raise SameVertex(f"pair neighborhood of ({y}, {z})")
    out = set()
    for e in h.edges:
        if y in e and z in e:
            out.add(next(v for v in e if v != y and v != z))
    return out


# --- edge-list I/O -------------------------------------------------------
#
# UTF-8 text, one edge per line, three whitespace-separated nonnegative
# decimal integers.  Optional "#n <count>" header fixes n_vertices; other
# "#" lines are comments.  Serialization is bit-exact: "#n" header, then
# sorted triples in lexicographic order.


def parse_hypergraph(text: str | bytes) -> Hypergraph3:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n_override: int | None = None
    edges: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith("#n"):
                body = line[2:].strip()
                if body:
                    try:
                        n_override = int(body)
                    except ValueError:
                        raise MalformedLine(f"line {lineno}: bad #n header {line!r}")
            continue
        tokens = line.split()
        if len(tokens) != 3:
            raise MalformedLine(f"line {lineno}: expected 3 integers, got {line!r}")
        try:
            vals = tuple(int(t) for t in tokens)
        except ValueError:
            raise MalformedLine(f"line {lineno}: non-integer token in {line!r}")
        if any(v < 0 for v in vals):
            raise MalformedLine(f"line {lineno}: negative vertex id in {line!r}")
        edges.append(vals)
    try:
        return Hypergraph3.from_edges(edges, n_vertices=n_override)
    except DuplicateEdge as exc:
        raise DuplicateEdge(str(exc))


def serialize_hypergraph(h: Hypergraph3) -> str:
    lines = [f"#n {h.n_vertices}"]
    lines.extend(f"{a} {b} {c}" for a, b, c in h.sorted_edges())
    return "\n".join(lines) + "\n"


def load_hypergraph(stream: IO[str] | str) -> Hypergraph3:
    if isinstance(stream, str):
        with open(stream, "r", encoding="utf-8") as f:
            return parse_hypergraph(f.read())
    return parse_hypergraph(stream.read())


def parse_graph(text: str | bytes) -> SimpleGraph:
    """Same format as the hypergraph edge list, but two integers per line."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n_override: int | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith("#n"):
                body = line[2:].strip()
                if body:
                    try:
                        n_override = int(body)
                    except ValueError:
                        raise MalformedLine(f"line {lineno}: bad #n header {line!r}")
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise MalformedLine(f"line {lineno}: expected 2 integers, got {line!r}")
        try:
            u, v = (int(t) for t in tokens)
        except ValueError:
            raise MalformedLine(f"line {lineno}: non-integer token in {line!r}")
        if u < 0 or v < 0:
            raise MalformedLine(f"line {lineno}: negative vertex id in {line!r}")
        if u == v:
            raise DegenerateEdge(f"line {lineno}: loop at {u}")
        edges.append((u, v))
    return SimpleGraph.from_edges(edges, n_vertices=n_override)


def serialize_graph(g: SimpleGraph) -> str:
    lines = [f"#n {g.n_vertices}"]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"


def load_graph(stream: IO[str] | str) -> SimpleGraph:
    if isinstance(stream, str):
        with open(stream, "r", encoding="utf-8") as f:
            return parse_graph(f.read())
    return parse_graph(stream.read())


def complete_hypergraph(n: int) -> Hypergraph3:
    """All triples on n vertices."""
    return Hypergraph3.from_edges(itertools.combinations(range(n), 3), n_vertices=n)
