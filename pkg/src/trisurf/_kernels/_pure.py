"""Pure-Python kernels: vertex-disjoint path counting and subset profiles.

Same contracts as the compiled twin in _core.pyx.  Graphs come in as
bitmask adjacency lists (one python int per vertex), so the hot loops are
bit operations rather than set lookups.
"""

from __future__ import annotations

BACKEND = "pure"


def menger_count(adj: list[int], x: int, y: int, cap: int, active: int = -1) -> int:
    """Max number of internally vertex-disjoint x-y paths, capped at `cap`.

    The direct edge xy is deleted first (the length-one path never
    counts).  `active` restricts the graph to a vertex subset; x and y
    are always kept.  Unit-capacity max-flow on the split-vertex network,
    one BFS per augmenting path.
    """
    n = len(adj)
    if active == -1:
        active = (1 << n) - 1
    active |= (1 << x) | (1 << y)
    masks = [adj[v] & active for v in range(n)]
    masks[x] &= ~(1 << y)
    masks[y] &= ~(1 << x)

    vused = [False] * n
    eflow: set[tuple[int, int]] = set()
    source = 2 * x + 1  # out(x)
    sink = 2 * y        # in(y)
    flow = 0
    while flow < cap:
        parent = {source: source}
        queue = [source]
        qi = 0
        found = False
        while qi < len(queue) and not found:
            node = queue[qi]
            qi += 1
            v, is_out = node >> 1, node & 1
            if is_out:
                if vused[v] and (2 * v) not in parent:
                    parent[2 * v] = node
                    queue.append(2 * v)
                m = masks[v]
                while m:
                    b = m & -m
                    m ^= b
                    u = b.bit_length() - 1
                    if (v, u) not in eflow:
                        t = 2 * u
                        if t not in parent:
                            parent[t] = node
                            if t == sink:
                                found = True
                                break
                            queue.append(t)
            else:
                if (v == x or v == y or not vused[v]) and (2 * v + 1) not in parent:
                    parent[2 * v + 1] = node
                    queue.append(2 * v + 1)
                m = masks[v]
                while m:
                    b = m & -m
                    m ^= b
                    u = b.bit_length() - 1
                    if (u, v) in eflow:
                        t = 2 * u + 1
                        if t not in parent:
                            parent[t] = node
                            queue.append(t)
        if not found:
            break
        node = sink
        while node != source:
            prev = parent[node]
            pv, p_out = prev >> 1, prev & 1
            nv, n_out = node >> 1, node & 1
            if pv == nv:
                if n_out:  # in(v) -> out(v)
                    if nv != x and nv != y:
                        vused[nv] = True
                else:      # out(v) -> in(v): cancellation
                    vused[nv] = False
            elif p_out and not n_out:  # out(pv) -> in(nv)
                eflow.add((pv, nv))
            else:                      # in(pv) -> out(nv): cancel edge (nv, pv)
                eflow.discard((nv, pv))
            node = prev
        flow += 1
    return flow


def menger_cut(adj: list[int], x: int, y: int, cap: int, active: int = -1):
    """Like menger_count, but also returns a minimum vertex cut when the
    count is below `cap` (else an empty list).

    The cut consists of vertices whose in-node is reachable in the final
    residual network while the out-node is not.  For that residual pass
    the edge arcs count as infinite capacity (only the split arcs are
    unit), so the minimum cut consists of split arcs alone and its size
    equals the path count exactly.
    """
    n = len(adj)
    if active == -1:
        active = (1 << n) - 1
    active |= (1 << x) | (1 << y)
    masks = [adj[v] & active for v in range(n)]
    masks[x] &= ~(1 << y)
    masks[y] &= ~(1 << x)

    vused = [False] * n
    eflow: set[tuple[int, int]] = set()
    source = 2 * x + 1
    sink = 2 * y
    flow = 0
    reach: set[int] = set()
    while True:
        parent = {source: source}
        queue = [source]
        qi = 0
        found = False
        while qi < len(queue):
            node = queue[qi]
            qi += 1
            v, is_out = node >> 1, node & 1
            if is_out:
                if vused[v] and (2 * v) not in parent:
                    parent[2 * v] = node
                    queue.append(2 * v)
                m = masks[v]
                while m:
                    b = m & -m
                    m ^= b
                    u = b.bit_length() - 1
                    if (v, u) not in eflow and (2 * u) not in parent:
                        parent[2 * u] = node
                        if 2 * u == sink:
                            found = True
                        queue.append(2 * u)
            else:
                if (v == x or v == y or not vused[v]) and (2 * v + 1) not in parent:
                    parent[2 * v + 1] = node
                    queue.append(2 * v + 1)
                m = masks[v]
                while m:
                    b = m & -m
                    m ^= b
                    u = b.bit_length() - 1
                    if (u, v) in eflow and (2 * u + 1) not in parent:
                        parent[2 * u + 1] = node
                        queue.append(2 * u + 1)
        if not found or flow >= cap:
            # reachability for the cut: forward edge arcs are infinite
            # capacity here, split arcs saturate as usual
            reach = {source}
            queue = [source]
            qi = 0
            while qi < len(queue):
                node = queue[qi]
                qi += 1
                v, is_out = node >> 1, node & 1
                if is_out:
                    if vused[v] and (2 * v) not in reach:
                        reach.add(2 * v)
                        queue.append(2 * v)
                    m = masks[v]
                    while m:
                        b = m & -m
                        m ^= b
                        u = b.bit_length() - 1
                        if (2 * u) not in reach:
                            reach.add(2 * u)
                            queue.append(2 * u)
                else:
                    if (v == x or v == y or not vused[v]) and (2 * v + 1) not in reach:
                        reach.add(2 * v + 1)
                        queue.append(2 * v + 1)
                    m = masks[v]
                    while m:
                        b = m & -m
                        m ^= b
                        u = b.bit_length() - 1
                        if (u, v) in eflow and (2 * u + 1) not in reach:
                            reach.add(2 * u + 1)
                            queue.append(2 * u + 1)
            break
        node = sink
        while node != source:
            prev = parent[node]
            pv, p_out = prev >> 1, prev & 1
            nv, n_out = node >> 1, node & 1
            if pv == nv:
                if n_out:
                    if nv != x and nv != y:
                        vused[nv] = True
                else:
                    vused[nv] = False
            elif p_out and not n_out:
                eflow.add((pv, nv))
            else:
                eflow.discard((nv, pv))
            node = prev
        flow += 1
    if flow >= cap:
        return flow, []
    cut = [v for v in range(n) if v != x and v != y
           and (2 * v) in reach and (2 * v + 1) not in reach]
    return flow, cut


def admissible_profile(adj: list[int], x: int, y: int, kmax: int) -> list[list[int]]:
    """Exhaustive subset profile for the retention experiment at edge xy.

    For every subset U of V \\ {x, y}, computes the disjoint-path count
    (capped at kmax) in the subgraph induced on U + {x, y}.  Returns
    counts[s][m] = number of subsets of size s with capped count m.
    Caller turns this into retention probabilities for any (p, k <= kmax).
    """
    n = len(adj)
    others = [v for v in range(n) if v != x and v != y]
    t = len(others)
    counts = [[0] * (kmax + 1) for _ in range(t + 1)]
    base = (1 << x) | (1 << y)
    for m in range(1 << t):
        active = base
        size = 0
        mm = m
        while mm:
            b = mm & -mm
            mm ^= b
            active |= 1 << others[b.bit_length() - 1]
            size += 1
        cnt = menger_count(adj, x, y, kmax, active)
        counts[size][cnt] += 1
    return counts
