# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: vertex-disjoint path counting and subset profiles.

Mirrors _pure.py; limited to graphs with at most 62 vertices (uint64
adjacency masks).  The wrapper in trisurf._kernels falls back to the pure
lane above that size.
"""

from libc.string cimport memset

BACKEND = "compiled"
MAX_N = 62

cdef extern from *:
    """
    static inline int ctz64(unsigned long long m) {
        return __builtin_ctzll(m);
    }
    """
    int ctz64(unsigned long long m) nogil


cdef int _menger(unsigned long long* masks, int n, int x, int y, int cap,
                 char* vused, char* eflow) nogil:
    # unit-capacity max-flow on the split network; nodes 2v (in), 2v+1 (out)
    cdef int parent[128]
    cdef int queue[128]
    cdef int flow = 0, qlen, qi, node, v, u, is_out, t, prev, pv, nv
    cdef int source = 2 * x + 1, sink = 2 * y
    cdef unsigned long long m
    cdef bint found
    memset(vused, 0, n)
    memset(eflow, 0, n * n)
    while flow < cap:
        for v in range(2 * n):
            parent[v] = -1
        parent[source] = source
        queue[0] = source
        qlen = 1
        qi = 0
        found = False
        while qi < qlen and not found:
            node = queue[qi]
            qi += 1
            v = node >> 1
            is_out = node & 1
            if is_out:
                if vused[v] and parent[2 * v] < 0:
                    parent[2 * v] = node
                    queue[qlen] = 2 * v
                    qlen += 1
                m = masks[v]
                while m:
                    u = ctz64(m)
                    m &= m - 1
                    if not eflow[v * n + u]:
                        t = 2 * u
                        if parent[t] < 0:
                            parent[t] = node
                            if t == sink:
                                found = True
                                break
                            queue[qlen] = t
                            qlen += 1
            else:
                if (v == x or v == y or not vused[v]) and parent[2 * v + 1] < 0:
                    parent[2 * v + 1] = node
                    queue[qlen] = 2 * v + 1
                    qlen += 1
                m = masks[v]
                while m:
                    u = ctz64(m)
                    m &= m - 1
                    if eflow[u * n + v]:
                        t = 2 * u + 1
                        if parent[t] < 0:
                            parent[t] = node
                            queue[qlen] = t
                            qlen += 1
        if not found:
            break
        node = sink
        while node != source:
            prev = parent[node]
            pv = prev >> 1
            nv = node >> 1
            if pv == nv:
                if node & 1:
                    if nv != x and nv != y:
                        vused[nv] = 1
                else:
                    vused[nv] = 0
            elif (prev & 1) and not (node & 1):
                eflow[pv * n + nv] = 1
            else:
                eflow[nv * n + pv] = 0
            node = prev
        flow += 1
    return flow


def menger_count(adj, int x, int y, int cap, active=-1):
    """Compiled twin of _pure.menger_count; requires len(adj) <= 62."""
    cdef int n = len(adj)
    if n > MAX_N:
        raise ValueError("compiled kernel limited to 62 vertices")
    cdef unsigned long long act
    if active == -1:
        act = (<unsigned long long>1 << n) - 1
    else:
        act = <unsigned long long>active
    act |= (<unsigned long long>1 << x) | (<unsigned long long>1 << y)
    cdef unsigned long long masks[64]
    cdef char vused[64]
    cdef char eflow[64 * 64]
    cdef int v
    for v in range(n):
        masks[v] = <unsigned long long>adj[v] & act
    masks[x] &= ~(<unsigned long long>1 << y)
    masks[y] &= ~(<unsigned long long>1 << x)
    if cap > 62:
        cap = 62
    return _menger(masks, n, x, y, cap, vused, eflow)


def admissible_profile(adj, int x, int y, int kmax):
    """Compiled twin of _pure.admissible_profile (n <= 16 is the sane range)."""
    cdef int n = len(adj)
    if n > MAX_N:
        raise ValueError("compiled kernel limited to 62 vertices")
    cdef unsigned long long full[64]
    cdef unsigned long long masks[64]
    cdef char vused[64]
    cdef char eflow[64 * 64]
    cdef int others[64]
    cdef int t = 0, v, i, size, cnt
    cdef unsigned long long base, active, m, sub
    for v in range(n):
        full[v] = <unsigned long long>adj[v]
        if v != x and v != y:
            others[t] = v
            t += 1
    if t > 24:
        raise ValueError("subset profile limited to 24 free vertices")
    counts = [[0] * (kmax + 1) for _ in range(t + 1)]
    base = (<unsigned long long>1 << x) | (<unsigned long long>1 << y)
    cdef unsigned long long mlimit = <unsigned long long>1 << t
    cdef unsigned long long msub = 0
    while msub < mlimit:
        active = base
        size = 0
        sub = msub
        while sub:
            i = ctz64(sub)
            sub &= sub - 1
            active |= <unsigned long long>1 << others[i]
            size += 1
        for v in range(n):
            masks[v] = full[v] & active
        masks[x] &= ~(<unsigned long long>1 << y)
        masks[y] &= ~(<unsigned long long>1 << x)
        cnt = _menger(masks, n, x, y, kmax, vused, eflow)
        counts[size][cnt] += 1
        msub += 1
    return counts
