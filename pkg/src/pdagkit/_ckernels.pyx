# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels over uint64 adjacency bitmasks (graphs of at most 64 nodes).

Same contracts as ``pdagkit._kernels_py``; the dispatcher in
``pdagkit.kernels`` routes wider graphs to the Python versions.
"""

from libc.stdint cimport uint64_t

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil

cdef enum:
    MAXN = 64


cdef inline int _ctz(uint64_t m) nogil:
    return __builtin_ctzll(m)


cdef int _load(object seq, uint64_t* out) except -1:
    cdef Py_ssize_t n = len(seq)
    cdef Py_ssize_t i
    if n > MAXN:
        raise ValueError("compiled kernels handle at most 64 nodes")
    for i in range(n):
        out[i] = <uint64_t>seq[i]
    return <int>n


cdef uint64_t _closure(const uint64_t* succ, uint64_t seeds) nogil:
    cdef uint64_t seen = seeds
    cdef uint64_t frontier = seeds
    cdef uint64_t nxt, m
    while frontier:
        nxt = 0
        m = frontier
        while m:
            nxt |= succ[_ctz(m)]
            m &= m - 1
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def closure(succ, uint64_t seeds):
    cdef uint64_t s[MAXN]
    _load(succ, s)
    return _closure(s, seeds)


cdef bint _dconn(const uint64_t* par, const uint64_t* chi, int x, int y, uint64_t z) nogil:
    cdef uint64_t anc = _closure(par, z)
    cdef uint64_t up_front = (<uint64_t>1) << x
    cdef uint64_t down_front = 0
    cdef uint64_t up_seen = 0
    cdef uint64_t down_seen = 0
    cdef uint64_t new_up, new_down, m, low
    cdef int v
    while up_front or down_front:
        up_seen |= up_front
        down_seen |= down_front
        if ((up_front | down_front) & ~z) >> y & 1:
            return True
        new_up = 0
        new_down = 0
        m = up_front & ~z
        while m:
            v = _ctz(m)
            new_up |= par[v]
            new_down |= chi[v]
            m &= m - 1
        m = down_front
        while m:
            v = _ctz(m)
            low = (<uint64_t>1) << v
            if not (low & z):
                new_down |= chi[v]
            if low & anc:
                new_up |= par[v]
            m &= m - 1
        up_front = new_up & ~up_seen
        down_front = new_down & ~down_seen
    return False


def dconnected(parents, children, int x, int y, uint64_t z):
    cdef uint64_t par[MAXN]
    cdef uint64_t chi[MAXN]
    _load(parents, par)
    _load(children, chi)
    cdef bint found
    with nogil:
        found = _dconn(par, chi, x, y, z)
    return found


cdef struct PState:
    uint64_t chi[MAXN]
    uint64_t par[MAXN]
    uint64_t und[MAXN]
    uint64_t adj[MAXN]
    int x
    uint64_t target
    uint64_t z
    uint64_t ok
    uint64_t passable
    int n


cdef inline uint64_t _step(PState* s, int v, int prev, int arrival, int kind) nogil:
    cdef uint64_t nbrs
    if kind == 0:
        nbrs = s.chi[v]
    elif kind == 1:
        nbrs = s.und[v]
    else:
        nbrs = s.par[v]
    if v == s.x:
        return nbrs
    if arrival == 0 and kind == 2:
        return nbrs if (s.ok >> v & 1) else 0
    if s.z >> v & 1:
        return 0
    if arrival != 2 and kind != 0:
        return nbrs & ~s.adj[prev]
    return nbrs


cdef bint _can_finish(PState* s, int v, int prev, int arrival, uint64_t visited) nogil:
    # walk reachability over (node, predecessor) states; each state is pushed once
    cdef uint64_t allowed = s.passable & ~visited
    cdef uint64_t seen[MAXN]
    cdef int stack[MAXN * MAXN + 1]
    cdef int top = 0
    cdef int u, p, arr, kind, w, code
    cdef uint64_t nbrs, m
    for u in range(s.n):
        seen[u] = 0
    stack[0] = (v << 8) | (prev << 2) | arrival
    top = 1
    while top:
        top -= 1
        code = stack[top]
        u = code >> 8
        p = (code >> 2) & 63
        arr = code & 3
        for kind in range(3):
            nbrs = _step(s, u, p, arr, kind)
            if nbrs & s.target:
                return True
            m = nbrs & allowed
            while m:
                w = _ctz(m)
                if not (seen[w] >> u & 1):
                    seen[w] |= (<uint64_t>1) << u
                    stack[top] = (w << 8) | (u << 2) | kind
                    top += 1
                m &= m - 1
    return False


cdef bint _walk(PState* s, int v, int prev, int arrival, uint64_t visited) nogil:
    cdef int kind, w
    cdef uint64_t nbrs, m
    if v != s.x and not _can_finish(s, v, prev, arrival, visited):
        return False
    for kind in range(3):
        nbrs = _step(s, v, prev, arrival, kind)
        if nbrs & s.target:
            return True
        m = nbrs & ~visited & s.passable
        while m:
            w = _ctz(m)
            if _walk(s, w, v, kind, visited | ((<uint64_t>1) << w)):
                return True
            m &= m - 1
    return False


def ptrail_connected(children, parents, undirected, int x, int y, uint64_t z, uint64_t collider_ok):
    cdef PState s
    cdef int n = _load(children, s.chi)
    cdef int v
    _load(parents, s.par)
    _load(undirected, s.und)
    for v in range(n):
        s.adj[v] = s.chi[v] | s.par[v] | s.und[v]
    s.n = n
    s.x = x
    s.target = (<uint64_t>1) << y
    s.z = z
    s.ok = collider_ok
    s.passable = ~z | collider_ok
    cdef bint found
    with nogil:
        found = _walk(&s, x, -1, 1, (<uint64_t>1) << x)
    return found
