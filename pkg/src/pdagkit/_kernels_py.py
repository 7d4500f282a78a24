"""Pure-Python kernels over adjacency bitmasks.

Each graph is passed as tuples of int bitmasks indexed by node (bit ``j`` of
``succ[i]`` set means an edge ``i -> j``). This module is the reference the
compiled ``_ckernels`` extension mirrors line for line, and it is the
fallback for graphs wider than 64 nodes.
"""

from __future__ import annotations

from typing import Sequence


def closure(succ: Sequence[int], seeds: int) -> int:
    """Seeds plus every node reachable from them along ``succ``."""
    seen = frontier = seeds
    while frontier:
        nxt = 0
        m = frontier
        while m:
            low = m & -m
            nxt |= succ[low.bit_length() - 1]
            m ^= low
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def dconnected(
    parents: Sequence[int], children: Sequence[int], x: int, y: int, z: int
) -> bool:
    """Active-trail reachability from ``x`` to ``y`` given conditioning mask ``z``.

    Sweeps (node, arrival direction) states level by level. "up" states were
    entered from a child, "down" states from a parent.
    """
    anc = closure(parents, z)
    up_front, down_front = 1 << x, 0
    up_seen = down_seen = 0
    while up_front or down_front:
        up_seen |= up_front
        down_seen |= down_front
        if ((up_front | down_front) & ~z) >> y & 1:
            return True
        new_up = new_down = 0
        m = up_front & ~z
        while m:
            low = m & -m
            v = low.bit_length() - 1
            new_up |= parents[v]
            new_down |= children[v]
            m ^= low
        m = down_front
        while m:
            low = m & -m
            v = low.bit_length() - 1
            if not low & z:
                new_down |= children[v]
            if low & anc:
                new_up |= parents[v]
            m ^= low
        up_front = new_up & ~up_seen
        down_front = new_down & ~down_seen
    return False


def ptrail_connected(
    children: Sequence[int],
    parents: Sequence[int],
    undirected: Sequence[int],
    x: int,
    y: int,
    z: int,
    collider_ok: int,
) -> bool:
    """Exact search for an active simple definite-status p-trail from ``x`` to ``y``.

    Interior node v between trail neighbours a and b:

    * arrowheads at v on both sides: collider, active iff its bit is in ``collider_ok``;
    * a tail at v on either side: non-collider, active iff v is outside ``z``;
    * otherwise (an undirected edge, no tail): a non-collider when a and b are
      nonadjacent, else its status is open and the trail is not admissible.

    Edge kinds seen from v: 0 is v -> w, 1 is v - w, 2 is v <- w. The kind used
    to reach w is also w's arrival code (0 head at w, 1 undirected, 2 tail at w).
    """
    n = len(children)
    adj = [children[v] | parents[v] | undirected[v] for v in range(n)]
    target = 1 << y
    passable = ~z | collider_ok

    def step(v: int, prev: int, arrival: int, kind: int, nbrs: int) -> int:
        """Neighbours of v over edges of ``kind`` that keep v active, or 0."""
        if v == x:
            return nbrs
        if arrival == 0 and kind == 2:
            return nbrs if collider_ok >> v & 1 else 0
        if z >> v & 1:
            return 0
        if arrival != 2 and kind != 0:
            # open status unless the trail neighbours are nonadjacent
            return nbrs & ~adj[prev]
        return nbrs

    def can_finish(v: int, prev: int, arrival: int, visited: int) -> bool:
        # walks may repeat nodes, so failing to reach y by any walk over
        # unvisited nodes rules out every simple continuation too
        allowed = passable & ~visited
        seen = [0] * n
        stack = [(v, prev, arrival)]
        while stack:
            u, p, arr = stack.pop()
            for kind, nbrs in ((0, children[u]), (1, undirected[u]), (2, parents[u])):
                nbrs = step(u, p, arr, kind, nbrs)
                if nbrs & target:
                    return True
                m = nbrs & allowed
                while m:
                    low = m & -m
                    w = low.bit_length() - 1
                    if not seen[w] >> u & 1:
                        seen[w] |= 1 << u
                        stack.append((w, u, kind))
                    m ^= low
        return False

    def walk(v: int, prev: int, arrival: int, visited: int) -> bool:
        if v != x and not can_finish(v, prev, arrival, visited):
            return False
        for kind, nbrs in ((0, children[v]), (1, undirected[v]), (2, parents[v])):
            nbrs = step(v, prev, arrival, kind, nbrs)
            if nbrs & target:
                return True
            m = nbrs & ~visited & passable
            while m:
                low = m & -m
                if walk(low.bit_length() - 1, v, kind, visited | low):
                    return True
                m ^= low
        return False

    return walk(x, -1, 1, 1 << x)
