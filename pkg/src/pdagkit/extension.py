"""Consistent extensions of partially directed graphs.

A consistent extension (derived dag) orients every undirected edge so the
result is acyclic and has no unshielded collider the input lacked. Nodes are
peeled off one at a time: a node is legitimately removable when it has no
outgoing arrow and each of its undirected neighbours is adjacent to all of
its other neighbours. Removing it orients its undirected edges into it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from pdagkit import kernels
from pdagkit.errors import (
    ExtensionLimitError,
    GraphError,
    InextensibleError,
    NotRemovableError,
)
from pdagkit.graph import Dag, NodeRef, Pdag, mask_to_set

DEFAULT_MAX_UNDIRECTED = 12
DEFAULT_CAP = 100_000


@dataclass(frozen=True)
class RemovalRecord:
    """A removed node and the orientations its removal enforced, by label."""

    removed: str
    enforced: frozenset[tuple[str, str]]

    def to_json(self) -> dict:
        return {"removed": self.removed, "enforced": [list(e) for e in sorted(self.enforced)]}


def removal_violation(g: Pdag, v: NodeRef) -> Optional[str]:
    """Why ``v`` is not legitimately removable, or None when it is."""
    v = g.index(v)
    if g.children_masks[v]:
        kids = ", ".join(g.labels[c] for c in sorted(g.children(v)))
        return f"{g.labels[v]} has outgoing arrows to {kids}"
    adj = g.adj_masks[v]
    for u in sorted(g.undirected_neighbors(v)):
        missing = adj & ~(1 << u) & ~g.adj_masks[u]
        if missing:
            w = min(mask_to_set(missing))
            return (
                f"undirected neighbour {g.labels[u]} of {g.labels[v]} "
                f"is not adjacent to {g.labels[w]}"
            )
    return None


def removable_nodes(g: Pdag) -> frozenset[int]:
    return frozenset(v for v in range(g.n) if removal_violation(g, v) is None)


def remove_node(g: Pdag, v: NodeRef) -> tuple[Pdag, RemovalRecord]:
    """Remove a legitimately removable node, orienting its undirected edges into it."""
    v = g.index(v)
    why = removal_violation(g, v)
    if why is not None:
        raise NotRemovableError(f"{g.labels[v]} is not removable: {why}")
    enforced = frozenset((g.labels[u], g.labels[v]) for u in g.undirected_neighbors(v))
    return g.remove(v), RemovalRecord(g.labels[v], enforced)


def removal_sequence(g: Pdag) -> tuple[Dag, list[RemovalRecord]]:
    """Peel nodes off (lowest index first) and assemble the derived dag."""
    ix = {lab: i for i, lab in enumerate(g.labels)}
    directed = set(g.directed)
    records = []
    cur = g
    while cur.n:
        if cur.undirected:
            cands = removable_nodes(cur)
            if not cands:
                raise InextensibleError(
                    "no legitimately removable node while undirected edges remain: "
                    + ", ".join(f"{cur.labels[a]}-{cur.labels[b]}" for a, b in cur.sorted_undirected())
                )
            v = min(cands)
        else:
            # the rest is already directed; any sink works and enforces nothing
            v = min(v for v in range(cur.n) if not cur.children_masks[v])
        cur, rec = remove_node(cur, v)
        records.append(rec)
        directed.update((ix[a], ix[b]) for a, b in rec.enforced)
    return Dag(g.labels, frozenset(directed)), records


def derive_dag(g: Union[Dag, Pdag]) -> Dag:
    if isinstance(g, Dag):
        return g
    return removal_sequence(g)[0]


def enumerate_extensions(
    g: Union[Dag, Pdag],
    cap: int = DEFAULT_CAP,
    max_undirected: int = DEFAULT_MAX_UNDIRECTED,
) -> list[Dag]:
    """All consistent extensions of ``g``, sorted by their edge lists.

    Backtracks over the undirected edges, pruning any partial orientation
    that closes a cycle or forms a collider ``t -> h <- p`` with ``t`` and
    ``p`` nonadjacent.
    """
    if isinstance(g, Dag):
        return [g]
    und = g.sorted_undirected()
    if len(und) > max_undirected:
        raise ExtensionLimitError(
            f"{len(und)} undirected edges exceeds the bound of {max_undirected}"
        )
    adj = g.adj_masks
    parents = list(g.parents_masks)
    children = list(g.children_masks)
    chosen: list[tuple[int, int]] = []
    found: list[Dag] = []

    def ok(t: int, h: int) -> bool:
        if parents[h] & ~adj[t] & ~(1 << t):
            return False
        return not kernels.closure(children, children[h]) >> t & 1 and t != h

    def place(i: int) -> None:
        if i == len(und):
            if len(found) >= cap:
                raise ExtensionLimitError(f"more than {cap} consistent extensions")
            found.append(Dag(g.labels, g.directed | frozenset(chosen)))
            return
        a, b = und[i]
        for t, h in ((a, b), (b, a)):
            if ok(t, h):
                parents[h] |= 1 << t
                children[t] |= 1 << h
                chosen.append((t, h))
                place(i + 1)
                chosen.pop()
                parents[h] &= ~(1 << t)
                children[t] &= ~(1 << h)

    place(0)
    found.sort(key=lambda d: d.sorted_edges())
    return found


def markov_equivalent(a: Dag, b: Dag) -> bool:
    """Same skeleton and same unshielded colliders."""
    if a.labels != b.labels:
        raise GraphError("markov_equivalent needs graphs over the same node list")
    return (
        a.skeleton_edges == b.skeleton_edges
        and a.unshielded_colliders() == b.unshielded_colliders()
    )
