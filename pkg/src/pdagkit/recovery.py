"""Structure recovery: skeleton search, collider orientation, propagation rules.

The pipeline is ``find_skeleton -> orient_colliders -> close_orientations``.
Propagation uses three rules, each a single pass that reports the edges it
would orient on the graph it was given:

``IIc``  ``a -> b - c`` with a, c nonadjacent: orient ``b -> c``.
``IV``   ``a - b`` with a directed path from a to b: orient ``a -> b``.
``V``    ``l - i -> j``, ``l - k -> j``, ``l - j`` with i, k nonadjacent:
         orient ``l -> j``.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Optional, Sequence

from pdagkit import kernels
from pdagkit.errors import ColliderConflictError, CycleError
from pdagkit.graph import Edge, Pdag, SepsetTable, UGraph, mask_to_set
from pdagkit.oracle import CountingOracle, IndependenceOracle, OracleStats, PerfectOracle

log = logging.getLogger(__name__)

UNBOUNDED_MAX_VARS = 12
RULE_ORDER = ("IIc", "IV", "V")


@dataclass(frozen=True)
class TraceEntry:
    rule: str
    tail: str
    head: str

    def __str__(self) -> str:
        return f"RULE {self.rule}: {self.tail} -> {self.head}"


@dataclass
class RecoveryResult:
    pdag: Pdag
    sepsets: SepsetTable
    stats: OracleStats
    trace: list[TraceEntry] = field(default_factory=list)
    skeleton: Optional[UGraph] = None
    warnings: list[str] = field(default_factory=list)

    def trace_lines(self) -> list[str]:
        return [str(t) for t in self.trace]


def _separating_search(
    oracle: IndependenceOracle,
    labels: Sequence[str],
    snapshot: Sequence[frozenset[int]],
    x: int,
    y: int,
    size: int,
) -> Optional[tuple[int, ...]]:
    tried = set()
    for pool in (snapshot[x] - {y}, snapshot[y] - {x}):
        for z in combinations(sorted(pool), size):
            if z in tried:
                continue
            tried.add(z)
            if oracle.is_independent(labels[x], labels[y], [labels[v] for v in z]):
                return z
    return None


def find_skeleton(
    oracle: IndependenceOracle,
    vars: Optional[Iterable[str]] = None,
    max_cond: Optional[int] = None,
    workers: int = 1,
) -> tuple[UGraph, SepsetTable]:
    """Delete every edge whose endpoints some conditioning set separates.

    Conditioning sets grow one size at a time and are drawn from the
    adjacencies frozen at the start of each size level, so the result does
    not depend on pair order and pairs may be tested concurrently
    (``workers > 1``). The first witness found is kept as the pair's sepset.
    """
    labels = tuple(oracle.variables if vars is None else vars)
    if not labels:
        raise ValueError("find_skeleton needs at least one variable")
    if max_cond is None and len(labels) > UNBOUNDED_MAX_VARS:
        raise ValueError(
            f"max_cond must be set explicitly above {UNBOUNDED_MAX_VARS} variables"
        )
    n = len(labels)
    adj = [set(range(n)) - {v} for v in range(n)]
    sepsets: dict[Edge, frozenset[int]] = {}
    size = 0
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        while max_cond is None or size <= max_cond:
            pairs = [
                (x, y)
                for x in range(n)
                for y in sorted(adj[x])
                if x < y and max(len(adj[x]), len(adj[y])) - 1 >= size
            ]
            if not pairs:
                break
            snapshot = [frozenset(a) for a in adj]

            def search(p, snapshot=snapshot, size=size):
                return _separating_search(oracle, labels, snapshot, p[0], p[1], size)

            found = list(pool.map(search, pairs)) if pool else [search(p) for p in pairs]
            for (x, y), z in zip(pairs, found):
                if z is not None:
                    adj[x].discard(y)
                    adj[y].discard(x)
                    sepsets[(x, y)] = frozenset(z)
            size += 1
    finally:
        if pool:
            pool.shutdown()
    edges = frozenset((x, y) for x in range(n) for y in adj[x] if x < y)
    return UGraph(labels, edges), SepsetTable(labels, sepsets)


def _apply(
    g: Pdag, edges: Iterable[Edge], tag: str, strict: bool, trace: list, warnings: list
) -> Pdag:
    edges = sorted(set(edges))
    if strict:
        g = g.orient_many(edges)
    else:
        pairs = [frozenset(e) for e in edges]
        for t, h in edges:
            if pairs.count(frozenset((t, h))) > 1:
                a, b = min(t, h), max(t, h)
                msg = f"{tag}: both directions proposed for {g.labels[a]}-{g.labels[b]}; left undirected"
                if msg not in warnings:
                    warnings.append(msg)
                    log.warning(msg)
                continue
            try:
                g = g.orient(t, h)
            except CycleError:
                msg = f"{tag}: {g.labels[t]} -> {g.labels[h]} would close a cycle; left undirected"
                warnings.append(msg)
                log.warning(msg)
                continue
        edges = [e for e in edges if e in g.directed]
    trace.extend(TraceEntry(tag, g.labels[t], g.labels[h]) for t, h in edges)
    return g


def collider_proposals(skeleton: UGraph, sepsets: SepsetTable) -> dict[Edge, list]:
    """Map each proposed arrow to the unshielded triples that propose it."""
    adj = skeleton.adj_masks
    proposals: dict[Edge, list] = {}
    for w in range(skeleton.n):
        nbrs = sorted(mask_to_set(adj[w]))
        for i, x in enumerate(nbrs):
            for y in nbrs[i + 1:]:
                if adj[x] >> y & 1:
                    continue
                if w in sepsets[(x, y)]:
                    continue
                proposals.setdefault((x, w), []).append((x, w, y))
                proposals.setdefault((y, w), []).append((x, w, y))
    return proposals


def orient_colliders(
    skeleton: UGraph, sepsets: SepsetTable, strict: bool = True, warnings: Optional[list] = None
) -> Pdag:
    """Orient ``x -> w <- y`` for unshielded triples whose sepset omits ``w``.

    When the triples demand both directions of an edge, ``strict`` raises
    :class:`ColliderConflictError`; otherwise the edge stays undirected and
    a warning is recorded.
    """
    warnings = [] if warnings is None else warnings
    proposals = collider_proposals(skeleton, sepsets)
    conflicts = sorted(e for e in proposals if e[0] < e[1] and (e[1], e[0]) in proposals)
    if conflicts and strict:
        triples = sorted({t for a, b in conflicts for t in proposals[(a, b)] + proposals[(b, a)]})
        names = "; ".join(
            "{}->{}<-{}".format(*(skeleton.labels[v] for v in t)) for t in triples
        )
        raise ColliderConflictError(f"collider conflict among {names}", triples)
    g = skeleton.to_pdag()
    arrows = [e for e in proposals if (e[1], e[0]) not in proposals]
    for a, b in conflicts:
        msg = f"II: conflicting colliders on {g.labels[a]}-{g.labels[b]}; left undirected"
        warnings.append(msg)
        log.warning(msg)
    return _apply(g, arrows, "II", strict, [], warnings)


def rule_IIc(g: Pdag) -> frozenset[Edge]:
    out = set()
    for a, b in g.directed:
        for c in mask_to_set(g.undirected_masks[b] & ~g.adj_masks[a] & ~(1 << a)):
            out.add((b, c))
    return frozenset(out)


def rule_IV(g: Pdag) -> frozenset[Edge]:
    out = set()
    reach = [kernels.closure(g.children_masks, g.children_masks[v]) for v in range(g.n)]
    for a, b in g.undirected:
        if reach[a] >> b & 1:
            out.add((a, b))
        elif reach[b] >> a & 1:
            out.add((b, a))
    return frozenset(out)


def rule_V(g: Pdag) -> frozenset[Edge]:
    out = set()
    for a, b in g.undirected:
        for l, j in ((a, b), (b, a)):
            flank = sorted(mask_to_set(g.undirected_masks[l] & g.parents_masks[j]))
            if any(not g.adj_masks[i] >> k & 1 for i, k in combinations(flank, 2)):
                out.add((l, j))
    return frozenset(out)


RULES: dict[str, Callable[[Pdag], frozenset[Edge]]] = {
    "IIc": rule_IIc,
    "IV": rule_IV,
    "V": rule_V,
}


def close_orientations(
    g: Pdag,
    order: Sequence[str] = RULE_ORDER,
    strict: bool = True,
    warnings: Optional[list] = None,
) -> tuple[Pdag, list[TraceEntry]]:
    """Apply the rules in ``order`` until a full sweep orients nothing."""
    warnings = [] if warnings is None else warnings
    trace: list[TraceEntry] = []
    changed = True
    while changed:
        changed = False
        for tag in order:
            new = RULES[tag](g)
            if new:
                before = len(g.undirected)
                g = _apply(g, new, tag, strict, trace, warnings)
                changed = changed or len(g.undirected) < before
    return g, trace


def _is_perfect(oracle) -> bool:
    while isinstance(oracle, CountingOracle):
        oracle = oracle.inner
    return isinstance(oracle, PerfectOracle)


def recover(
    oracle: IndependenceOracle,
    vars: Optional[Iterable[str]] = None,
    max_cond: Optional[int] = None,
    strict: Optional[bool] = None,
    workers: int = 1,
    order: Sequence[str] = RULE_ORDER,
) -> RecoveryResult:
    """Run the full pipeline.

    ``strict`` defaults to True for a perfect oracle and False otherwise; in
    non-strict mode conflicting or cycle-closing orientations are left
    undirected and reported in ``warnings``.
    """
    if strict is None:
        strict = _is_perfect(oracle)
    if not isinstance(oracle, CountingOracle):
        oracle = CountingOracle(oracle)
    warnings: list[str] = []
    skeleton, sepsets = find_skeleton(oracle, vars, max_cond, workers)
    g = orient_colliders(skeleton, sepsets, strict, warnings)
    colliders = [TraceEntry("II", g.labels[t], g.labels[h]) for t, h in g.sorted_directed()]
    g, trace = close_orientations(g, order, strict, warnings)
    return RecoveryResult(g, sepsets, oracle.stats, colliders + trace, skeleton, warnings)
