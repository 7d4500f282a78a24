"""Immutable graph values: :class:`Dag`, :class:`UGraph` and :class:`Pdag`.

Nodes are identified by a dense index ``0..n-1``; labels are unique and only
used for presentation and I/O. Every public function that takes a node also
accepts its label. Undirected pairs are stored with the smaller index first
and every edge listing is sorted, so output is deterministic.
"""

from __future__ import annotations

import graphlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Union

from pdagkit import kernels
from pdagkit.errors import CycleError, GraphError, UnknownNodeError

NodeRef = Union[int, str]
Edge = tuple[int, int]


def _canon(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_to_set(mask: int) -> frozenset[int]:
    return frozenset(_bits(mask))


def set_to_mask(nodes: Iterable[int]) -> int:
    m = 0
    for v in nodes:
        m |= 1 << v
    return m


def _check_acyclic(n: int, directed: Iterable[Edge]) -> None:
    ts = graphlib.TopologicalSorter({v: () for v in range(n)})
    for a, b in directed:
        ts.add(b, a)
    try:
        ts.prepare()
    except graphlib.CycleError as exc:
        raise CycleError(f"directed edges contain a cycle through {exc.args[1]}") from None


@dataclass(frozen=True)
class _Graph:
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.labels)) != len(self.labels):
            raise GraphError("node labels must be unique")

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def _label_index(self) -> Mapping[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, v: NodeRef) -> int:
        """Resolve a label or index to an index, raising on unknown nodes."""
        if isinstance(v, str):
            try:
                return self._label_index[v]
            except KeyError:
                raise UnknownNodeError(f"unknown node {v!r}") from None
        if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < self.n:
            raise UnknownNodeError(f"unknown node {v!r}")
        return v

    def indices(self, vs: Iterable[NodeRef]) -> frozenset[int]:
        return frozenset(self.index(v) for v in vs)

    def label(self, v: NodeRef) -> str:
        return self.labels[self.index(v)]

    def names(self, vs: Iterable[NodeRef]) -> set[str]:
        """Labels of a node collection, handy for readable comparisons."""
        return {self.label(v) for v in vs}

    def edge_names(self, edges: Iterable[Edge]) -> set[tuple[str, str]]:
        return {(self.labels[a], self.labels[b]) for a, b in edges}

    def _links(self) -> Iterable[Edge]:
        raise NotImplementedError

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for a, b in self._links():
            masks[a] |= 1 << b
            masks[b] |= 1 << a
        return tuple(masks)

    def adjacents(self, v: NodeRef) -> frozenset[int]:
        return mask_to_set(self.adj_masks[self.index(v)])

    def is_adjacent(self, a: NodeRef, b: NodeRef) -> bool:
        return bool(self.adj_masks[self.index(a)] >> self.index(b) & 1)

    @cached_property
    def skeleton_edges(self) -> frozenset[Edge]:
        return frozenset(_canon(a, b) for a, b in self._links())

    def skeleton(self) -> UGraph:
        return UGraph(self.labels, self.skeleton_edges)

    def _check_pairs(self, pairs: Iterable[Edge]) -> None:
        for a, b in pairs:
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise UnknownNodeError(f"edge {(a, b)} references a node outside 0..{self.n - 1}")
            if a == b:
                raise GraphError(f"self-loop at {self.labels[a]}")


@dataclass(frozen=True)
class UGraph(_Graph):
    """Undirected graph; ``edges`` holds canonical ``(low, high)`` pairs."""

    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        super().__post_init__()
        edges = frozenset(_canon(a, b) for a, b in self.edges)
        object.__setattr__(self, "edges", edges)
        self._check_pairs(edges)

    @classmethod
    def from_labels(cls, labels: Iterable[str], edges: Iterable[tuple[str, str]]) -> UGraph:
        labels = tuple(labels)
        ix = {lab: i for i, lab in enumerate(labels)}
        try:
            return cls(labels, frozenset((ix[a], ix[b]) for a, b in edges))
        except KeyError as exc:
            raise UnknownNodeError(f"unknown node {exc.args[0]!r}") from None

    def _links(self) -> Iterable[Edge]:
        return self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def remove_edge(self, a: NodeRef, b: NodeRef) -> UGraph:
        e = _canon(self.index(a), self.index(b))
        if e not in self.edges:
            raise GraphError(f"no edge {self.labels[e[0]]}-{self.labels[e[1]]}")
        return UGraph(self.labels, self.edges - {e})

    def to_pdag(self) -> Pdag:
        return Pdag(self.labels, frozenset(), self.edges)


class _DirectedMasks:
    """Bitmask views over a directed edge set (mixin)."""

    labels: tuple[str, ...]

    def _directed_edges(self) -> Iterable[Edge]:
        raise NotImplementedError

    @cached_property
    def children_masks(self) -> tuple[int, ...]:
        masks = [0] * len(self.labels)
        for a, b in self._directed_edges():
            masks[a] |= 1 << b
        return tuple(masks)

    @cached_property
    def parents_masks(self) -> tuple[int, ...]:
        masks = [0] * len(self.labels)
        for a, b in self._directed_edges():
            masks[b] |= 1 << a
        return tuple(masks)

    def children(self, v: NodeRef) -> frozenset[int]:
        return mask_to_set(self.children_masks[self.index(v)])

    def parents(self, v: NodeRef) -> frozenset[int]:
        return mask_to_set(self.parents_masks[self.index(v)])

    def has_directed_path(self, a: NodeRef, b: NodeRef) -> bool:
        """True when a directed path of length >= 1 leads from a to b."""
        a, b = self.index(a), self.index(b)
        return bool(kernels.closure(self.children_masks, self.children_masks[a]) >> b & 1)

    def unshielded_colliders(self) -> frozenset[tuple[int, int, int]]:
        """Triples ``(x, w, y)`` with ``x -> w <- y``, x < y, x and y nonadjacent."""
        out = set()
        for w, pm in enumerate(self.parents_masks):
            ps = sorted(_bits(pm))
            for i, x in enumerate(ps):
                for y in ps[i + 1:]:
                    if not self.adj_masks[x] >> y & 1:
                        out.add((x, w, y))
        return frozenset(out)


@dataclass(frozen=True)
class Dag(_DirectedMasks, _Graph):
    """Directed acyclic graph with ``edges`` as ``(tail, head)`` pairs."""

    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        super().__post_init__()
        edges = frozenset(self.edges)
        object.__setattr__(self, "edges", edges)
        self._check_pairs(edges)
        if len({_canon(a, b) for a, b in edges}) != len(edges):
            raise GraphError("at most one edge per unordered pair")
        _check_acyclic(self.n, edges)

    @classmethod
    def from_labels(cls, labels: Iterable[str], edges: Iterable[tuple[str, str]]) -> Dag:
        labels = tuple(labels)
        ix = {lab: i for i, lab in enumerate(labels)}
        try:
            return cls(labels, frozenset((ix[a], ix[b]) for a, b in edges))
        except KeyError as exc:
            raise UnknownNodeError(f"unknown node {exc.args[0]!r}") from None

    def _links(self) -> Iterable[Edge]:
        return self.edges

    def _directed_edges(self) -> Iterable[Edge]:
        return self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def descendants(self, v: NodeRef) -> frozenset[int]:
        v = self.index(v)
        return mask_to_set(kernels.closure(self.children_masks, self.children_masks[v]))

    def ancestors(self, v: NodeRef) -> frozenset[int]:
        v = self.index(v)
        return mask_to_set(kernels.closure(self.parents_masks, self.parents_masks[v]))

    def topological_order(self) -> list[int]:
        ts = graphlib.TopologicalSorter({v: () for v in range(self.n)})
        for a, b in sorted(self.edges):
            ts.add(b, a)
        return list(ts.static_order())

    def to_pdag(self) -> Pdag:
        return Pdag(self.labels, self.edges, frozenset())


@dataclass(frozen=True)
class Pdag(_DirectedMasks, _Graph):
    """Partially directed graph whose directed part is always acyclic.

    ``directed`` holds ``(tail, head)`` pairs, ``undirected`` canonical
    ``(low, high)`` pairs; the two never share an unordered pair.
    """

    directed: frozenset[Edge] = field(default_factory=frozenset)
    undirected: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        super().__post_init__()
        directed = frozenset(self.directed)
        undirected = frozenset(_canon(a, b) for a, b in self.undirected)
        object.__setattr__(self, "directed", directed)
        object.__setattr__(self, "undirected", undirected)
        self._check_pairs(directed | undirected)
        dpairs = {_canon(a, b) for a, b in directed}
        if len(dpairs) != len(directed):
            raise GraphError("at most one edge per unordered pair")
        if dpairs & undirected:
            raise GraphError("a pair is both directed and undirected")
        _check_acyclic(self.n, directed)

    @classmethod
    def from_labels(
        cls,
        labels: Iterable[str],
        directed: Iterable[tuple[str, str]] = (),
        undirected: Iterable[tuple[str, str]] = (),
    ) -> Pdag:
        labels = tuple(labels)
        ix = {lab: i for i, lab in enumerate(labels)}
        try:
            d = frozenset((ix[a], ix[b]) for a, b in directed)
            u = frozenset((ix[a], ix[b]) for a, b in undirected)
        except KeyError as exc:
            raise UnknownNodeError(f"unknown node {exc.args[0]!r}") from None
        return cls(labels, d, u)

    def _links(self) -> Iterable[Edge]:
        yield from self.directed
        yield from self.undirected

    def _directed_edges(self) -> Iterable[Edge]:
        return self.directed

    @cached_property
    def undirected_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for a, b in self.undirected:
            masks[a] |= 1 << b
            masks[b] |= 1 << a
        return tuple(masks)

    def undirected_neighbors(self, v: NodeRef) -> frozenset[int]:
        return mask_to_set(self.undirected_masks[self.index(v)])

    @property
    def is_fully_directed(self) -> bool:
        return not self.undirected

    def sorted_directed(self) -> list[Edge]:
        return sorted(self.directed)

    def sorted_undirected(self) -> list[Edge]:
        return sorted(self.undirected)

    def orient(self, tail: NodeRef, head: NodeRef) -> Pdag:
        t, h = self.index(tail), self.index(head)
        pair = _canon(t, h)
        if pair not in self.undirected:
            raise GraphError(f"{self.labels[t]}-{self.labels[h]} is not an undirected edge")
        if t == h or kernels.closure(self.children_masks, self.children_masks[h]) >> t & 1:
            raise CycleError(
                f"orienting {self.labels[t]} -> {self.labels[h]} closes a directed cycle"
            )
        return Pdag(self.labels, self.directed | {(t, h)}, self.undirected - {pair})

    def orient_many(self, edges: Iterable[Edge]) -> Pdag:
        """Orient several undirected edges at once; the result must stay acyclic."""
        edges = set(edges)
        pairs = {_canon(a, b) for a, b in edges}
        missing = pairs - self.undirected
        if missing:
            a, b = min(missing)
            raise GraphError(f"{self.labels[a]}-{self.labels[b]} is not an undirected edge")
        if len(pairs) != len(edges):
            raise GraphError("both directions requested for one edge")
        return Pdag(self.labels, self.directed | edges, self.undirected - pairs)

    def to_dag(self) -> Dag:
        if self.undirected:
            raise GraphError("graph still has undirected edges")
        return Dag(self.labels, self.directed)

    def remove(self, v: NodeRef) -> Pdag:
        """Drop a node and its incident edges, re-densifying indices."""
        v = self.index(v)
        remap = {old: new for new, old in enumerate(i for i in range(self.n) if i != v)}
        labels = tuple(lab for i, lab in enumerate(self.labels) if i != v)
        d = frozenset((remap[a], remap[b]) for a, b in self.directed if v not in (a, b))
        u = frozenset((remap[a], remap[b]) for a, b in self.undirected if v not in (a, b))
        return Pdag(labels, d, u)


AnyGraph = Union[Dag, UGraph, Pdag]


def adjacents(g: AnyGraph, v: NodeRef) -> frozenset[int]:
    """All nodes linked to ``v`` by any edge, in any direction."""
    return g.adjacents(v)


def orient(g: Pdag, tail: NodeRef, head: NodeRef) -> Pdag:
    """Turn the undirected edge ``tail - head`` into ``tail -> head``."""
    return g.orient(tail, head)


def descendants(g: Dag, v: NodeRef) -> frozenset[int]:
    """Nodes reachable from ``v`` by a directed path, excluding ``v``."""
    return g.descendants(v)


@dataclass(frozen=True)
class SepsetTable:
    """Witness separating set for each nonadjacent pair, keyed by canonical pair."""

    labels: tuple[str, ...]
    entries: Mapping[Edge, frozenset[int]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        entries = {}
        for (a, b), z in dict(self.entries).items():
            z = frozenset(z)
            if a == b or a in z or b in z:
                raise GraphError("a separating set may not contain its own pair")
            entries[_canon(a, b)] = z
        object.__setattr__(self, "entries", entries)

    def __hash__(self) -> int:
        return hash((self.labels, frozenset(self.entries.items())))

    def _key(self, a: NodeRef, b: NodeRef) -> Edge:
        ix = {lab: i for i, lab in enumerate(self.labels)}
        a = ix[a] if isinstance(a, str) else a
        b = ix[b] if isinstance(b, str) else b
        return _canon(a, b)

    def __getitem__(self, pair: tuple[NodeRef, NodeRef]) -> frozenset[int]:
        return self.entries[self._key(*pair)]

    def __contains__(self, pair: tuple[NodeRef, NodeRef]) -> bool:
        return self._key(*pair) in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def pairs(self) -> list[Edge]:
        return sorted(self.entries)

    def to_json(self) -> list[dict]:
        return [
            {
                "pair": [self.labels[a], self.labels[b]],
                "sepset": [self.labels[v] for v in sorted(self.entries[(a, b)])],
            }
            for a, b in self.pairs()
        ]
