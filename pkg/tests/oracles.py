"""Brute-force reference implementations used only by the tests.

Nothing here calls into pdagkit's kernels: graphs are rebuilt as networkx
objects from their edge lists and everything is enumerated directly.
"""

from __future__ import annotations

import itertools

import networkx as nx


def to_nx(dag) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(dag.n))
    g.add_edges_from(dag.edges)
    return g


def simple_trails(n, links, x, y):
    """Every simple trail from x to y in the undirected skeleton, as node lists."""
    sk = nx.Graph()
    sk.add_nodes_from(range(n))
    sk.add_edges_from(links)
    return [list(p) for p in nx.all_simple_paths(sk, x, y)]


class TrailTable:
    """Per-pair trail decomposition of a DAG, reusable across conditioning sets."""

    def __init__(self, dag):
        self.dag = dag
        self.g = to_nx(dag)
        self.desc = {v: nx.descendants(self.g, v) | {v} for v in self.g}
        self._cache = {}

    def _triples(self, x, y):
        key = (x, y)
        if key not in self._cache:
            out = []
            for path in simple_trails(self.dag.n, self.dag.edges, x, y):
                kinds = []
                for a, v, b in zip(path, path[1:], path[2:]):
                    kinds.append((v, self.g.has_edge(a, v) and self.g.has_edge(b, v)))
                out.append(kinds)
            self._cache[key] = out
        return self._cache[key]

    def connected(self, x, y, z) -> bool:
        z = set(z)
        for kinds in self._triples(x, y):
            if all(
                (bool(self.desc[v] & z) if collider else v not in z) for v, collider in kinds
            ):
                return True
        return False


def brute_dconnected(dag, x, y, z) -> bool:
    return TrailTable(dag).connected(x, y, z)


def colliders(n, directed):
    """Unshielded colliders (x, w, y), x < y, of a directed edge set over a given skeleton."""
    return {
        (min(a, b), w, max(a, b))
        for w in range(n)
        for a, b in itertools.combinations(sorted(p for p, c in directed if c == w), 2)
    }


def brute_extensions(pdag):
    """All acyclic orientations of the undirected edges that add no unshielded collider."""
    und = sorted(pdag.undirected)
    skel = nx.Graph()
    skel.add_nodes_from(range(pdag.n))
    skel.add_edges_from(pdag.directed)
    skel.add_edges_from(und)

    def unshielded(edges):
        return {t for t in colliders(pdag.n, edges) if not skel.has_edge(t[0], t[2])}

    base = unshielded(pdag.directed)
    out = []
    for flips in itertools.product((False, True), repeat=len(und)):
        edges = set(pdag.directed) | {(b, a) if f else (a, b) for (a, b), f in zip(und, flips)}
        g = nx.DiGraph()
        g.add_nodes_from(range(pdag.n))
        g.add_edges_from(edges)
        if nx.is_directed_acyclic_graph(g) and unshielded(edges) <= base:
            out.append(frozenset(edges))
    return out


def brute_skeleton(oracle, labels):
    """Adjacent iff no subset of the other variables separates the pair."""
    edges = set()
    for i, j in itertools.combinations(range(len(labels)), 2):
        rest = [labels[k] for k in range(len(labels)) if k not in (i, j)]
        sep = any(
            oracle.is_independent(labels[i], labels[j], z)
            for r in range(len(rest) + 1)
            for z in itertools.combinations(rest, r)
        )
        if not sep:
            edges.add((i, j))
    return edges


def queries(n, max_z):
    for x, y in itertools.combinations(range(n), 2):
        rest = [v for v in range(n) if v not in (x, y)]
        for k in range(min(max_z, len(rest)) + 1):
            for z in itertools.combinations(rest, k):
                yield x, y, z


def brute_ptrail_connected(pdag, x, y, z) -> bool:
    """Enumerate simple p-trails and test each interior node's status directly."""
    z = set(z)
    d = nx.DiGraph()
    d.add_nodes_from(range(pdag.n))
    d.add_edges_from(pdag.directed)
    # possible descendants: forward along directed edges or either way along undirected ones
    reach = nx.DiGraph()
    reach.add_nodes_from(range(pdag.n))
    reach.add_edges_from(pdag.directed)
    reach.add_edges_from(pdag.undirected)
    reach.add_edges_from((b, a) for a, b in pdag.undirected)
    links = list(pdag.directed) + list(pdag.undirected)
    skel = nx.Graph(links)
    skel.add_nodes_from(range(pdag.n))
    for path in simple_trails(pdag.n, links, x, y):
        ok = True
        for a, v, b in zip(path, path[1:], path[2:]):
            head_a, head_b = d.has_edge(a, v), d.has_edge(b, v)
            tail = d.has_edge(v, a) or d.has_edge(v, b)
            if head_a and head_b:
                active = bool((nx.descendants(reach, v) | {v}) & z)
            elif tail or not skel.has_edge(a, b):
                active = v not in z
            else:
                active = False
            if not active:
                ok = False
                break
        if ok:
            return True
    return False


def brute_cpdag(dag):
    """(directed, undirected) of the truth's equivalence class.

    Starts from skeleton plus unshielded colliders and keeps an arrow only
    when every brute-force extension of that pattern agrees on it.
    """
    skel = nx.Graph(list(dag.edges))
    skel.add_nodes_from(range(dag.n))
    arrows = set()
    for w in range(dag.n):
        pa = sorted(p for p, c in dag.edges if c == w)
        for a, b in itertools.combinations(pa, 2):
            if not skel.has_edge(a, b):
                arrows |= {(a, w), (b, w)}

    class _P:
        n = dag.n
        directed = frozenset(arrows)
        undirected = frozenset(
            (min(a, b), max(a, b)) for a, b in dag.edges if (a, b) not in arrows
        )

    exts = brute_extensions(_P)
    common = frozenset.intersection(*exts)
    directed = frozenset(common)
    undirected = frozenset(
        (min(a, b), max(a, b)) for a, b in skel.edges if (a, b) not in common and (b, a) not in common
    )
    return directed, undirected
