import networkx as nx
import pytest
from hypothesis import given

from pdagkit import fixtures
from pdagkit.errors import CycleError, GraphError, UnknownNodeError
from pdagkit.graph import Dag, Pdag, SepsetTable, UGraph, adjacents, descendants, orient
from strategies import dags, pdags


def test_fig1_has_the_fourteen_drawn_edges(fig1):
    assert len(fig1.edges) == 14
    assert fig1.edge_names(fig1.edges) == set(fixtures.FIG1_EDGES)
    assert nx.is_directed_acyclic_graph(nx.DiGraph(list(fig1.edges)))


@pytest.mark.parametrize(
    "node, expected",
    [("X1", {"X2"}), ("X5", {"X6", "X7", "X8", "X9", "X10"})],
)
def test_adjacents(fig1, node, expected):
    assert fig1.names(adjacents(fig1, node)) == expected


def test_adjacents_single_node():
    g = UGraph(("a",))
    assert adjacents(g, "a") == frozenset()


def test_adjacents_unknown_node(fig1):
    with pytest.raises(UnknownNodeError):
        adjacents(fig1, "X99")
    with pytest.raises(UnknownNodeError):
        adjacents(fig1, 10)


@pytest.mark.parametrize(
    "node, expected",
    [("X10", {"X4", "X3", "X9"}), ("X8", set()), ("X1", {"X2", "X6", "X8"})],
)
def test_descendants(fig1, node, expected):
    assert fig1.names(descendants(fig1, node)) == expected


def test_descendants_unknown_node(fig1):
    with pytest.raises(UnknownNodeError):
        descendants(fig1, "nope")


def test_orient_fig3_to_fig4(fig3):
    assert orient(fig3, "X6", "X8") == fixtures.fig4_pdag()


def test_orient_moves_exactly_one_edge(fig3):
    g = orient(fig3, "X6", "X8")
    assert len(g.directed) == len(fig3.directed) + 1
    assert len(g.undirected) == len(fig3.undirected) - 1


def test_orient_rejects_cycle():
    # b -> c -> a plus a - b: orienting a -> b closes a 3-cycle
    g = Pdag.from_labels("abc", directed=[("b", "c"), ("c", "a")], undirected=[("a", "b")])
    with pytest.raises(CycleError):
        orient(g, "a", "b")
    assert orient(g, "b", "a").directed == g.directed | {(1, 0)}


def test_orient_rejects_non_undirected_pair(fig3):
    with pytest.raises(GraphError):
        orient(fig3, "X2", "X6")
    with pytest.raises(GraphError):
        orient(fig3, "X1", "X3")


def test_constructors_enforce_invariants():
    with pytest.raises(GraphError):
        Dag(("a", "a"))
    with pytest.raises(GraphError):
        Dag(("a",), frozenset({(0, 0)}))
    with pytest.raises(GraphError):
        Dag(("a", "b"), frozenset({(0, 1), (1, 0)}))
    with pytest.raises(CycleError):
        Dag(("a", "b", "c"), frozenset({(0, 1), (1, 2), (2, 0)}))
    with pytest.raises(GraphError):
        Pdag(("a", "b"), frozenset({(0, 1)}), frozenset({(0, 1)}))
    with pytest.raises(CycleError):
        Pdag.from_labels("abc", [("a", "b"), ("b", "c"), ("c", "a")])


def test_undirected_pairs_are_canonical():
    g = UGraph(("a", "b"), frozenset({(1, 0)}))
    assert g.edges == frozenset({(0, 1)})
    assert Pdag(("a", "b"), undirected=frozenset({(1, 0)})).undirected == frozenset({(0, 1)})


def test_remove_reindexes():
    g = Pdag.from_labels("abc", [("a", "c")], [("b", "c")])
    h = g.remove("b")
    assert h.labels == ("a", "c")
    assert h.directed == frozenset({(0, 1)})
    assert not h.undirected


def test_sepset_table_rejects_endpoint_in_set():
    with pytest.raises(GraphError):
        SepsetTable(("a", "b", "c"), {(0, 1): frozenset({0})})
    t = SepsetTable(("a", "b", "c"), {(2, 0): frozenset({1})})
    assert t["a", "c"] == frozenset({1})
    assert ("c", "a") in t


@given(dags())
def test_descendants_match_networkx(d):
    g = nx.DiGraph()
    g.add_nodes_from(range(d.n))
    g.add_edges_from(d.edges)
    for v in range(d.n):
        assert d.descendants(v) == nx.descendants(g, v)
        assert d.ancestors(v) == nx.ancestors(g, v)


@given(pdags())
def test_orient_conserves_edge_count(g):
    for a, b in g.sorted_undirected():
        for t, h in ((a, b), (b, a)):
            try:
                h2 = g.orient(t, h)
            except CycleError:
                continue
            assert len(h2.directed) + len(h2.undirected) == len(g.directed) + len(g.undirected)
            assert not {frozenset(e) for e in h2.directed} & {frozenset(e) for e in h2.undirected}


@given(dags())
def test_topological_order_respects_edges(d):
    pos = {v: i for i, v in enumerate(d.topological_order())}
    assert all(pos[a] < pos[b] for a, b in d.edges)
