import itertools

import networkx as nx
import pytest
from hypothesis import given, settings

from pdagkit import fixtures
from pdagkit.errors import ExtensionLimitError, GraphError, InextensibleError, NotRemovableError
from pdagkit.extension import (
    derive_dag,
    enumerate_extensions,
    markov_equivalent,
    removable_nodes,
    remove_node,
    removal_sequence,
)
from pdagkit.graph import Dag, Pdag
from pdagkit.oracle import perfect_oracle
from pdagkit.recovery import recover
from oracles import brute_extensions
from strategies import dags, pdags


def names(g, nodes):
    return {g.labels[v] for v in nodes}


def strip(g, *nodes):
    records = []
    for v in nodes:
        g, rec = remove_node(g, v)
        records.append(rec)
    return g, records


def test_fig6_removable(fig6):
    assert names(fig6, removable_nodes(fig6)) == {"X1", "X3", "X8", "X9"}


def test_fig7_removable():
    g = fixtures.fig7_pdag()
    assert names(g, removable_nodes(g)) == {"X1", "X4", "X6"}


def test_isolated_node_is_removable():
    assert removable_nodes(Pdag(("a",))) == frozenset({0})


def test_fig6_removals_give_fig7(fig6):
    g, records = strip(fig6, "X3", "X8", "X9")
    assert g == fixtures.fig7_pdag()
    assert records[0].removed == "X3"
    assert records[0].enforced == frozenset({("X4", "X3")})
    assert records[1].enforced == frozenset()
    assert records[2].enforced == frozenset()


def test_remove_from_single_edge():
    g, rec = remove_node(Pdag.from_labels("ab", undirected=[("a", "b")]), "b")
    assert g == Pdag(("a",))
    assert rec.enforced == frozenset({("a", "b")})
    assert rec.to_json() == {"removed": "b", "enforced": [["a", "b"]]}


def test_remove_names_violated_condition(fig6):
    with pytest.raises(NotRemovableError, match="outgoing arrows"):
        remove_node(fig6, "X2")
    with pytest.raises(NotRemovableError, match="neighbour X4 of X10 is not adjacent to X5"):
        remove_node(fixtures.fig7_pdag(), "X10")


@pytest.mark.parametrize("seed", range(20))
def test_any_legal_removal_order_builds_a_member(fig6, seed):
    import random

    rnd = random.Random(seed)
    g = fig6
    directed = {(fig6.labels[a], fig6.labels[b]) for a, b in fig6.directed}
    while g.n:
        v = rnd.choice(sorted(removable_nodes(g)))
        g, rec = remove_node(g, v)
        directed |= rec.enforced
    dag = Dag.from_labels(fig6.labels, directed)
    assert nx.is_directed_acyclic_graph(nx.DiGraph(list(dag.edges)))
    assert dag in enumerate_extensions(fig6)


def test_derive_dag_fig6(fig1, fig6):
    d = derive_dag(fig6)
    assert markov_equivalent(d, fig1)
    assert fig6.directed <= d.edges


def test_derive_dag_of_dag_is_identity(fig1):
    assert derive_dag(fig1) is fig1
    assert derive_dag(fig1.to_pdag()) == fig1


def test_derive_dag_triangle():
    g = Pdag.from_labels("abc", undirected=[("a", "b"), ("b", "c"), ("a", "c")])
    d = derive_dag(g)
    assert d.skeleton_edges == g.skeleton_edges
    assert nx.is_directed_acyclic_graph(nx.DiGraph(list(d.edges)))


def test_derive_dag_inextensible():
    # undirected 4-cycle: every orientation adds a collider or a cycle
    g = Pdag.from_labels("abcd", undirected=[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
    with pytest.raises(InextensibleError):
        derive_dag(g)
    assert enumerate_extensions(g) == []


def test_fig8_extensions(fig8):
    exts = enumerate_extensions(fig8)
    assert len(exts) == 3
    orientations = {
        frozenset((fig8.labels[a], fig8.labels[b]) for a, b in d.edges - fig8.directed) for d in exts
    }
    assert orientations == {
        frozenset({("X14", "X15"), ("X14", "X13")}),
        frozenset({("X15", "X14"), ("X14", "X13")}),
        frozenset({("X13", "X14"), ("X14", "X15")}),
    }


def test_extensions_of_dag(fig1):
    assert enumerate_extensions(fig1.to_pdag()) == [fig1]
    assert enumerate_extensions(fig1) == [fig1]


def test_single_undirected_edge_two_extensions():
    assert len(enumerate_extensions(Pdag.from_labels("ab", undirected=[("a", "b")]))) == 2


def test_fig6_extensions_all_equivalent(fig1, fig6):
    exts = enumerate_extensions(fig6)
    assert len(exts) == 10
    assert {frozenset(d.edges) for d in exts} == set(brute_extensions(fig6))
    assert all(markov_equivalent(fig1, d) for d in exts)


def test_enumeration_limits():
    g = Pdag.from_labels("abc", undirected=[("a", "b"), ("b", "c"), ("a", "c")])
    with pytest.raises(ExtensionLimitError):
        enumerate_extensions(g, max_undirected=2)
    with pytest.raises(ExtensionLimitError):
        enumerate_extensions(g, cap=5)
    assert len(enumerate_extensions(g, cap=6)) == 6


def test_markov_equivalence_examples(fig1):
    assert markov_equivalent(fig1, fig1)
    assert markov_equivalent(Dag.from_labels("ab", [("a", "b")]), Dag.from_labels("ab", [("b", "a")]))
    chain = Dag.from_labels("abc", [("a", "b"), ("b", "c")])
    collider = Dag.from_labels("abc", [("a", "b"), ("c", "b")])
    assert not markov_equivalent(chain, collider)
    with pytest.raises(GraphError):
        markov_equivalent(chain, Dag(("a", "b")))


@settings(max_examples=80)
@given(pdags(max_nodes=7))
def test_enumeration_matches_brute_force(g):
    assert {frozenset(d.edges) for d in enumerate_extensions(g)} == set(brute_extensions(g))


@given(pdags(max_nodes=7))
def test_derived_dag_is_enumerated(g):
    exts = enumerate_extensions(g)
    try:
        d = derive_dag(g)
    except InextensibleError:
        assert exts == []
        return
    assert d in exts


@given(dags(max_nodes=8))
def test_pipeline_output_is_extensible(d):
    g = recover(perfect_oracle(d)).pdag
    if g.n:
        assert removable_nodes(g)
    exts = enumerate_extensions(g, max_undirected=28)
    assert d in exts
    for a, b in itertools.combinations(exts, 2):
        assert markov_equivalent(a, b)
    for x in exts:
        assert x.skeleton_edges == g.skeleton_edges
        assert g.directed <= x.edges


@given(pdags(max_nodes=6))
def test_removal_sequence_records_are_incident(g):
    try:
        dag, records = removal_sequence(g)
    except InextensibleError:
        return
    assert [r.removed for r in records] and sorted(r.removed for r in records) == sorted(g.labels)
    seen = set()
    for r in records:
        for u, v in r.enforced:
            assert v == r.removed and u not in seen
        seen.add(r.removed)
