from hypothesis import strategies as st

from pdagkit.graph import Dag, Pdag


@st.composite
def dags(draw, min_nodes=1, max_nodes=7):
    n = draw(st.integers(min_nodes, max_nodes))
    order = draw(st.permutations(range(n)))
    pairs = [(order[i], order[j]) for i in range(n) for j in range(i + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Dag(tuple(f"V{i}" for i in range(n)), frozenset(p for p, k in zip(pairs, keep) if k))


@st.composite
def pdags(draw, min_nodes=1, max_nodes=7):
    """Acyclic directed part plus some of its edges turned undirected."""
    d = draw(dags(min_nodes, max_nodes))
    edges = d.sorted_edges()
    flags = draw(st.lists(st.booleans(), min_size=len(edges), max_size=len(edges)))
    return Pdag(
        d.labels,
        frozenset(e for e, f in zip(edges, flags) if not f),
        frozenset(e for e, f in zip(edges, flags) if f),
    )
