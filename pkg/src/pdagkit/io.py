"""Graph JSON, DOT export and separation-query parsing."""

from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Union

from pdagkit.errors import GraphError
from pdagkit.graph import Dag, Pdag, UGraph
from pdagkit.separation import SeparationQuery

AnyGraph = Union[Dag, UGraph, Pdag]


class ParseError(ValueError):
    pass


def graph_to_json(g: AnyGraph) -> dict:
    if isinstance(g, Dag):
        directed, undirected = g.sorted_edges(), []
    elif isinstance(g, UGraph):
        directed, undirected = [], g.sorted_edges()
    else:
        directed, undirected = g.sorted_directed(), g.sorted_undirected()
    lab = g.labels
    return {
        "nodes": list(lab),
        "directed": [[lab[a], lab[b]] for a, b in directed],
        "undirected": [[lab[a], lab[b]] for a, b in undirected],
    }


def graph_from_json(obj: dict, kind: str = "pdag") -> AnyGraph:
    """Parse a graph object as ``kind``: "pdag", "dag" or "ugraph".

    A dag must have no undirected edges and a ugraph no directed ones.
    """
    if not isinstance(obj, dict) or "nodes" not in obj:
        raise ParseError("graph JSON must be an object with a 'nodes' list")
    try:
        nodes = [str(v) for v in obj["nodes"]]
        directed = [tuple(map(str, e)) for e in obj.get("directed", [])]
        undirected = [tuple(map(str, e)) for e in obj.get("undirected", [])]
    except TypeError as exc:
        raise ParseError(f"malformed graph JSON: {exc}") from None
    for e in directed + undirected:
        if len(e) != 2:
            raise ParseError(f"edge {list(e)} must have exactly two endpoints")
    try:
        g = Pdag.from_labels(nodes, directed, undirected)
    except (GraphError, KeyError) as exc:
        raise ParseError(f"invalid graph: {exc}") from None
    if kind == "pdag":
        return g
    if kind == "dag":
        if undirected:
            raise ParseError("expected a dag but the graph has undirected edges")
        return g.to_dag()
    if kind == "ugraph":
        if directed:
            raise ParseError("expected an undirected graph but the graph has directed edges")
        return g.skeleton()
    raise ValueError(f"unknown graph kind {kind!r}")


def dumps_graph(g: AnyGraph) -> str:
    return json.dumps(graph_to_json(g), indent=2) + "\n"


def loads_graph(text: str, kind: str = "pdag") -> AnyGraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return graph_from_json(obj, kind)


def read_graph(path: Union[str, Path], kind: str = "pdag") -> AnyGraph:
    return loads_graph(Path(path).read_text(), kind)


def write_graph(g: AnyGraph, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_graph(g))


def as_pdag(g: AnyGraph) -> Pdag:
    return g if isinstance(g, Pdag) else g.to_pdag()


_PLAIN_ID = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _dot_id(label: str) -> str:
    if _PLAIN_ID.match(label):
        return label
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: AnyGraph, name: str = "G") -> str:
    """DOT text with nodes and edges in index order; byte-stable for a given graph."""
    d = graph_to_json(g)
    lines = [f"digraph {_dot_id(name)} {{"]
    lines += [f"  {_dot_id(v)};" for v in d["nodes"]]
    lines += [f"  {_dot_id(a)} -> {_dot_id(b)};" for a, b in d["directed"]]
    lines += [f"  {_dot_id(a)} -> {_dot_id(b)} [dir=none];" for a, b in d["undirected"]]
    lines.append("}")
    return "\n".join(lines) + "\n"


_QUERY = re.compile(r"^\s*(\S+)\s*(?:⟂|_\|\|_)\s*(\S+)\s*(?:\|\s*(.*?))?\s*$")


def parse_query(text: str) -> SeparationQuery:
    """Parse ``x ⟂ y | z1,z2`` or its ASCII form ``x _||_ y | z1,z2``."""
    m = _QUERY.match(text)
    if not m:
        raise ParseError(f"cannot parse query {text!r}; expected 'x _||_ y | z1,z2'")
    x, y, rest = m.groups()
    z = [t.strip() for t in (rest or "").split(",") if t.strip()]
    return SeparationQuery(x, y, frozenset(z))
