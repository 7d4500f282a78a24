"""``pdagkit`` command line.

Every failure prints one diagnostic line to stderr whose prefix names the
failure class (``IO:``, ``PARSE:``, ``USAGE:``, ``GRAPH:``, ``ORACLE:``,
``CONFLICT:``, ``INEXTENSIBLE:``, ``LIMIT:``) and exits nonzero.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from pdagkit import io, synthesis
from pdagkit.errors import (
    ColliderConflictError,
    ExtensionLimitError,
    GraphError,
    InextensibleError,
    OracleError,
    QueryError,
)
from pdagkit.extension import DEFAULT_CAP, DEFAULT_MAX_UNDIRECTED, enumerate_extensions, removal_sequence
from pdagkit.fixtures import FIXTURES
from pdagkit.oracle import DEFAULT_ALPHA, CountingOracle, fisher_z_oracle, perfect_oracle, read_dataset, write_dataset
from pdagkit.recovery import find_skeleton, recover
from pdagkit.separation import active_ptrail_exists, active_trail_exists

COMMANDS = ("skeleton", "recover", "dsep", "extend", "enumerate", "simulate", "fixture")

EXIT_CODES = {
    "USAGE": 2,
    "IO": 3,
    "PARSE": 4,
    "GRAPH": 5,
    "ORACLE": 6,
    "CONFLICT": 7,
    "INEXTENSIBLE": 8,
    "LIMIT": 9,
}


class CliError(Exception):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


@dataclass
class RunConfig:
    command: str
    oracle: str = "dsep"
    truth: Optional[Path] = None
    data: Optional[Path] = None
    graph: Optional[Path] = None
    alpha: float = DEFAULT_ALPHA
    max_cond: Optional[int] = None
    seed: int = 0
    format: str = "json"
    out: Optional[Path] = None
    report: Optional[Path] = None
    queries: Sequence[str] = ()
    query_file: Optional[Path] = None
    cap: int = DEFAULT_CAP
    max_undirected: int = DEFAULT_MAX_UNDIRECTED
    nodes: int = 6
    prob: float = 0.4
    rows: int = 1000
    weights: str = "random"
    data_out: Optional[Path] = None
    truth_out: Optional[Path] = None
    name: Optional[str] = None
    workers: int = 1

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise CliError("USAGE", f"unknown command {self.command!r}")
        if self.command in ("skeleton", "recover"):
            if self.oracle == "fisherz" and self.data is None:
                raise CliError("USAGE", "--oracle fisherz needs --data")
            if self.oracle == "dsep" and self.truth is None:
                raise CliError("USAGE", "--oracle dsep needs --truth")
        if self.command == "dsep" and self.truth is None:
            raise CliError("USAGE", "dsep needs --truth")
        if self.command == "dsep" and not self.queries and self.query_file is None:
            raise CliError("USAGE", "dsep needs --query or --queries")
        if self.command in ("extend", "enumerate") and self.graph is None:
            raise CliError("USAGE", f"{self.command} needs --graph")
        if self.command == "simulate" and (self.data_out is None or self.truth_out is None):
            raise CliError("USAGE", "simulate needs --data-out and --truth-out")


def _read_text(path: Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError("IO", f"cannot read {path}: {exc.strerror or exc}") from None


def _load_graph(path: Path, kind: str = "pdag"):
    try:
        return io.loads_graph(_read_text(path), kind)
    except io.ParseError as exc:
        raise CliError("PARSE", f"{path}: {exc}") from None


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out is None:
        sys.stdout.write(text)
        return
    try:
        Path(cfg.out).write_text(text)
    except OSError as exc:
        raise CliError("IO", f"cannot write {cfg.out}: {exc.strerror or exc}") from None


def _write(path: Path, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise CliError("IO", f"cannot write {path}: {exc.strerror or exc}") from None


def _oracle(cfg: RunConfig):
    if cfg.oracle == "dsep":
        return perfect_oracle(_load_graph(cfg.truth, "dag"))
    if not Path(cfg.data).is_file():
        raise CliError("IO", f"cannot read {cfg.data}: no such file")
    try:
        data = read_dataset(cfg.data)
    except OSError as exc:
        raise CliError("IO", f"cannot read {cfg.data}: {exc.strerror or exc}") from None
    except ValueError as exc:
        raise CliError("PARSE", str(exc)) from None
    return fisher_z_oracle(data, cfg.alpha)


def _render(cfg: RunConfig, g) -> str:
    return io.to_dot(g) if cfg.format == "dot" else io.dumps_graph(g)


def _cmd_skeleton(cfg: RunConfig) -> None:
    oracle = CountingOracle(_oracle(cfg))
    skel, sepsets = find_skeleton(oracle, max_cond=cfg.max_cond, workers=cfg.workers)
    report = {"sepsets": sepsets.to_json(), "stats": oracle.stats.to_json()}
    if cfg.format == "json" and cfg.report is None:
        _emit(cfg, json.dumps({"graph": io.graph_to_json(skel), **report}, indent=2) + "\n")
        return
    _emit(cfg, _render(cfg, skel))
    if cfg.report is not None:
        _write(cfg.report, json.dumps(report, indent=2) + "\n")


def _cmd_recover(cfg: RunConfig) -> None:
    res = recover(_oracle(cfg), max_cond=cfg.max_cond, workers=cfg.workers)
    report = {
        "sepsets": res.sepsets.to_json(),
        "trace": res.trace_lines(),
        "stats": res.stats.to_json(),
        "warnings": res.warnings,
    }
    if cfg.format == "json" and cfg.report is None:
        _emit(cfg, json.dumps({"graph": io.graph_to_json(res.pdag), **report}, indent=2) + "\n")
        return
    _emit(cfg, _render(cfg, res.pdag))
    if cfg.report is not None:
        _write(cfg.report, json.dumps(report, indent=2) + "\n")
    else:
        for line in res.trace_lines():
            print(line, file=sys.stderr)


def _cmd_dsep(cfg: RunConfig) -> None:
    g = _load_graph(cfg.truth)
    texts = list(cfg.queries)
    if cfg.query_file is not None:
        texts += [t for t in _read_text(cfg.query_file).splitlines() if t.strip()]
    engine = active_trail_exists if g.is_fully_directed else active_ptrail_exists
    if g.is_fully_directed:
        g = g.to_dag()
    out = []
    for t in texts:
        try:
            q = io.parse_query(t)
        except io.ParseError as exc:
            raise CliError("PARSE", str(exc)) from None
        out.append("connected" if engine(g, q) else "separated")
    _emit(cfg, "".join(line + "\n" for line in out))


def _cmd_extend(cfg: RunConfig) -> None:
    g = _load_graph(cfg.graph)
    dag, records = removal_sequence(g)
    if cfg.format == "dot":
        _emit(cfg, io.to_dot(dag))
        return
    payload = {"removals": [r.to_json() for r in records], "dag": io.graph_to_json(dag)}
    _emit(cfg, json.dumps(payload, indent=2) + "\n")


def _cmd_enumerate(cfg: RunConfig) -> None:
    g = _load_graph(cfg.graph)
    dags = enumerate_extensions(g, cap=cfg.cap, max_undirected=cfg.max_undirected)
    if cfg.format == "dot":
        _emit(cfg, "".join(io.to_dot(d, f"extension_{i}") for i, d in enumerate(dags)))
        return
    _emit(cfg, json.dumps([io.graph_to_json(d) for d in dags], indent=2) + "\n")


def _cmd_simulate(cfg: RunConfig) -> None:
    if cfg.truth is not None:
        dag = _load_graph(cfg.truth, "dag")
    else:
        dag = synthesis.random_dag(cfg.nodes, cfg.prob, cfg.seed)
    if cfg.weights == "unit":
        model = synthesis.unit_model(dag)
    else:
        model = synthesis.random_model(dag, cfg.seed + 1)
    data = synthesis.sample(model, cfg.rows, cfg.seed + 2)
    try:
        write_dataset(data, cfg.data_out)
    except OSError as exc:
        raise CliError("IO", f"cannot write {cfg.data_out}: {exc.strerror or exc}") from None
    _write(cfg.truth_out, io.dumps_graph(dag))


def _cmd_fixture(cfg: RunConfig) -> None:
    if cfg.name not in FIXTURES:
        raise CliError("USAGE", f"unknown fixture {cfg.name!r}; choose from {', '.join(FIXTURES)}")
    _emit(cfg, _render(cfg, FIXTURES[cfg.name]()))


_HANDLERS = {
    "skeleton": _cmd_skeleton,
    "recover": _cmd_recover,
    "dsep": _cmd_dsep,
    "extend": _cmd_extend,
    "enumerate": _cmd_enumerate,
    "simulate": _cmd_simulate,
    "fixture": _cmd_fixture,
}


def run(cfg: RunConfig) -> int:
    """Execute one command; returns the process exit status."""
    try:
        cfg.validate()
        _HANDLERS[cfg.command](cfg)
    except CliError as exc:
        kind, msg = exc.kind, str(exc)
    except ColliderConflictError as exc:
        kind, msg = "CONFLICT", str(exc)
    except InextensibleError as exc:
        kind, msg = "INEXTENSIBLE", str(exc)
    except ExtensionLimitError as exc:
        kind, msg = "LIMIT", str(exc)
    except (OracleError, QueryError) as exc:
        kind, msg = "ORACLE", str(exc)
    except GraphError as exc:
        kind, msg = "GRAPH", str(exc)
    except ValueError as exc:
        kind, msg = "USAGE", str(exc)
    else:
        return 0
    print(f"{kind}: {msg}", file=sys.stderr)
    return EXIT_CODES[kind]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pdagkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def output(p, formats=True):
        if formats:
            p.add_argument("--format", choices=("json", "dot"), default="json")
        p.add_argument("--out", type=Path, help="output file (default: stdout)")

    def oracle(p):
        p.add_argument("--oracle", choices=("dsep", "fisherz"), default="dsep")
        p.add_argument("--truth", type=Path, help="ground-truth dag JSON (dsep oracle)")
        p.add_argument("--data", type=Path, help="dataset CSV (fisherz oracle)")
        p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
        p.add_argument("--max-cond", type=int, default=None)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--report", type=Path, help="write sepsets, trace and stats here as JSON")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("skeleton", help="recover the undirected skeleton and sepsets")
    oracle(p)
    output(p)
    p = sub.add_parser("recover", help="run the full recovery pipeline")
    oracle(p)
    output(p)

    p = sub.add_parser("dsep", help="answer separation queries on a graph")
    p.add_argument("--truth", type=Path, required=True, help="dag or pdag JSON")
    p.add_argument("--query", dest="queries", action="append", default=[], help="'x _||_ y | z1,z2'")
    p.add_argument("--queries", dest="query_file", type=Path, help="file with one query per line")
    output(p, formats=False)

    for name, helptext in (("extend", "derive one consistent extension"), ("enumerate", "list all consistent extensions")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--graph", type=Path, required=True)
        if name == "enumerate":
            p.add_argument("--cap", type=int, default=DEFAULT_CAP)
            p.add_argument("--max-undirected", type=int, default=DEFAULT_MAX_UNDIRECTED)
        output(p)

    p = sub.add_parser("simulate", help="sample linear-Gaussian data from a random or given dag")
    p.add_argument("--truth", type=Path, help="simulate from this dag instead of a random one")
    p.add_argument("--nodes", type=int, default=6)
    p.add_argument("--prob", type=float, default=0.4)
    p.add_argument("--rows", type=int, default=1000)
    p.add_argument("--weights", choices=("random", "unit"), default="random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--data-out", type=Path, required=True)
    p.add_argument("--truth-out", type=Path, required=True)

    p = sub.add_parser("fixture", help="print one of the built-in example graphs")
    p.add_argument("name", choices=sorted(FIXTURES))
    output(p)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__})
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
