"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--nodes 10 30 60] [--queries 2000]

Each row times the same query batch through both backends on one random
graph and checks that the answers agree.
"""

from __future__ import annotations

import argparse
import random
import time

from pdagkit import _kernels_py as py
from pdagkit.graph import Pdag
from pdagkit.separation import possible_descendant_masks
from pdagkit.synthesis import random_dag

try:
    from pdagkit import _ckernels as c
except ImportError:
    c = None


def _batch(n: int, count: int, seed: int) -> list[tuple[int, int, int]]:
    rnd = random.Random(seed)
    out = []
    for _ in range(count):
        x, y = rnd.sample(range(n), 2)
        z = 0
        for v in rnd.sample(range(n), min(n, 4)):
            if v not in (x, y):
                z |= 1 << v
        out.append((x, y, z))
    return out


def _time(fn, batch) -> tuple[float, list]:
    t0 = time.perf_counter()
    answers = [fn(*q) for q in batch]
    return time.perf_counter() - t0, answers


def bench(n: int, p: float, queries: int, seed: int) -> list[tuple[str, int, float, float]]:
    d = random_dag(n, p, seed)
    g = d.to_pdag()
    # turn roughly a third of the edges undirected for the p-trail kernel
    edges = d.sorted_edges()
    und = frozenset(e for i, e in enumerate(edges) if i % 3 == 0)
    pg = Pdag(d.labels, frozenset(edges) - und, und)
    batch = _batch(n, queries, seed)
    pdesc = possible_descendant_masks(pg)

    def collider_ok(z):
        return sum(1 << v for v in range(n) if pdesc[v] & z)

    kernels = {
        "closure": (
            lambda m, x, y, z: m.closure(g.children_masks, 1 << x),
            batch,
        ),
        "dconnected": (
            lambda m, x, y, z: m.dconnected(d.parents_masks, d.children_masks, x, y, z),
            batch,
        ),
        "ptrail": (
            lambda m, x, y, z, ok: m.ptrail_connected(
                pg.children_masks, pg.parents_masks, pg.undirected_masks, x, y, z, ok
            ),
            [(x, y, z, collider_ok(z)) for x, y, z in batch],
        ),
    }
    rows = []
    for name, (fn, args) in kernels.items():
        tp, ap = _time(lambda *q: fn(py, *q), args)
        if c is None:
            rows.append((name, n, tp, float("nan")))
            continue
        tc, ac = _time(lambda *q: fn(c, *q), args)
        if ap != ac:
            raise SystemExit(f"{name}: backends disagree on n={n}")
        rows.append((name, n, tp, tc))
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", type=int, nargs="+", default=[10, 30, 60])
    ap.add_argument("--prob", type=float, default=0.2)
    ap.add_argument("--queries", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    if c is None:
        print("compiled kernels not built; showing the Python backend only")
    print(f"{'kernel':<12}{'n':>4}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for n in args.nodes:
        for name, size, tp, tc in bench(n, args.prob, args.queries, args.seed):
            speed = tp / tc if tc == tc and tc > 0 else float("nan")
            print(f"{name:<12}{size:>4}{tp * 1e3:>12.1f}{tc * 1e3:>12.1f}{speed:>9.1f}x")


if __name__ == "__main__":
    main()
