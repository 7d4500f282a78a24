"""Random ground truths and linear-Gaussian samples.

All randomness comes from ``numpy.random.Generator(PCG64(seed))``; the
generator name is recorded in :data:`RNG_NAME` and the draw order below is
part of the contract, so fixed seeds reproduce bit-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from pdagkit.graph import Dag, Edge
from pdagkit.oracle import Dataset

RNG_NAME = "numpy.random.PCG64"
WEIGHT_RANGE = (0.5, 1.5)


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def default_labels(n: int) -> tuple[str, ...]:
    return tuple(f"X{i}" for i in range(1, n + 1))


def random_dag(n: int, p: float, seed: int, labels: Optional[Sequence[str]] = None) -> Dag:
    """Random permutation as topological order, each forward pair kept with prob ``p``."""
    if n < 1:
        raise ValueError("random_dag needs n >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    rng = rng_for(seed)
    order = rng.permutation(n)
    draws = rng.random(n * (n - 1) // 2)
    edges = set()
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            if draws[k] < p:
                edges.add((int(order[i]), int(order[j])))
            k += 1
    return Dag(tuple(labels) if labels else default_labels(n), frozenset(edges))


@dataclass(frozen=True)
class LinearModel:
    """``X_v = sum(weight[u, v] * X_u for parents u) + noise_sd[v] * N(0, 1)``."""

    dag: Dag
    weights: Mapping[Edge, float]
    noise_sd: Sequence[float]

    def __post_init__(self) -> None:
        if set(self.weights) != set(self.dag.edges):
            raise ValueError("weights must cover exactly the dag's edges")
        if len(self.noise_sd) != self.dag.n or any(s <= 0 for s in self.noise_sd):
            raise ValueError("need one positive noise scale per node")

    def covariance(self) -> np.ndarray:
        """Implied covariance ``(I - B)^-1 D (I - B)^-T`` with ``B[v, u]`` the weight u->v."""
        n = self.dag.n
        b = np.zeros((n, n))
        for (u, v), w in self.weights.items():
            b[v, u] = w
        inv = np.linalg.inv(np.eye(n) - b)
        return inv @ np.diag(np.square(self.noise_sd)) @ inv.T


def unit_model(dag: Dag) -> LinearModel:
    return LinearModel(dag, {e: 1.0 for e in dag.edges}, (1.0,) * dag.n)


def random_model(dag: Dag, seed: int) -> LinearModel:
    """Weights uniform on +-[0.5, 1.5] in sorted edge order, unit noise."""
    rng = rng_for(seed)
    edges = dag.sorted_edges()
    mags = rng.uniform(*WEIGHT_RANGE, size=len(edges))
    signs = rng.choice((-1.0, 1.0), size=len(edges))
    return LinearModel(dag, {e: float(m * s) for e, m, s in zip(edges, mags, signs)}, (1.0,) * dag.n)


def sample(model: LinearModel, n_rows: int, seed: int) -> Dataset:
    """Draw ``n_rows`` rows; noise is one ``(n_rows, n)`` standard-normal block."""
    if n_rows < 1:
        raise ValueError("n_rows must be >= 1")
    g = model.dag
    rng = rng_for(seed)
    noise = rng.standard_normal((n_rows, g.n))
    x = np.zeros((n_rows, g.n))
    for v in g.topological_order():
        col = noise[:, v] * model.noise_sd[v]
        for u in sorted(g.parents(v)):
            col = col + model.weights[(u, v)] * x[:, u]
        x[:, v] = col
    return Dataset(g.labels, x)
