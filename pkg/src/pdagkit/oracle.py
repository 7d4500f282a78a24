"""Conditional-independence oracles.

Oracles speak in variable labels. :class:`PerfectOracle` answers from
d-separation in a known DAG, :class:`FisherZOracle` from partial
correlations in a :class:`Dataset`, and :class:`CountingOracle` wraps either
with a symmetric cache and query statistics.
"""

from __future__ import annotations

import csv
import math
import threading
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from statistics import NormalDist
from typing import Iterable, Protocol, Sequence, Union, runtime_checkable

import numpy as np

from pdagkit import kernels
from pdagkit.errors import InsufficientSamplesError, QueryError, SingularMatrixError
from pdagkit.graph import Dag, set_to_mask

DEFAULT_ALPHA = 0.01
# reciprocal condition number below which a correlation submatrix counts as singular
_RCOND_MIN = 1e-10


@runtime_checkable
class IndependenceOracle(Protocol):
    variables: tuple[str, ...]

    def is_independent(self, x: str, y: str, z: Iterable[str] = ()) -> bool: ...


def _check_query(variables: Sequence[str], x: str, y: str, z: tuple[str, ...]) -> None:
    known = set(variables)
    for v in (x, y, *z):
        if v not in known:
            raise QueryError(f"unknown variable {v!r}")
    if x == y:
        raise QueryError(f"query endpoints coincide ({x})")
    if x in z or y in z:
        raise QueryError("query endpoints may not be in the conditioning set")


class PerfectOracle:
    """Answers ``x _||_ y | z`` exactly by d-separation in ``truth``."""

    def __init__(self, truth: Dag):
        self.truth = truth
        self.variables = truth.labels

    def is_independent(self, x: str, y: str, z: Iterable[str] = ()) -> bool:
        z = tuple(z)
        _check_query(self.variables, x, y, z)
        g = self.truth
        return not kernels.dconnected(
            g.parents_masks, g.children_masks, g.index(x), g.index(y), set_to_mask(g.indices(z))
        )


def perfect_oracle(truth: Dag) -> PerfectOracle:
    return PerfectOracle(truth)


@dataclass(frozen=True)
class Dataset:
    """Real-valued samples, one column per variable."""

    columns: tuple[str, ...]
    rows: np.ndarray

    def __post_init__(self) -> None:
        rows = np.asarray(self.rows, dtype=float)
        object.__setattr__(self, "columns", tuple(self.columns))
        object.__setattr__(self, "rows", rows)
        if rows.ndim != 2 or rows.shape[1] != len(self.columns):
            raise ValueError(
                f"rows must be an n x {len(self.columns)} matrix, got shape {rows.shape}"
            )
        if rows.shape[0] < 1:
            raise ValueError("a dataset needs at least one row")
        if len(set(self.columns)) != len(self.columns):
            raise ValueError("column labels must be unique")

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    def column(self, label: str) -> np.ndarray:
        return self.rows[:, self.columns.index(label)]


def read_dataset(path: Union[str, Path]) -> Dataset:
    """Load a CSV whose first row holds the variable labels."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file") from None
        body = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ValueError(f"{path}:{lineno}: expected {len(header)} fields, got {len(row)}")
            try:
                body.append([float(v) for v in row])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    return Dataset(tuple(h.strip() for h in header), np.array(body, dtype=float).reshape(-1, len(header)))


def write_dataset(data: Dataset, path: Union[str, Path]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(data.columns)
        for row in data.rows:
            w.writerow([repr(float(v)) for v in row])


class FisherZOracle:
    """Fisher-z test on the partial correlation of x and y given z.

    Independence is accepted when ``|sqrt(n - |z| - 3) * atanh(r)|`` does not
    exceed the two-sided standard normal quantile for ``alpha``.
    """

    def __init__(self, data: Dataset, alpha: float = DEFAULT_ALPHA):
        if not 0 < alpha < 1:
            raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
        self.data = data
        self.alpha = alpha
        self.variables = data.columns
        self.threshold = NormalDist().inv_cdf(1 - alpha / 2)
        self._index = {c: i for i, c in enumerate(data.columns)}
        with np.errstate(invalid="ignore", divide="ignore"):
            self._corr = np.corrcoef(data.rows, rowvar=False).reshape(len(data.columns), -1)

    def partial_correlation(self, x: str, y: str, z: Iterable[str] = ()) -> float:
        z = tuple(z)
        _check_query(self.variables, x, y, z)
        idx = [self._index[v] for v in (x, y, *z)]
        sub = self._corr[np.ix_(idx, idx)]
        if not np.all(np.isfinite(sub)):
            raise SingularMatrixError(f"constant column among {', '.join((x, y, *z))}")
        if not z:
            return float(np.clip(sub[0, 1], -1.0, 1.0))
        if 1.0 / np.linalg.cond(sub) < _RCOND_MIN:
            raise SingularMatrixError(
                f"correlation matrix of {', '.join((x, y, *z))} is singular"
            )
        prec = np.linalg.inv(sub)
        r = -prec[0, 1] / math.sqrt(prec[0, 0] * prec[1, 1])
        return float(np.clip(r, -1.0, 1.0))

    def statistic(self, x: str, y: str, z: Iterable[str] = ()) -> float:
        z = tuple(z)
        dof = self.data.n - len(z) - 3
        if dof <= 0:
            raise InsufficientSamplesError(
                f"{self.data.n} rows is too few for a conditioning set of size {len(z)}"
            )
        r = self.partial_correlation(x, y, z)
        if abs(r) >= 1.0:
            return math.copysign(math.inf, r)
        return math.sqrt(dof) * math.atanh(r)

    def is_independent(self, x: str, y: str, z: Iterable[str] = ()) -> bool:
        return abs(self.statistic(x, y, z)) <= self.threshold


def fisher_z_oracle(data: Dataset, alpha: float = DEFAULT_ALPHA) -> FisherZOracle:
    return FisherZOracle(data, alpha)


@dataclass
class OracleStats:
    queries_total: int = 0
    queries_by_conditioning_size: Counter = field(default_factory=Counter)

    def to_json(self) -> dict:
        return {
            "queries_total": self.queries_total,
            "queries_by_conditioning_size": {
                str(k): v for k, v in sorted(self.queries_by_conditioning_size.items())
            },
        }


class CountingOracle:
    """Caching, counting wrapper; ``(x, y, z)`` and ``(y, x, z)`` share one entry.

    Each distinct key reaches the inner oracle once and is counted once.
    Safe to share across threads.
    """

    def __init__(self, inner: IndependenceOracle):
        self.inner = inner
        self.variables = inner.variables
        self.stats = OracleStats()
        self._cache: dict[tuple, bool] = {}
        self._lock = threading.Lock()

    def is_independent(self, x: str, y: str, z: Iterable[str] = ()) -> bool:
        z = tuple(sorted(set(z)))
        key = (min(x, y), max(x, y), z)
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        answer = self.inner.is_independent(key[0], key[1], z)
        with self._lock:
            if key not in self._cache:
                self._cache[key] = answer
                self.stats.queries_total += 1
                self.stats.queries_by_conditioning_size[len(z)] += 1
        return answer


def counting(inner: IndependenceOracle) -> CountingOracle:
    """Wrap ``inner``; statistics live on the returned oracle's ``stats``."""
    return CountingOracle(inner)

