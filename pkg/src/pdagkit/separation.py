"""Trail semantics on DAGs and on partially directed graphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from pdagkit import kernels
from pdagkit.errors import InextensibleError, QueryError
from pdagkit.extension import enumerate_extensions
from pdagkit.graph import Dag, NodeRef, Pdag, set_to_mask


@dataclass(frozen=True)
class SeparationQuery:
    """``x`` and ``y`` given the conditioning (blocked) set ``z``, by label or index."""

    x: NodeRef
    y: NodeRef
    z: frozenset = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "z", frozenset(self.z))

    def resolve(self, g: Union[Dag, Pdag]) -> tuple[int, int, int]:
        """Indices of x and y plus the bitmask of z, validated against ``g``."""
        x, y = g.index(self.x), g.index(self.y)
        z = g.indices(self.z)
        if x == y:
            raise QueryError(f"query endpoints coincide ({g.labels[x]})")
        if x in z or y in z:
            raise QueryError("query endpoints may not be in the conditioning set")
        return x, y, set_to_mask(z)

    def format(self, g: Union[Dag, Pdag, None] = None) -> str:
        lab = (lambda v: g.label(v)) if g is not None else str
        zs = ",".join(sorted(lab(v) for v in self.z))
        return f"{lab(self.x)} _||_ {lab(self.y)} | {zs}"


def _query(x, y=None, z: Iterable[NodeRef] = ()) -> SeparationQuery:
    if isinstance(x, SeparationQuery):
        return x
    return SeparationQuery(x, y, frozenset(z))


def active_trail_exists(g: Dag, x, y=None, z: Iterable[NodeRef] = ()) -> bool:
    """Whether some trail between x and y is active given z.

    Either pass a :class:`SeparationQuery` as ``x`` or the three parts.
    """
    xi, yi, zm = _query(x, y, z).resolve(g)
    return kernels.dconnected(g.parents_masks, g.children_masks, xi, yi, zm)


def d_separated(g: Dag, x, y=None, z: Iterable[NodeRef] = ()) -> bool:
    return not active_trail_exists(g, x, y, z)


def _as_pdag(g: Union[Dag, Pdag]) -> Pdag:
    return g.to_pdag() if isinstance(g, Dag) else g


def possible_descendant_masks(g: Pdag) -> tuple[int, ...]:
    """Per node: itself plus everything reachable along forward or undirected edges."""
    succ = tuple(c | u for c, u in zip(g.children_masks, g.undirected_masks))
    return tuple(kernels.closure(succ, 1 << v) for v in range(g.n))


def active_ptrail_exists(g: Union[Dag, Pdag], x, y=None, z: Iterable[NodeRef] = ()) -> bool:
    """Whether some simple definite-status p-trail between x and y is active given z.

    A node entered and left through arrowheads (a definite collider) is
    active when it or one of its possible descendants is in z. A node with a
    tail on either side, or with an undirected edge and nonadjacent trail
    neighbours, is a definite non-collider and is active when outside z.
    Any other interior node could end up either way in an extension, so
    trails through it are not considered.
    """
    g = _as_pdag(g)
    xi, yi, zm = _query(x, y, z).resolve(g)
    ok = set_to_mask(v for v, m in enumerate(possible_descendant_masks(g)) if m & zm)
    return kernels.ptrail_connected(
        g.children_masks, g.parents_masks, g.undirected_masks, xi, yi, zm, ok
    )


def connected_in_every_extension(
    g: Union[Dag, Pdag], x, y=None, z: Iterable[NodeRef] = (), **enum_kwargs
) -> bool:
    """Exhaustive check that every consistent extension has an active trail.

    Raises :class:`~pdagkit.errors.InextensibleError` when ``g`` has no
    consistent extension. Extra keyword arguments go to
    :func:`pdagkit.extension.enumerate_extensions`.
    """
    g = _as_pdag(g)
    q = _query(x, y, z)
    q.resolve(g)
    dags = enumerate_extensions(g, **enum_kwargs)
    if not dags:
        raise InextensibleError("graph admits no consistent extension")
    return all(active_trail_exists(d, q) for d in dags)
