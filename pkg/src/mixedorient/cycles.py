"""Shortest cycles through edges, the neighbourhood potential ``s`` and ``eta``.

A cycle is a closed path, so the shortest cycle through an edge instance
traversed ``a -> b`` is one plus the shortest ``b -> a`` distance once that
instance is removed.  Parallel instances stay available, which makes a
parallel pair a 2-cycle.
"""
from __future__ import annotations

from typing import Iterable

from .graph import UNREACHABLE, Distance, GraphError, MixedMultigraph, distance


def shortest_cycle_through_instance(g: MixedMultigraph, edge_id: int,
                                    direction: tuple[int, int] | None = None) -> Distance:
    """Length of the shortest cycle using edge ``edge_id`` traversed ``direction``.

    ``direction`` defaults to the arc's own direction, or to the listed
    endpoint order for an undirected edge.
    """
    e = g.by_id[edge_id]
    a, b = direction if direction is not None else (e.tail, e.head)
    if not e.joins(a, b):
        raise GraphError(f"edge {edge_id} does not join {a} and {b}")
    if e.directed and (a, b) != (e.tail, e.head):
        raise GraphError(f"arc {edge_id} cannot be traversed {a}->{b}")
    return 1 + distance(g, b, a, skip=edge_id)


def _senses(e):
    if e.directed:
        return [(e.tail, e.head)]
    return [(e.tail, e.head), (e.head, e.tail)]


def edge_cycle_length(g: MixedMultigraph, edge_id: int) -> Distance:
    """Shortest cycle through an instance, minimised over its allowed senses."""
    e = g.by_id[edge_id]
    return min(shortest_cycle_through_instance(g, edge_id, s) for s in _senses(e))


def l_value(g: MixedMultigraph, u: int, v: int) -> Distance:
    """Shortest cycle containing any ``u``-``v`` edge instance."""
    between = g.edges_between(u, v)
    if not between:
        raise GraphError(f"no edge joins {u} and {v}")
    return min(edge_cycle_length(g, e.id) for e in between)


def s_value(g: MixedMultigraph, u: int, xs: Iterable[int]) -> Distance:
    return sum((l_value(g, u, v) for v in xs), 0)


def eta(g: MixedMultigraph) -> Distance:
    """Smallest bound such that every edge instance lies on a cycle that short."""
    if not g.edges:
        return 0
    return max(edge_cycle_length(g, e.id) for e in g.edges)


def cycle_length_upper_bound(r: int) -> int:
    """Cap on the shortest cycle through a root edge when the root's eccentricity is ``r``."""
    return 2 * r + 1

