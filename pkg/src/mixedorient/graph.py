"""Mixed multigraphs: representation, text I/O and metric primitives.

Distances are edge counts.  An unreachable target has distance ``math.inf``
(``UNREACHABLE``), which orders above every finite distance and absorbs
addition, so ``max``/``min``/``sum`` over distances need no special cases.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Mapping

UNREACHABLE = math.inf

Distance = float  # int-valued, or UNREACHABLE


class GraphError(ValueError):
    """Raised for malformed graphs, plans and graph files."""


@dataclass(frozen=True)
class EdgeRecord:
    """One edge instance.

    For an arc, ``tail -> head`` is its direction.  For an undirected edge
    the two endpoints are stored in listing order and carry no direction.
    """

    id: int
    tail: int
    head: int
    directed: bool

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.tail, self.head

    def other(self, v: int) -> int:
        return self.head if v == self.tail else self.tail

    def joins(self, a: int, b: int) -> bool:
        return {self.tail, self.head} == {a, b}

    def oriented(self, tail: int, head: int) -> "EdgeRecord":
        if not self.joins(tail, head):
            raise GraphError(f"edge {self.id} does not join {tail} and {head}")
        return EdgeRecord(self.id, tail, head, True)

    def reversed(self) -> "EdgeRecord":
        if not self.directed:
            return self
        return EdgeRecord(self.id, self.head, self.tail, True)


@dataclass(frozen=True)
class MixedMultigraph:
    n: int
    edges: tuple[EdgeRecord, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        seen = set()
        for e in self.edges:
            if e.id in seen:
                raise GraphError(f"duplicate edge id {e.id}")
            seen.add(e.id)
            if not (0 <= e.tail < self.n and 0 <= e.head < self.n):
                raise GraphError(f"edge {e.id} has an endpoint outside [0, {self.n})")
            if e.tail == e.head:
                raise GraphError(f"edge {e.id} is a self-loop at {e.tail}")

    @classmethod
    def build(cls, n: int, undirected: Iterable[tuple[int, int]] = (),
              arcs: Iterable[tuple[int, int]] = ()) -> "MixedMultigraph":
        """Convenience constructor; undirected edges get ids first, then arcs."""
        edges = [EdgeRecord(i, a, b, False) for i, (a, b) in enumerate(undirected)]
        edges += [EdgeRecord(len(edges) + i, t, h, True) for i, (t, h) in enumerate(arcs)]
        return cls(n, tuple(edges))

    @cached_property
    def by_id(self) -> dict[int, EdgeRecord]:
        return {e.id: e for e in self.edges}

    @cached_property
    def out_adj(self) -> list[list[tuple[int, int]]]:
        """``out_adj[v]`` lists ``(w, edge_id)`` for every edge traversable v -> w."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for e in self.edges:
            adj[e.tail].append((e.head, e.id))
            if not e.directed:
                adj[e.head].append((e.tail, e.id))
        return adj

    @cached_property
    def in_adj(self) -> list[list[tuple[int, int]]]:
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for e in self.edges:
            adj[e.head].append((e.tail, e.id))
            if not e.directed:
                adj[e.tail].append((e.head, e.id))
        return adj

    @property
    def undirected_edges(self) -> list[EdgeRecord]:
        return [e for e in self.edges if not e.directed]

    @property
    def arcs(self) -> list[EdgeRecord]:
        return [e for e in self.edges if e.directed]

    def edges_between(self, a: int, b: int) -> list[EdgeRecord]:
        return [e for e in self.edges if e.joins(a, b)]

    def neighbors(self, v: int) -> set[int]:
        """In-, out- and undirected neighbours of ``v``."""
        return {w for w, _ in self.out_adj[v]} | {w for w, _ in self.in_adj[v]}

    def closed_neighborhood(self, v: int) -> set[int]:
        return self.neighbors(v) | {v}

    def with_edges(self, edges: Iterable[EdgeRecord]) -> "MixedMultigraph":
        return replace(self, edges=tuple(edges))

    def without_edge(self, edge_id: int) -> "MixedMultigraph":
        return self.with_edges(e for e in self.edges if e.id != edge_id)

    def induced(self, vertices: Iterable[int]) -> "MixedMultigraph":
        """Edges with both endpoints in ``vertices``; the vertex count is kept."""
        keep = set(vertices)
        return self.with_edges(e for e in self.edges if e.tail in keep and e.head in keep)


# ---------------------------------------------------------------- text format

def parse_graph(text: str) -> MixedMultigraph:
    """Parse the line format ``n <count>`` then ``e u v`` / ``a t h`` lines.

    Edge ids are the 0-based positions among edge lines.
    """
    n = None
    edges: list[EdgeRecord] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if n is None:
                if parts[0] != "n" or len(parts) != 2:
                    raise GraphError("expected 'n <count>' header")
                n = int(parts[1])
                if n < 0:
                    raise GraphError("negative vertex count")
                continue
            if parts[0] not in ("e", "a") or len(parts) != 3:
                raise GraphError(f"unrecognised line {line!r}")
            a, b = int(parts[1]), int(parts[2])
        except (GraphError, ValueError) as exc:
            raise GraphError(f"line {lineno}: {exc}") from None
        if not (0 <= a < n and 0 <= b < n):
            raise GraphError(f"line {lineno}: vertex index out of range for n={n}")
        if a == b:
            raise GraphError(f"line {lineno}: self-loop at {a}")
        edges.append(EdgeRecord(len(edges), a, b, parts[0] == "a"))
    if n is None:
        raise GraphError("missing 'n <count>' header")
    return MixedMultigraph(n, tuple(edges))


def serialize_graph(g: MixedMultigraph, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"n {g.n}")
    for e in sorted(g.edges, key=lambda e: e.id):
        lines.append(f"{'a' if e.directed else 'e'} {e.tail} {e.head}")
    return "\n".join(lines) + "\n"


def read_graph(path) -> MixedMultigraph:
    with open(path) as fh:
        return parse_graph(fh.read())


def write_graph(path, g: MixedMultigraph, comments: Iterable[str] = ()) -> None:
    with open(path, "w") as fh:
        fh.write(serialize_graph(g, comments))


# ---------------------------------------------------------------- orientation

@dataclass
class OrientationPlan:
    """Directions for a subset of undirected edges: ``edge id -> (tail, head)``."""

    assignments: dict[int, tuple[int, int]] = field(default_factory=dict)

    def __len__(self):
        return len(self.assignments)

    def merged(self, other: "OrientationPlan") -> "OrientationPlan":
        clash = {i for i in other.assignments.keys() & self.assignments.keys()
                 if other.assignments[i] != self.assignments[i]}
        if clash:
            raise GraphError(f"plans disagree on edges {sorted(clash)}")
        return OrientationPlan({**self.assignments, **other.assignments})

    def reversed(self) -> "OrientationPlan":
        return OrientationPlan({i: (h, t) for i, (t, h) in self.assignments.items()})

    def is_total_for(self, g: MixedMultigraph) -> bool:
        return all(e.id in self.assignments for e in g.undirected_edges)


def apply_plan(g: MixedMultigraph, plan: OrientationPlan | Mapping[int, tuple[int, int]]) -> MixedMultigraph:
    assignments = plan.assignments if isinstance(plan, OrientationPlan) else dict(plan)
    for i in assignments:
        if i not in g.by_id:
            raise GraphError(f"plan references unknown edge {i}")
        if g.by_id[i].directed:
            raise GraphError(f"plan orients edge {i}, which is already an arc")
    return g.with_edges(e.oriented(*assignments[e.id]) if e.id in assignments else e
                        for e in g.edges)


def plan_of(oriented: MixedMultigraph, original: MixedMultigraph) -> OrientationPlan:
    """Directions taken by ``original``'s undirected edges inside ``oriented``."""
    plan = OrientationPlan()
    for e in oriented.edges:
        src = original.by_id.get(e.id)
        if src is not None and not src.directed and e.directed:
            plan.assignments[e.id] = (e.tail, e.head)
    return plan


def parse_plan(text: str) -> OrientationPlan:
    plan = OrientationPlan()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] != "o" or len(parts) != 4:
            raise GraphError(f"line {lineno}: expected 'o <edge> <tail> <head>'")
        try:
            i, t, h = (int(p) for p in parts[1:])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer field") from None
        plan.assignments[i] = (t, h)
    return plan


def serialize_plan(plan: OrientationPlan) -> str:
    return "".join(f"o {i} {t} {h}\n" for i, (t, h) in sorted(plan.assignments.items()))


def reverse(g: MixedMultigraph) -> MixedMultigraph:
    return g.with_edges(e.reversed() for e in g.edges)


# ---------------------------------------------------------------- distances

def bfs(g: MixedMultigraph, source: int, *, backward: bool = False,
        skip: int | None = None) -> list[Distance]:
    """Distances from ``source`` (to ``source`` when ``backward``), ignoring edge ``skip``."""
    adj = g.in_adj if backward else g.out_adj
    dist: list[Distance] = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        d = dist[v] + 1
        for w, eid in adj[v]:
            if dist[w] == UNREACHABLE and eid != skip:
                dist[w] = d
                queue.append(w)
    return dist


def distance(g: MixedMultigraph, source: int, target: int, *, skip: int | None = None) -> Distance:
    if source == target:
        return 0
    adj = g.out_adj
    seen = {source}
    frontier = [source]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for v in frontier:
            for w, eid in adj[v]:
                if w not in seen and eid != skip:
                    if w == target:
                        return d
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return UNREACHABLE


def eccentricities(g: MixedMultigraph, v: int) -> tuple[Distance, Distance]:
    """``(e_out, e_in)`` of ``v``."""
    return max(bfs(g, v)), max(bfs(g, v, backward=True))


def eccentricity(g: MixedMultigraph, v: int) -> Distance:
    return max(eccentricities(g, v))


def radius_center(g: MixedMultigraph) -> tuple[Distance, set[int]]:
    if g.n == 0:
        return UNREACHABLE, set()
    ecc = [eccentricity(g, v) for v in range(g.n)]
    rad = min(ecc)
    return rad, {v for v, e in enumerate(ecc) if e == rad}


def is_strongly_connected(g: MixedMultigraph) -> bool:
    if g.n <= 1:
        return True
    return UNREACHABLE not in bfs(g, 0) and UNREACHABLE not in bfs(g, 0, backward=True)


# ---------------------------------------------------------------- bridges

def underlying_bridges(g: MixedMultigraph) -> set[int]:
    """Ids of all bridges of the underlying undirected multigraph (arcs included).

    Iterative lowpoint DFS.  The tree edge into a vertex is skipped by id, so
    a parallel instance counts as a back edge and parallel pairs are never bridges.
    """
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for e in g.edges:
        adj[e.tail].append((e.head, e.id))
        adj[e.head].append((e.tail, e.id))
    order = [-1] * g.n
    low = [0] * g.n
    bridges: set[int] = set()
    counter = 0
    for root in range(g.n):
        if order[root] != -1:
            continue
        order[root] = low[root] = counter
        counter += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, via, it = stack[-1]
            for w, eid in it:
                if eid == via:
                    continue
                if order[w] == -1:
                    order[w] = low[w] = counter
                    counter += 1
                    stack.append((w, eid, iter(adj[w])))
                    break
                low[v] = min(low[v], order[w])
            else:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[v])
                    if low[v] > order[parent]:
                        bridges.add(via)
    return bridges


def is_underlying_connected(g: MixedMultigraph) -> bool:
    if g.n <= 1:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w, _ in g.out_adj[v] + g.in_adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def undirected_bridges(g: MixedMultigraph) -> set[int]:
    """Undirected edges whose removal disconnects the underlying multigraph."""
    if not is_underlying_connected(g):
        raise GraphError("underlying multigraph is disconnected")
    return {i for i in underlying_bridges(g) if not g.by_id[i].directed}


def is_valid_input(g: MixedMultigraph) -> bool:
    """Strongly connected and free of undirected bridges."""
    return is_strongly_connected(g) and not undirected_bridges(g)
