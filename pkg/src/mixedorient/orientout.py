"""Out-orientation around a root vertex.

Given a strongly connected bridgeless mixed multigraph and a root ``u`` with
eccentricity at most ``r``, build an oriented subgraph ``H`` containing the
closed neighbourhood of ``u`` in which every vertex is reachable from ``u``
within ``2r`` steps and reaches ``u`` within ``4r - 1`` steps.

The construction runs in four stages:

0. normalise multi-edges at ``u`` into directed 2-cycles, collapse
   same-direction parallel arcs and classify the neighbours of ``u``;
1. orient the single undirected edges at ``u`` whenever that keeps the sum
   ``s`` of shortest-cycle lengths over the neighbourhood unchanged;
2. grow a shortest-path out-tree to the in-neighbours and a shortest-path
   in-tree from the out-neighbours, and splice the in-tree paths onto the
   out-tree;
3. keep the subgraph induced on the tree vertices and spliced segments and
   orient what is left.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .cycles import cycle_length_upper_bound, l_value
from .graph import (
    UNREACHABLE,
    Distance,
    GraphError,
    MixedMultigraph,
    OrientationPlan,
    bfs,
    distance,
    eccentricity,
    is_valid_input,
    plan_of,
    serialize_graph,
)


class ContractViolation(RuntimeError):
    """An algorithmic guarantee failed; ``context`` holds everything needed to reproduce it."""

    def __init__(self, message: str, **context):
        super().__init__(message)
        self.context = context

    def dump(self) -> str:
        lines = [f"# contract violation: {self}"]
        graph = None
        for key, value in self.context.items():
            if isinstance(value, MixedMultigraph):
                graph = graph or value
                continue
            lines.append(f"# {key}: {value}")
        if graph is not None:
            lines.append(serialize_graph(graph).rstrip("\n"))
        return "\n".join(lines) + "\n"


@dataclass
class StageState:
    u: int
    r: int
    graph: MixedMultigraph
    x_in: set[int]
    x_out: set[int]
    x_un: set[int]
    x_conf: set[int] = field(default_factory=set)
    l: dict[int, Distance] = field(default_factory=dict)
    s: Distance = 0
    plan: OrientationPlan = field(default_factory=OrientationPlan)

    @property
    def x(self) -> set[int]:
        return self.x_in | self.x_out | self.x_un | self.x_conf

    def summary(self) -> str:
        return (f"u={self.u} r={self.r} X_in={sorted(self.x_in)} X_out={sorted(self.x_out)} "
                f"X_un={sorted(self.x_un)} X_conf={sorted(self.x_conf)} s={self.s}")


@dataclass
class TreeSkeleton:
    """Shortest-path tree rooted at ``root``.

    For an out-tree, ``parent[v]`` is ``(p, edge_id)`` with the edge traversed
    ``p -> v`` and ``paths[t]`` runs root..t.  For an in-tree, ``parent[v]`` is
    the next hop toward the root and ``paths[t]`` runs t..root.
    """

    root: int
    parent: dict[int, tuple[int, int]]
    terminals: set[int]
    paths: dict[int, list[int]]
    outward: bool = True

    @property
    def vertices(self) -> set[int]:
        return {self.root} | set(self.parent)

    def path_edges(self, terminal: int) -> list[tuple[int, int, int]]:
        """``(a, b, edge_id)`` hops along the stored path, traversed a -> b."""
        path = self.paths[terminal]
        if self.outward:
            return [(self.parent[b][0], b, self.parent[b][1]) for b in path[1:]]
        return [(a, self.parent[a][0], self.parent[a][1]) for a in path[:-1]]


@dataclass
class SplicedCycle:
    j: int
    cycle: list[int]  # u, v_j, ..., u
    x: int
    y: int


@dataclass
class Stage2Result:
    t_out: TreeSkeleton
    t_in: TreeSkeleton
    g2: MixedMultigraph
    cycles: list[SplicedCycle]
    g3: MixedMultigraph


@dataclass
class OrientResult:
    u: int
    r: int
    h: MixedMultigraph  # vertex count of the input; only edges of H present
    vertices: set[int]
    plan: OrientationPlan
    state0: StageState
    state1: StageState
    stage2: Stage2Result


def _orient(g: MixedMultigraph, edge_id: int, tail: int, head: int) -> MixedMultigraph:
    return g.with_edges(e.oriented(tail, head) if e.id == edge_id else e for e in g.edges)


def _l_values(g: MixedMultigraph, u: int, xs) -> dict[int, Distance]:
    return {v: l_value(g, u, v) for v in sorted(xs)}


# ---------------------------------------------------------------- stage 0

def stage0_normalize(g: MixedMultigraph, u: int, r: int | None = None, *,
                     validate: bool = True) -> tuple[MixedMultigraph, StageState]:
    if validate and not is_valid_input(g):
        raise GraphError("input must be strongly connected and free of undirected bridges")
    ecc = eccentricity(g, u)
    if r is None:
        r = int(ecc)
    elif r < ecc:
        raise GraphError(f"r={r} is below the eccentricity {ecc} of vertex {u}")

    plan = OrientationPlan()
    for v in sorted(g.neighbors(u)):
        between = sorted(g.edges_between(u, v), key=lambda e: e.id)
        if len(between) < 2:
            continue
        outward = sum(1 for e in between if e.directed and e.tail == u)
        inward = sum(1 for e in between if e.directed and e.tail == v)
        spare = 0
        for e in (e for e in between if not e.directed):
            if outward == 0:
                plan.assignments[e.id] = (u, v)
                outward += 1
            elif inward == 0:
                plan.assignments[e.id] = (v, u)
                inward += 1
            else:
                # both directions exist already: alternate, starting outward
                plan.assignments[e.id] = (u, v) if spare % 2 == 0 else (v, u)
                spare += 1

    # one arc per ordered pair survives, the lowest id
    kept: dict[tuple[int, int], int] = {}
    for e in sorted(g.edges, key=lambda e: e.id):
        if e.id in plan.assignments:
            e = e.oriented(*plan.assignments[e.id])
        if e.directed:
            kept.setdefault((e.tail, e.head), e.id)
    edges = []
    for e in g.edges:
        if e.id in plan.assignments:
            e = e.oriented(*plan.assignments[e.id])
        if not e.directed or kept[(e.tail, e.head)] == e.id:
            edges.append(e)
    g0 = g.with_edges(edges)

    x_in, x_out, x_un = set(), set(), set()
    for v in g0.neighbors(u):
        between = g0.edges_between(u, v)
        if any(e.directed and e.tail == v for e in between):
            x_in.add(v)
        elif any(e.directed and e.tail == u for e in between):
            x_out.add(v)
        else:
            assert len(between) == 1
            x_un.add(v)

    l = _l_values(g0, u, x_in | x_out | x_un)
    bound = cycle_length_upper_bound(r)
    for v, lv in l.items():
        if lv > bound:
            raise ContractViolation(f"shortest cycle through edge {u}-{v} has length {lv} > {bound}",
                                    graph=g, u=u, r=r)
    state = StageState(u, r, g0, x_in, x_out, x_un, set(), l, sum(l.values()), plan)
    return g0, state


# ---------------------------------------------------------------- stage 1

def _preserved_l_values(g: MixedMultigraph, u: int, current: dict[int, Distance]) -> dict[int, Distance] | None:
    """Recompute every l-value on ``g``; None as soon as one differs from ``current``.

    Orienting an edge never shortens a cycle, so ``s`` is unchanged exactly
    when no single l-value changes.
    """
    fresh = {}
    for v, old in current.items():
        fresh[v] = l_value(g, u, v)
        if fresh[v] != old:
            return None
    return fresh


def stage1_orient(state: StageState) -> StageState:
    u, g = state.u, state.graph
    x_in, x_out, x_conf = set(state.x_in), set(state.x_out), set(state.x_conf)
    plan = OrientationPlan(dict(state.plan.assignments))
    l = dict(state.l)
    for v in sorted(state.x_un):
        (edge,) = g.edges_between(u, v)
        for tail, head, bucket in ((v, u, x_in), (u, v, x_out)):
            candidate = _orient(g, edge.id, tail, head)
            cand_l = _preserved_l_values(candidate, u, l)
            if cand_l is not None and sum(cand_l.values()) == state.s:
                g, l = candidate, cand_l
                plan.assignments[edge.id] = (tail, head)
                bucket.add(v)
                break
        else:
            x_conf.add(v)
    return replace(state, graph=g, x_in=x_in, x_out=x_out, x_un=set(), x_conf=x_conf, l=l, plan=plan)


def _root_edge(state: StageState, v: int) -> int:
    (edge,) = state.graph.edges_between(state.u, v)
    return edge.id


def _in_witness(state: StageState, v: int) -> bool:
    g, u = state.graph, state.u
    eid = _root_edge(state, v)
    return any(distance(g, u, w, skip=eid) > distance(g, u, w) for w in state.x_in)


def _out_witness(state: StageState, v: int) -> bool:
    g, u = state.graph, state.u
    eid = _root_edge(state, v)
    return any(distance(g, z, u, skip=eid) > distance(g, z, u) for z in state.x_out)


def check_original_observation(state: StageState) -> dict[int, bool]:
    """Per conflicted vertex ``v``: is there ``w`` in X_in whose every shortest path from ``u`` starts with ``uv``?"""
    return {v: _in_witness(state, v) for v in sorted(state.x_conf)}


def check_corrected_observation(state: StageState) -> dict[int, bool]:
    """As the original check, but a vertex ``z`` in X_out whose every shortest path to ``u`` ends with ``vu`` also counts."""
    return {v: _in_witness(state, v) or _out_witness(state, v) for v in sorted(state.x_conf)}


# ---------------------------------------------------------------- stage 2

def shortest_path_tree(g: MixedMultigraph, root: int, terminals, *, outward: bool = True) -> TreeSkeleton:
    """Union of shortest root->t (or t->root) paths, lowest-id predecessor first.

    The hop chosen at each vertex depends only on that vertex, so the paths
    merge into a tree, and only edges on some terminal path are kept.
    """
    dist = bfs(g, root, backward=not outward)
    steps = g.in_adj if outward else g.out_adj
    parent: dict[int, tuple[int, int]] = {}
    paths: dict[int, list[int]] = {}
    for t in sorted(terminals):
        if dist[t] == UNREACHABLE:
            raise GraphError(f"terminal {t} is not connected to root {root}")
        walk = [t]
        v = t
        while v != root:
            if v not in parent:
                parent[v] = min((p, eid) for p, eid in steps[v] if dist[p] == dist[v] - 1)
            v = parent[v][0]
            walk.append(v)
        paths[t] = walk[::-1] if outward else walk
    return TreeSkeleton(root, parent, set(terminals), paths, outward)


def stage2_build(state: StageState, *, literal_splice: bool = False) -> Stage2Result:
    """Build both trees, orient the out-tree and splice the in-tree paths.

    Splice points are the first and last vertices of each in-path lying in
    the out-tree other than the root; with no such vertex both default to the
    root.  ``literal_splice=True`` lets the root count as an out-tree vertex,
    which pins the last splice point to the root and leaves the tail of every
    in-path that touches the out-tree outside the result.
    """
    u, g1 = state.u, state.graph
    corrected = check_corrected_observation(state)
    failed = sorted(v for v, ok in corrected.items() if not ok)
    if failed:
        raise ContractViolation(f"conflicted vertices {failed} have no shortest-path witness",
                                graph=g1, u=u, r=state.r, state=state.summary())

    t_out = shortest_path_tree(g1, u, state.x_in, outward=True)
    t_in = shortest_path_tree(g1, u, state.x_out, outward=False)
    covered = t_out.vertices | t_in.vertices
    if not state.x_conf <= covered:
        raise ContractViolation(f"conflicted vertices {sorted(state.x_conf - covered)} outside both trees",
                                graph=g1, u=u, r=state.r, state=state.summary())

    g2 = g1
    for v, (p, eid) in sorted(t_out.parent.items()):
        if not g2.by_id[eid].directed:
            g2 = _orient(g2, eid, p, v)

    anchors = t_out.vertices if literal_splice else t_out.vertices - {u}
    g3 = g2
    cycles = []
    for j in sorted(state.x_out):
        path = t_in.paths[j]
        hits = [i for i, w in enumerate(path) if w in anchors]
        ix, iy = (hits[0], hits[-1]) if hits else (len(path) - 1, len(path) - 1)
        hops = t_in.path_edges(j)
        for a, b, eid in hops[:ix] + hops[iy:]:
            e = g3.by_id[eid]
            if not e.directed:
                g3 = _orient(g3, eid, a, b)
            elif (e.tail, e.head) != (a, b):
                # only an out-tree edge from u to the last splice point can point the other way
                if not (b == u and a == path[iy] and t_out.parent.get(a) == (u, eid)):
                    raise ContractViolation(f"splice of in-path from {j} contradicts arc {eid}",
                                            graph=g1, u=u, r=state.r, state=state.summary())
        cycles.append(SplicedCycle(j, [u] + path, path[ix], path[iy]))
    return Stage2Result(t_out, t_in, g2, cycles, g3)


# ---------------------------------------------------------------- stage 3

def result_vertices(t_out: TreeSkeleton, cycles: list[SplicedCycle]) -> set[int]:
    keep = set(t_out.vertices)
    for c in cycles:
        path = c.cycle[1:]
        ix = path.index(c.x) if c.x != c.cycle[0] else len(path) - 1
        iy = path.index(c.y) if c.y != c.cycle[0] else len(path) - 1
        keep.update(path[: ix + 1])
        keep.update(path[iy:])
    return keep


def stage3_extract(state: StageState, g3: MixedMultigraph, t_out: TreeSkeleton,
                   cycles: list[SplicedCycle]) -> tuple[MixedMultigraph, set[int]]:
    """Induced subgraph on the kept vertices with leftover edges oriented low -> high id."""
    keep = result_vertices(t_out, cycles)
    h = g3.induced(keep)
    h = h.with_edges(e if e.directed else e.oriented(min(e.endpoints), max(e.endpoints))
                     for e in h.edges)
    return h, keep


# ---------------------------------------------------------------- driver

def check_contract(g: MixedMultigraph, u: int, r: int, h: MixedMultigraph, vertices: set[int],
                   *, out_bound: int | None = None, in_bound: int | None = None) -> list[str]:
    """Problems with an out-orientation ``h`` of ``g`` around ``u``; empty when it is sound."""
    out_bound = 2 * r if out_bound is None else out_bound
    in_bound = 4 * r - 1 if in_bound is None else in_bound
    problems = []
    missing = g.closed_neighborhood(u) - vertices
    if missing:
        problems.append(f"neighbours {sorted(missing)} of {u} missing from H")
    if any(not e.directed for e in h.edges):
        problems.append("H still has undirected edges")
    for e in h.edges:
        src = g.by_id.get(e.id)
        if src is None or not src.joins(e.tail, e.head):
            problems.append(f"edge {e.id} of H is not an edge of the input")
        elif src.directed and (src.tail, src.head) != (e.tail, e.head):
            problems.append(f"arc {e.id} reversed in H")
    d_from = bfs(h, u)
    d_to = bfs(h, u, backward=True)
    for v in sorted(vertices):
        if d_from[v] > out_bound:
            problems.append(f"d_H({u},{v})={d_from[v]} > {out_bound}")
        if d_to[v] > in_bound:
            problems.append(f"d_H({v},{u})={d_to[v]} > {in_bound}")
    return problems


def orientout(g: MixedMultigraph, u: int, r: int | None = None, *,
              literal_splice: bool = False) -> OrientResult:
    g0, state0 = stage0_normalize(g, u, r)
    r = state0.r
    state1 = stage1_orient(state0)
    if state1.s != state0.s:
        raise ContractViolation("stage 1 changed s", graph=g, u=u, r=r, state=state1.summary())
    stage2 = stage2_build(state1, literal_splice=literal_splice)

    d_from = bfs(stage2.g2, u)
    d_to = bfs(stage2.g2, u, backward=True)
    for x in sorted(stage2.t_out.vertices - {u}):
        if d_from[x] > 2 * r or d_to[x] > 2 * r:
            raise ContractViolation(f"out-tree vertex {x} too far from {u} after orienting the tree",
                                    graph=g, u=u, r=r, state=state1.summary())

    h, keep = stage3_extract(state1, stage2.g3, stage2.t_out, stage2.cycles)
    problems = check_contract(g, u, r, h, keep)
    if problems:
        raise ContractViolation("; ".join(problems), graph=g, u=u, r=r, state=state1.summary())
    plan = state0.plan.merged(plan_of(h, g))
    return OrientResult(u, r, h, keep, plan, state0, state1, stage2)
