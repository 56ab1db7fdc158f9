"""In-orientation by reversal, and a driver that orients a whole graph."""
from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

from .cycles import eta as eta_of
from .graph import (
    UNREACHABLE,
    Distance,
    GraphError,
    MixedMultigraph,
    OrientationPlan,
    apply_plan,
    bfs,
    is_strongly_connected,
    is_valid_input,
    radius_center,
    reverse,
)
from .orientout import ContractViolation, OrientResult, check_contract, orientout

CSV_COLUMNS = ("n", "m_undirected", "m_arcs", "r", "eta", "oriented_radius", "bound_f",
               "bound_eta", "within_f", "within_eta", "iterations", "seconds")


def orientin(g: MixedMultigraph, u: int, r: int | None = None) -> OrientResult:
    """Mirror image of ``orientout``: ``u`` is reached within ``2r`` and reaches within ``4r - 1``."""
    res = orientout(reverse(g), u, r)
    h = reverse(res.h)
    problems = check_contract(g, u, res.r, h, res.vertices, out_bound=4 * res.r - 1, in_bound=2 * res.r)
    if problems:
        raise ContractViolation("; ".join(problems), graph=g, u=u, r=res.r)
    return replace(res, h=h, plan=res.plan.reversed())


def _fmt(x) -> str:
    if x == UNREACHABLE:
        return "inf"
    return f"{x:g}"


@dataclass
class DriverReport:
    n: int
    m_undirected: int
    m_arcs: int
    r: Distance
    eta: Distance
    oriented_radius: Distance
    strongly_connected: bool
    iterations: int = 0
    log: list[tuple[int, int]] = field(default_factory=list)  # (root, |V(H)|) per orientout/orientin call
    seconds: float | None = None

    @property
    def bound_f(self) -> float:
        return 1.5 * self.r ** 2 + self.r + 1

    @property
    def bound_eta(self) -> float:
        return 1.5 * self.r * self.eta

    @property
    def within_f(self) -> bool:
        return self.oriented_radius <= self.bound_f

    @property
    def within_eta(self) -> bool:
        return self.oriented_radius <= self.bound_eta

    def row(self) -> list[str]:
        return [str(self.n), str(self.m_undirected), str(self.m_arcs), _fmt(self.r), _fmt(self.eta),
                _fmt(self.oriented_radius), _fmt(self.bound_f), _fmt(self.bound_eta),
                str(int(self.within_f)), str(int(self.within_eta)), str(self.iterations),
                "" if self.seconds is None else f"{self.seconds:.3f}"]


def verify_orientation(g: MixedMultigraph, plan: OrientationPlan) -> DriverReport:
    if not plan.is_total_for(g):
        missing = sorted(e.id for e in g.undirected_edges if e.id not in plan.assignments)
        raise GraphError(f"plan leaves edges {missing} unoriented")
    oriented = apply_plan(g, plan)
    r, _ = radius_center(g)
    rad, _ = radius_center(oriented)
    return DriverReport(g.n, len(g.undirected_edges), len(g.arcs), r, eta_of(g), rad,
                        is_strongly_connected(oriented))


def _arc_component(g: MixedMultigraph, u: int) -> set[int]:
    """Vertices joined to ``u`` in both directions by arcs alone."""
    arcs_only = g.with_edges(g.arcs)
    fwd, back = bfs(arcs_only, u), bfs(arcs_only, u, backward=True)
    return {v for v in range(g.n) if fwd[v] != UNREACHABLE and back[v] != UNREACHABLE}


def _contract(g: MixedMultigraph, group: set[int], label: list[int]) -> tuple[MixedMultigraph, list[int]]:
    """Merge ``group`` into one vertex, dropping its internal edges; relabel densely."""
    anchor = min(group)
    keys = sorted({anchor if v in group else v for v in range(g.n)})
    rank = {k: i for i, k in enumerate(keys)}
    new_of = [rank[anchor if v in group else v] for v in range(g.n)]
    edges = [replace(e, tail=new_of[e.tail], head=new_of[e.head])
             for e in g.edges if not (e.tail in group and e.head in group)]
    return MixedMultigraph(len(keys), tuple(edges)), [new_of[x] for x in label]


def orient_full(g: MixedMultigraph, *, timing: bool = False) -> tuple[OrientationPlan, DriverReport]:
    """Orient every undirected edge; the result is strongly connected.

    Each round picks the lowest-id center ``u`` of the current graph, commits
    an out-orientation and then an in-orientation around ``u``, and contracts
    the vertices joined to ``u`` by arcs in both directions into one vertex.
    Rounds repeat until no undirected edge is left.
    """
    start = time.perf_counter()
    if not is_valid_input(g):
        raise GraphError("input must be strongly connected and free of undirected bridges")
    plan = OrientationPlan()
    label = list(range(g.n))  # original vertex -> vertex of the current graph
    cur = g
    log: list[tuple[int, int]] = []
    rounds = 0

    def commit(local: OrientationPlan):
        nonlocal cur, plan
        cur = apply_plan(cur, local)
        lifted = OrientationPlan()
        for eid, (a, _) in local.assignments.items():
            e = g.by_id[eid]
            lifted.assignments[eid] = (e.tail, e.head) if label[e.tail] == a else (e.head, e.tail)
        plan = plan.merged(lifted)

    while cur.undirected_edges:
        rounds += 1
        size = (cur.n, len(cur.undirected_edges))
        _, centers = radius_center(cur)
        u = min(centers)
        for orient in (orientout, orientin):
            res = orient(cur, u)
            commit(res.plan)
            log.append((u, len(res.vertices)))
        group = _arc_component(cur, u)
        commit(OrientationPlan({e.id: (min(e.endpoints), max(e.endpoints)) for e in cur.undirected_edges
                                if e.tail in group and e.head in group}))
        cur, label = _contract(cur, group, label)
        if (cur.n, len(cur.undirected_edges)) == size:
            raise ContractViolation(f"round {rounds} made no progress", graph=g, u=u)

    report = verify_orientation(g, plan)
    report.iterations = rounds
    report.log = log
    if timing:
        report.seconds = time.perf_counter() - start
    if not report.strongly_connected:
        raise ContractViolation("final orientation is not strongly connected", graph=g)
    return plan, report
