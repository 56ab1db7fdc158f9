"""Ground truth at small scale: exhaustive orientation search and the conflict hunt."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import networkx as nx

from .graph import (
    UNREACHABLE,
    Distance,
    EdgeRecord,
    GraphError,
    MixedMultigraph,
    OrientationPlan,
    radius_center,
)
from .orientout import (
    ContractViolation,
    check_corrected_observation,
    check_original_observation,
    stage0_normalize,
    stage1_orient,
)

DEFAULT_CAP = 20


# ---------------------------------------------------------------- brute force

def _undirected_order(g: MixedMultigraph) -> list[EdgeRecord]:
    return sorted(g.undirected_edges, key=lambda e: e.id)


def plan_from_index(g: MixedMultigraph, index: int) -> OrientationPlan:
    """Bit k of ``index`` orients the k-th undirected edge (by id): 0 = low -> high vertex."""
    plan = OrientationPlan()
    for k, e in enumerate(_undirected_order(g)):
        lo, hi = sorted(e.endpoints)
        plan.assignments[e.id] = (hi, lo) if index >> k & 1 else (lo, hi)
    return plan


def _ecc_masks(adj: list[int], v: int, full: int, cap: float) -> Distance:
    seen = frontier = 1 << v
    d = 0
    while seen != full:
        d += 1
        if d > cap:
            return UNREACHABLE
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj[low.bit_length() - 1]
            f ^= low
        nxt &= ~seen
        if not nxt:
            return UNREACHABLE
        seen |= nxt
        frontier = nxt
    return d


def _radius_masks(out: list[int], inn: list[int], cap: float = math.inf) -> Distance:
    """Radius of the digraph given by bit adjacency, or UNREACHABLE if it exceeds ``cap``."""
    n = len(out)
    full = (1 << n) - 1
    if _ecc_masks(out, 0, full, n) == UNREACHABLE or _ecc_masks(inn, 0, full, n) == UNREACHABLE:
        return UNREACHABLE
    best = UNREACHABLE
    for v in range(n):
        limit = min(cap, best - 1)
        e_out = _ecc_masks(out, v, full, limit)
        if e_out == UNREACHABLE:
            continue
        e_in = _ecc_masks(inn, v, full, limit)
        if e_in == UNREACHABLE:
            continue
        best = max(e_out, e_in)
    return best


def _base_masks(g: MixedMultigraph) -> tuple[list[int], list[int]]:
    out = [0] * g.n
    inn = [0] * g.n
    for e in g.arcs:
        out[e.tail] |= 1 << e.head
        inn[e.head] |= 1 << e.tail
    return out, inn


def _plan_masks(g, base, und, index):
    out, inn = list(base[0]), list(base[1])
    for k, e in enumerate(und):
        lo, hi = sorted(e.endpoints)
        a, b = (hi, lo) if index >> k & 1 else (lo, hi)
        out[a] |= 1 << b
        inn[b] |= 1 << a
    return out, inn


def plan_radius(g: MixedMultigraph, index: int) -> Distance:
    """Radius after applying ``plan_from_index(g, index)``, via the bit-parallel evaluator."""
    return _radius_masks(*_plan_masks(g, _base_masks(g), _undirected_order(g), index))


def brute_oriented_radius(g: MixedMultigraph, cap: int = DEFAULT_CAP) -> tuple[Distance, OrientationPlan | None]:
    """Minimum radius over all orientations, with the first plan (by index) attaining it."""
    und = _undirected_order(g)
    if len(und) > cap:
        raise GraphError(f"{len(und)} undirected edges exceed the enumeration cap {cap}; raise --cap")
    if g.n <= 1:
        return 0, plan_from_index(g, 0)
    base = _base_masks(g)
    # orienting never shortens a distance, so the mixed radius is a floor
    floor, _ = radius_center(g)
    if floor == UNREACHABLE:
        return UNREACHABLE, None
    best, best_index = UNREACHABLE, None
    for index in range(1 << len(und)):
        rad = _radius_masks(*_plan_masks(g, base, und, index), cap=best - 1)
        if rad < best:
            best, best_index = rad, index
            if best == floor:
                break
    if best_index is None:
        return UNREACHABLE, None
    return best, plan_from_index(g, best_index)


# ---------------------------------------------------------------- hunt

@dataclass
class HuntResult:
    graph: MixedMultigraph
    root: int
    x_in: frozenset[int]
    x_out: frozenset[int]
    x_conf: frozenset[int]
    original_obs_holds: bool
    corrected_obs_holds: bool

    @property
    def partition(self):
        return self.x_in, self.x_out, self.x_conf

    @property
    def key(self):
        return self.graph.n, len(self.graph.edges), self.root


def replay(g: MixedMultigraph, root: int, *, validate: bool = True) -> HuntResult:
    """Run stages 0-1 at ``root`` and both observation checks."""
    _, state = stage0_normalize(g, root, validate=validate)
    state = stage1_orient(state)
    return HuntResult(g, root, frozenset(state.x_in), frozenset(state.x_out), frozenset(state.x_conf),
                      all(check_original_observation(state).values()),
                      all(check_corrected_observation(state).values()))


def _skeletons(n: int, max_edges: int):
    """Non-isomorphic connected bridgeless simple graphs on ``n`` vertices, grouped by edge count."""
    by_m: dict[int, list[list[tuple[int, int]]]] = {}
    for base in nx.graph_atlas_g():
        if base.number_of_nodes() != n or base.number_of_edges() > max_edges:
            continue
        if not nx.is_connected(base) or nx.has_bridges(base):
            continue
        by_m.setdefault(base.number_of_edges(), []).append(sorted(tuple(sorted(e)) for e in base.edges()))
    return sorted(by_m.items())


def _strongly_connected(n: int, pairs, labels) -> bool:
    out = [0] * n
    inn = [0] * n
    for (a, b), lab in zip(pairs, labels):
        if lab != 2:
            out[a] |= 1 << b
            inn[b] |= 1 << a
        if lab != 1:
            out[b] |= 1 << a
            inn[a] |= 1 << b
    full = (1 << n) - 1
    return _ecc_masks(out, 0, full, n) != UNREACHABLE and _ecc_masks(inn, 0, full, n) != UNREACHABLE


def hunt_counterexample(max_n: int = 7, max_edges: int = 12, *, exhaustive: bool = False,
                        strict: bool = True) -> list[HuntResult]:
    """Search small mixed graphs for conflicted vertices without an in-neighbour witness.

    Skeletons are the non-isomorphic bridgeless graphs of the networkx atlas
    (up to 7 vertices); every edge is labelled undirected, forward or
    backward, and every root with an undirected edge is tried.  Levels are
    scanned by increasing ``(n, edges)``; unless ``exhaustive``, the scan
    stops after the first level that yields a result.  With ``strict``, a
    record failing the corrected check raises ``ContractViolation``.
    """
    if max_n > 7:
        raise GraphError("hunt is limited to max_n <= 7")
    results: list[HuntResult] = []
    for n in range(3, max_n + 1):
        for m, skeletons in _skeletons(n, max_edges):
            for pairs in skeletons:
                for labels in itertools.product((0, 1, 2), repeat=m):
                    if 0 not in labels or not _strongly_connected(n, pairs, labels):
                        continue
                    g = MixedMultigraph(n, tuple(
                        EdgeRecord(i, a, b, False) if lab == 0 else
                        EdgeRecord(i, a, b, True) if lab == 1 else EdgeRecord(i, b, a, True)
                        for i, ((a, b), lab) in enumerate(zip(pairs, labels))))
                    for root in range(n):
                        if not any(lab == 0 and root in p for p, lab in zip(pairs, labels)):
                            continue
                        found = replay(g, root, validate=False)
                        if not found.x_conf or found.original_obs_holds:
                            continue
                        if strict and not found.corrected_obs_holds:
                            raise ContractViolation(f"corrected check fails at root {root}", graph=g, u=root)
                        results.append(found)
            if results and not exhaustive:
                return sorted(results, key=lambda h: h.key)
    return sorted(results, key=lambda h: h.key)
