"""Seeded random generator of valid inputs (strongly connected, no undirected bridges).

All randomness comes from ``random.Random(seed)`` (Mersenne Twister), whose
output for a given integer seed is fixed across platforms and Python versions.
"""
from __future__ import annotations

import random

from .graph import EdgeRecord, GraphError, MixedMultigraph, is_strongly_connected


def gen_valid(n: int, extra_edges: int, directed_fraction: float, seed: int) -> MixedMultigraph:
    """Hamiltonian cycle plus ``extra_edges`` chords or parallel instances, partly directed.

    A ``directed_fraction`` sample of the edges is offered a random direction,
    which is kept only if the graph stays strongly connected.  The underlying
    multigraph contains a spanning cycle, so no edge is ever a bridge.
    """
    if n < 3:
        raise GraphError("gen_valid needs n >= 3")
    if not 0.0 <= directed_fraction <= 1.0:
        raise GraphError("directed_fraction must lie in [0, 1]")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    pairs = [(order[i], order[(i + 1) % n]) for i in range(n)]
    for _ in range(extra_edges):
        a, b = rng.sample(range(n), 2)
        pairs.append((a, b))
    edges = [EdgeRecord(i, a, b, False) for i, (a, b) in enumerate(pairs)]
    g = MixedMultigraph(n, tuple(edges))

    for i in rng.sample(range(len(edges)), round(directed_fraction * len(edges))):
        e = g.by_id[i]
        tail, head = (e.tail, e.head) if rng.random() < 0.5 else (e.head, e.tail)
        candidate = g.with_edges(x.oriented(tail, head) if x.id == i else x for x in g.edges)
        if is_strongly_connected(candidate):
            g = candidate
    return g


def corpus_params(seed: int, max_n: int = 12) -> tuple[int, int, float]:
    """``(n, extra_edges, directed_fraction)`` for corpus instance ``seed``."""
    rng = random.Random(f"corpus-{seed}")
    n = rng.randint(3, max_n)
    extra = rng.randint(0, n)
    frac = rng.choice((0.0, 0.25, 0.5, 0.75, 1.0))
    return n, extra, frac


def corpus_graph(seed: int, max_n: int = 12) -> MixedMultigraph:
    return gen_valid(*corpus_params(seed, max_n), seed=seed)
