import itertools
import random

import pytest
from hypothesis import given, settings

from mixedorient.driver import orient_full
from mixedorient.generate import corpus_graph, corpus_params, gen_valid
from mixedorient.graph import (
    UNREACHABLE,
    GraphError,
    OrientationPlan,
    apply_plan,
    is_valid_input,
    parse_graph,
    radius_center,
    serialize_graph,
)
from mixedorient.oracle import (
    brute_oriented_radius,
    hunt_counterexample,
    plan_from_index,
    plan_radius,
    replay,
)

from .conftest import g, valid_graphs
from .oracles import radius_fw


def exhaustive_radius(graph):
    """Minimum Floyd-Warshall radius over every orientation, in plain Python."""
    und = sorted(graph.undirected_edges, key=lambda e: e.id)
    best = UNREACHABLE
    for senses in itertools.product((0, 1), repeat=len(und)):
        plan = OrientationPlan({e.id: (e.tail, e.head) if s else (e.head, e.tail)
                                for e, s in zip(und, senses)})
        best = min(best, radius_fw(apply_plan(graph, plan)))
    return best


class TestBrute:
    def test_triangle(self, triangle):
        rad, plan = brute_oriented_radius(triangle)
        assert rad == 2
        assert radius_center(apply_plan(triangle, plan))[0] == 2

    def test_c4(self, c4):
        rad, plan = brute_oriented_radius(c4)
        assert rad == 3
        # bit k = 0 orients low -> high, so 7 is the first index closing the cycle
        assert plan.assignments == plan_from_index(c4, 7).assignments

    def test_c5(self):
        assert brute_oriented_radius(g("n 5;e 0 1;e 1 2;e 2 3;e 3 4;e 4 0"))[0] == 4

    def test_path(self, path3):
        assert brute_oriented_radius(path3) == (UNREACHABLE, None)

    def test_no_undirected_edges(self, digon):
        rad, plan = brute_oriented_radius(digon)
        assert rad == 1 and plan.assignments == {}

    def test_cap(self):
        big = g("n 2;" + ";".join(["e 0 1"] * 5))
        with pytest.raises(GraphError, match="cap"):
            brute_oriented_radius(big, cap=4)
        assert brute_oriented_radius(big, cap=5)[0] == 1

    def test_plan_from_index(self, triangle):
        assert plan_from_index(triangle, 0).assignments == {0: (0, 1), 1: (1, 2), 2: (0, 2)}
        assert plan_from_index(triangle, 0b101).assignments == {0: (1, 0), 1: (1, 2), 2: (2, 0)}

    @given(valid_graphs(max_n=6))
    @settings(max_examples=40)
    def test_matches_exhaustive_search(self, graph):
        if len(graph.undirected_edges) <= 8:
            assert brute_oriented_radius(graph)[0] == exhaustive_radius(graph)

    def test_plan_radius_spot_checks(self):
        rng = random.Random(2024)
        for k in range(20):
            graph = corpus_graph(k + 1, max_n=8)
            index = rng.randrange(1 << len(graph.undirected_edges))
            oriented = apply_plan(graph, plan_from_index(graph, index))
            assert plan_radius(graph, index) == radius_fw(oriented)

    @given(valid_graphs(max_n=7))
    @settings(max_examples=40)
    def test_below_driver(self, graph):
        if len(graph.undirected_edges) <= 12:
            assert brute_oriented_radius(graph)[0] <= orient_full(graph)[1].oriented_radius

    @given(valid_graphs(max_n=7))
    @settings(max_examples=40)
    def test_finite_on_valid_input(self, graph):
        assert brute_oriented_radius(graph)[0] != UNREACHABLE


class TestGenerator:
    def test_counts(self):
        graph = gen_valid(5, 2, 0.0, 1)
        assert graph.n == 5
        assert len(graph.edges) == 7
        assert not graph.arcs
        assert is_valid_input(graph)

    def test_deterministic(self):
        assert serialize_graph(gen_valid(9, 5, 0.5, 77)) == serialize_graph(gen_valid(9, 5, 0.5, 77))

    def test_seed_matters(self):
        assert serialize_graph(gen_valid(9, 5, 0.5, 1)) != serialize_graph(gen_valid(9, 5, 0.5, 2))

    def test_directed_fraction_directs_something(self):
        assert gen_valid(8, 8, 1.0, 3).arcs

    def test_bad_arguments(self):
        with pytest.raises(GraphError):
            gen_valid(2, 0, 0.0, 1)
        with pytest.raises(GraphError):
            gen_valid(4, 0, 1.5, 1)

    def test_parameter_grid_always_valid(self):
        count = 0
        for n in range(3, 13):
            for extra in (0, 1, n // 2, n):
                for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
                    for seed in range(5):
                        assert is_valid_input(gen_valid(n, extra, frac, seed))
                        count += 1
        assert count == 1000

    def test_corpus_params(self):
        for seed in range(1, 200):
            n, extra, frac = corpus_params(seed)
            assert 3 <= n <= 12 and 0 <= extra <= n
            assert frac in (0.0, 0.25, 0.5, 0.75, 1.0)
        assert corpus_params(5) == corpus_params(5)


class TestHunt:
    def test_too_small(self):
        assert hunt_counterexample(max_n=2) == []

    def test_limit(self):
        with pytest.raises(GraphError):
            hunt_counterexample(max_n=8)

    def test_no_unwitnessed_conflict_on_small_graphs(self):
        assert hunt_counterexample(max_n=5, max_edges=7) == []

    @pytest.mark.slow
    def test_six_vertices(self):
        results = hunt_counterexample(max_n=6, max_edges=8)
        assert results
        assert [r.key for r in results] == sorted(r.key for r in results)
        for res in results:
            assert res.x_conf and res.x_in and res.x_out
            assert not res.original_obs_holds and res.corrected_obs_holds
            again = replay(parse_graph(serialize_graph(res.graph)), res.root)
            assert again.partition == res.partition
            assert (again.original_obs_holds, again.corrected_obs_holds) == (False, True)

    def test_replay_conflict_without_in_witness(self):
        res = replay(g("n 7;e 5 1;e 1 4;a 0 4;a 2 0;e 2 3;e 3 6;a 5 6;a 6 1;e 4 6;e 0 6"), 6)
        assert res.partition == ({4, 5}, {1, 3}, {0})
        assert not res.original_obs_holds and res.corrected_obs_holds
