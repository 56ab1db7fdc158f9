import pytest
from hypothesis import settings
from hypothesis import strategies as st

from mixedorient.generate import gen_valid
from mixedorient.graph import EdgeRecord, MixedMultigraph, parse_graph

# fixed example sequences keep every run of the suite reproducible
settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")


def g(text: str) -> MixedMultigraph:
    """Parse a graph written with ';' as line separator."""
    return parse_graph(text.replace(";", "\n"))


@pytest.fixture
def triangle():
    return g("n 3;e 0 1;e 1 2;e 2 0")


@pytest.fixture
def digon():
    return g("n 2;a 0 1;a 1 0")


@pytest.fixture
def c4():
    return g("n 4;e 0 1;e 1 2;e 2 3;e 3 0")


@pytest.fixture
def path3():
    return g("n 3;e 0 1;e 1 2")


@st.composite
def mixed_graphs(draw, min_n=1, max_n=7, max_m=12):
    """Arbitrary mixed multigraphs, possibly disconnected."""
    n = draw(st.integers(min_n, max_n))
    if n < 2:
        return MixedMultigraph(n)
    m = draw(st.integers(0, max_m))
    edges = []
    for i in range(m):
        a = draw(st.integers(0, n - 1))
        b = draw(st.integers(0, n - 2))
        b = b + 1 if b >= a else b
        edges.append(EdgeRecord(i, a, b, draw(st.booleans())))
    return MixedMultigraph(n, tuple(edges))


@st.composite
def valid_graphs(draw, max_n=9):
    n = draw(st.integers(3, max_n))
    extra = draw(st.integers(0, n))
    frac = draw(st.sampled_from([0.0, 0.25, 0.5, 0.75, 1.0]))
    seed = draw(st.integers(0, 2**31))
    return gen_valid(n, extra, frac, seed)
