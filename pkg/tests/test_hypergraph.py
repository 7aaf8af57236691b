import io
import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from tightcycle.errors import InvalidArgumentError, ParseError
from tightcycle.generators import extremal, random_3graph
from tightcycle.hypergraph import (
    Graph,
    Hypergraph3,
    complete_3graph,
    read_graph,
    read_hypergraph,
    write_graph,
    write_hypergraph,
)


def test_degree_complete_k4():
    K4 = complete_3graph(4)
    assert K4.degree([1]) == 3  # each vertex misses exactly one triple
    assert K4.degree([1, 2]) == 2  # third vertex is 3 or 4


def test_degree_extremal_b_vertex():
    inst = extremal(9, 2)
    H = inst.hypergraph
    # brute-force count for a vertex of B, cross-checked with the formula
    for b in inst.b_side:
        count = sum(1 for e in H.edges if b in e)
        assert count == 13
    assert 13 == 28 - 15  # C(8,2) - C(6,2)


def test_degree_rejects_bad_sets():
    K4 = complete_3graph(4)
    with pytest.raises(InvalidArgumentError):
        K4.degree([1, 2, 3])
    with pytest.raises(InvalidArgumentError):
        K4.degree([0])
    with pytest.raises(InvalidArgumentError):
        K4.degree([5])


def test_min_degree():
    assert complete_3graph(5).min_degree(1) == 6
    assert Hypergraph3(5, []).min_degree(1) == 0
    assert extremal(9, 2).hypergraph.min_degree(1) == 13


def test_min_degree_invalid():
    H = Hypergraph3(1, [])
    with pytest.raises(InvalidArgumentError):
        H.min_degree(2)


def test_link_graph_k4():
    K4 = complete_3graph(4)
    L = K4.link_graph(1)
    assert L.n == 4  # the vertex stays, isolated
    assert L.edge_set == {(2, 3), (2, 4), (3, 4)}
    assert L.degree(1) == 0


def test_link_graph_isolated():
    H = Hypergraph3(4, [(1, 2, 3)])
    L = H.link_graph(4)
    assert L.n == 4 and len(L.edges) == 0


def test_link_graph_extremal_b_vertex():
    inst = extremal(9, 2)
    for v in inst.b_side[:2]:
        L = inst.hypergraph.link_graph(v)
        assert len(L.edges) == inst.hypergraph.degree([v]) == 13


def test_construction_rejects_bad_edges():
    with pytest.raises(InvalidArgumentError):
        Hypergraph3(4, [(1, 2, 2)])
    with pytest.raises(InvalidArgumentError):
        Hypergraph3(4, [(1, 2, 5)])
    with pytest.raises(InvalidArgumentError):
        Hypergraph3(4, [(1, 2, 3), (3, 2, 1)])
    with pytest.raises(InvalidArgumentError):
        Graph(3, [(1, 1)])


def test_read_basic():
    H = read_hypergraph("3 4\n1 2 3\n1 2 4\n")
    assert H.n == 4
    assert H.edges == ((1, 2, 3), (1, 2, 4))


def test_read_duplicate_edge_reports_line():
    with pytest.raises(ParseError) as err:
        read_hypergraph("3 3\n1 2 3\n1 2 3\n")
    assert err.value.line == 3


def test_read_comments_and_order():
    text = "# generated\n3 5\n\n5 1 3\n# interior comment\n2 4 5\n"
    H = read_hypergraph(text)
    assert H.edges == ((1, 3, 5), (2, 4, 5))


@pytest.mark.parametrize(
    "text,line",
    [
        ("2 4\n1 2 3\n", 1),  # wrong arity header for .3g
        ("3 x\n", 1),
        ("3 4\n1 2\n", 2),
        ("3 4\n1 2 9\n", 2),
        ("3 4\n1 two 3\n", 2),
    ],
)
def test_read_errors(text, line):
    with pytest.raises(ParseError) as err:
        read_hypergraph(text)
    assert err.value.line == line


def test_write_read_byte_identical():
    H = complete_3graph(5)
    text = write_hypergraph(H)
    assert write_hypergraph(read_hypergraph(text)) == text
    buf = io.StringIO()
    write_hypergraph(H, buf)
    assert buf.getvalue() == text


def test_roundtrip_random_instances():
    # 1000 random instances survive a full read/write/read cycle
    for i in range(1000):
        rng = random.Random(i)
        n = rng.randint(3, 12)
        H = random_3graph(n, rng.uniform(0, 1), i)
        text = write_hypergraph(H)
        again = read_hypergraph(text)
        assert again == H
        assert write_hypergraph(again) == text


def test_graph_roundtrip():
    G = Graph(5, [(1, 2), (4, 5), (2, 3)])
    assert read_graph(write_graph(G)) == G


@given(st.integers(3, 10), st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_handshake_and_link_consistency(n, seed):
    rng = random.Random(seed)
    H = random_3graph(n, rng.uniform(0, 1), seed)
    degsum = sum(H.degree([v]) for v in H.vertices())
    assert degsum == 3 * len(H.edges)
    if H.n > 0:
        assert H.min_degree(1) * H.n <= 3 * len(H.edges)
    v = rng.randint(1, n)
    L = H.link_graph(v)
    assert len(L.edges) == H.degree([v])
    for u, w in itertools.combinations(range(1, n + 1), 2):
        assert ((u, w) in L) == ((u, v, w) in H)


def test_pair_index_matches_pair_degree():
    H = random_3graph(9, 0.5, 99)
    for pair, edges in H.pair_index.items():
        assert len(edges) == H.degree(pair)
