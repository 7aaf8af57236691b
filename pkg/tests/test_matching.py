import itertools
import random
from fractions import Fraction
from math import comb

import pytest

from tightcycle.errors import InvalidArgumentError, PreconditionError
from tightcycle.hypergraph import Graph, complete_graph
from tightcycle.matching import (
    erdos_gallai_threshold,
    graphmeet_verify,
    largest_component,
    max_matching,
    max_matching_brute,
    reverify_graphmeet,
)

PETERSEN = Graph(
    10,
    [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5),
     (1, 6), (2, 7), (3, 8), (4, 9), (5, 10),
     (6, 8), (8, 10), (7, 10), (7, 9), (6, 9)],
)


def test_max_matching_small_cases():
    C5 = Graph(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)])
    assert max_matching(C5).size == 2
    assert max_matching(complete_graph(4)).size == 2
    assert max_matching(PETERSEN).size == 5 == max_matching_brute(PETERSEN)


def test_max_matching_is_valid_matching():
    rng = random.Random(1)
    for i in range(200):
        n = rng.randint(2, 12)
        edges = [e for e in itertools.combinations(range(1, n + 1), 2) if rng.random() < 0.5]
        G = Graph(n, edges)
        mm = max_matching(G)
        mm.validate(G)


def test_max_matching_optimal_vs_oracle():
    # blossom equals exhaustive search on >= 10^4 random graphs with n <= 10
    rng = random.Random(88)
    for i in range(10_000):
        n = rng.randint(2, 10)
        p = rng.uniform(0.05, 0.95)
        edges = [e for e in itertools.combinations(range(1, n + 1), 2) if rng.random() < p]
        G = Graph(n, edges)
        assert max_matching(G).size == max_matching_brute(G)


def test_max_matching_deterministic():
    G = Graph(8, [(1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (1, 8)])
    assert max_matching(G) == max_matching(G)


def test_erdos_gallai_threshold_values():
    assert erdos_gallai_threshold(5, 2) == 4  # max{3, 0 + 1*4}
    for N in (1, 4, 9, 20):
        assert erdos_gallai_threshold(N, 1) == 0
    with pytest.raises(InvalidArgumentError):
        erdos_gallai_threshold(0, 1)
    with pytest.raises(InvalidArgumentError):
        erdos_gallai_threshold(5, 0)
    with pytest.raises(InvalidArgumentError):
        erdos_gallai_threshold(4, 3)  # N < 2k-1


def test_dense_component_threshold_margin_sweep():
    # The dense-pair matching step relies on (5/9 - x^2) C(n,2) strictly
    # exceeding the matching threshold with N = (1-x)n and k = n/3, for all
    # 0 <= x < 1/3.  Sweep the rational grid x = i/n and record margins.
    for n in (9, 12, 15, 18, 21, 24, 30, 60, 90):
        k = n // 3
        for i in range(0, n // 3):
            x = Fraction(i, n)
            lhs = (Fraction(5, 9) - x * x) * comb(n, 2)
            N = int((1 - x) * n)
            rhs = erdos_gallai_threshold(N, k)
            assert lhs > rhs, f"margin failed at n={n}, x={x}"


def test_largest_component():
    K9 = complete_graph(9)
    cv, ce = largest_component(K9)
    assert cv == frozenset(range(1, 10))
    assert ce == K9.edge_set

    # K4 on {1..4} plus K3 on {5..7}
    edges = list(itertools.combinations(range(1, 5), 2)) + list(
        itertools.combinations(range(5, 8), 2)
    )
    cv, ce = largest_component(Graph(7, edges))
    assert cv == frozenset({1, 2, 3, 4})

    with pytest.raises(InvalidArgumentError):
        largest_component(Graph(4, []))


def test_largest_component_tiebreak():
    # two components of equal order: the lexicographically smaller one wins
    G = Graph(6, [(1, 2), (2, 3), (4, 5), (5, 6)])
    cv, _ = largest_component(G)
    assert cv == frozenset({1, 2, 3})


def test_largest_component_dense_covers_two_thirds():
    rng = random.Random(17)
    n = 12
    need = 5 * comb(n, 2) // 9 + 1
    for trial in range(50):
        e = rng.randint(need, comb(n, 2))
        G = Graph(n, rng.sample(list(itertools.combinations(range(1, n + 1), 2)), e))
        cv, _ = largest_component(G)
        assert 3 * len(cv) > 2 * n


def test_graphmeet_complete():
    K9 = complete_graph(9)
    report = graphmeet_verify(K9, K9)
    assert report.all_verdicts()
    assert report.shared_edge == (1, 2)
    assert report.matchings[0].size == 3
    assert reverify_graphmeet(K9, K9, report) == []


def test_graphmeet_random_dense_pairs():
    rng = random.Random(2)
    n = 9
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for trial in range(100):
        e1 = rng.randint(21, 36)
        e2 = rng.randint(21, 36)
        G1 = Graph(n, rng.sample(pairs, e1))
        G2 = Graph(n, rng.sample(pairs, e2))
        report = graphmeet_verify(G1, G2)
        assert report.all_verdicts()
        assert reverify_graphmeet(G1, G2, report) == []


def test_graphmeet_precondition_rejects():
    # K6 + K3 has 18 edges <= 20 = (5/9) C(9,2)
    edges = list(itertools.combinations(range(1, 7), 2)) + list(
        itertools.combinations(range(7, 10), 2)
    )
    G = Graph(9, edges)
    assert len(G.edges) == 18
    with pytest.raises(PreconditionError):
        graphmeet_verify(G, G)
    report = graphmeet_verify(G, G, observe=True)
    assert not report.precondition_met
    # observing still yields evidence; here the K6 component covers exactly
    # 2n/3 vertices, so the strict cover and edge-count verdicts fail
    assert not any(report.verdict_cover)
    assert not any(report.verdict_edges)


def test_graphmeet_rejects_mismatched_vertex_sets():
    with pytest.raises(InvalidArgumentError):
        graphmeet_verify(complete_graph(9), complete_graph(12))


def test_graphmeet_deterministic_report():
    rng = random.Random(3)
    pairs = list(itertools.combinations(range(1, 10), 2))
    G1 = Graph(9, rng.sample(pairs, 25))
    G2 = Graph(9, rng.sample(pairs, 30))
    assert graphmeet_verify(G1, G2) == graphmeet_verify(G1, G2)
