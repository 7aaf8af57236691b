"""Graph matchings, component extraction, and the dense-pair meet verifier.

max_matching is a maximum-cardinality blossom search (general graphs; link
graphs are arbitrary).  graphmeet_verify checks, constructively, the four
facts that hold for the largest components of two graphs on a common vertex
set once both are denser than 5/9: each covers more than 2n/3 vertices,
each keeps more than (4/9)C(n,2) edges, each contains a matching of size
n/3, and the two components share an edge.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import InvalidArgumentError, PreconditionError
from .hypergraph import Edge2, Graph


@dataclass(frozen=True)
class GraphMatching:
    """A set of pairwise-disjoint edges of a host graph."""

    pairs: tuple[Edge2, ...]

    @property
    def size(self) -> int:
        return len(self.pairs)

    def covered_vertices(self) -> frozenset[int]:
        return frozenset(v for p in self.pairs for v in p)

    def validate(self, G: Graph) -> None:
        seen: set[int] = set()
        for p in self.pairs:
            if p not in G.edge_set:
                raise InvalidArgumentError(f"matching pair {p} is not an edge")
            if p[0] in seen or p[1] in seen:
                raise InvalidArgumentError(f"matching pair {p} reuses a vertex")
            seen.update(p)

    def truncated(self, k: int) -> "GraphMatching":
        if k > len(self.pairs):
            raise InvalidArgumentError(f"cannot truncate size {len(self.pairs)} to {k}")
        return GraphMatching(self.pairs[:k])


def _find_augmenting_path(n, adj, match, root):
    """One blossom phase: grow an alternating tree from `root`, contracting
    odd cycles via the `base` array; augments `match` in place on success."""
    p = [0] * (n + 1)
    base = list(range(n + 1))
    used = [False] * (n + 1)
    used[root] = True
    queue = deque([root])

    def lca(a, b):
        mark = [False] * (n + 1)
        while True:
            a = base[a]
            mark[a] = True
            if match[a] == 0:
                break
            a = p[match[a]]
        while True:
            b = base[b]
            if mark[b]:
                return b
            b = p[match[b]]

    def mark_path(v, b, child, blossom):
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[match[v]]] = True
            p[v] = child
            child = match[v]
            v = p[match[v]]

    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] != 0 and p[match[to]] != 0):
                cur = lca(v, to)
                blossom = [False] * (n + 1)
                mark_path(v, cur, to, blossom)
                mark_path(to, cur, v, blossom)
                for i in range(1, n + 1):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif p[to] == 0:
                p[to] = v
                if match[to] == 0:
                    while to != 0:
                        pv = p[to]
                        ppv = match[pv]
                        match[to] = pv
                        match[pv] = to
                        to = ppv
                    return True
                used[match[to]] = True
                queue.append(match[to])
    return False


def max_matching(G: Graph) -> GraphMatching:
    """A maximum-cardinality matching of G (deterministic for fixed input)."""
    n = G.n
    adj: list[list[int]] = [[] for _ in range(n + 1)]
    for u, w in G.edges:
        adj[u].append(w)
        adj[w].append(u)
    for lst in adj:
        lst.sort()
    match = [0] * (n + 1)
    for v in range(1, n + 1):
        if match[v] == 0:
            _find_augmenting_path(n, adj, match, v)
    pairs = tuple(sorted((v, match[v]) for v in range(1, n + 1) if 0 < v < match[v]))
    return GraphMatching(pairs)


def max_matching_brute(G: Graph) -> int:
    """Exhaustive maximum matching size; test oracle, exponential time."""
    adj = G.adjacency

    def best(available: frozenset[int]) -> int:
        for v in sorted(available):
            ns = [u for u in adj[v] if u in available]
            # v is either unmatched (drop it) or matched to one neighbour
            without = best(available - {v})
            with_v = 0
            for u in ns:
                with_v = max(with_v, 1 + best(available - {v, u}))
            return max(without, with_v)
        return 0

    return best(frozenset(range(1, G.n + 1)))


def erdos_gallai_threshold(N: int, k: int) -> int:
    """Edge count above which every graph on N vertices has a matching of size k.

    Returns max{C(2k-1, 2), C(k-1, 2) + (k-1)(N-k+1)}; the guarantee is for
    e(G) strictly above the returned value.
    """
    if k < 1 or N < 1:
        raise InvalidArgumentError(f"need k >= 1 and N >= 1, got N={N}, k={k}")
    if N < 2 * k - 1:
        raise InvalidArgumentError(f"threshold needs N >= 2k-1, got N={N}, k={k}")
    return max(comb(2 * k - 1, 2), comb(k - 1, 2) + (k - 1) * (N - k + 1))


def connected_components(G: Graph) -> list[tuple[frozenset[int], frozenset[Edge2]]]:
    """All connected components as (vertex set, edge set) pairs.

    Singletons are included.  Components are listed by smallest contained
    vertex, so the output is deterministic.
    """
    adj = G.adjacency
    seen: set[int] = set()
    out: list[tuple[frozenset[int], frozenset[Edge2]]] = []
    for v in range(1, G.n + 1):
        if v in seen:
            continue
        queue = deque([v])
        seen.add(v)
        vs: set[int] = {v}
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    vs.add(y)
                    queue.append(y)
        es = frozenset(e for e in G.edges if e[0] in vs)
        out.append((frozenset(vs), es))
    return out


def largest_component(G: Graph) -> tuple[frozenset[int], frozenset[Edge2]]:
    """The component with the most vertices; ties go to the lexicographically
    smallest vertex set.  Raises on an edgeless graph."""
    if not G.edges:
        raise InvalidArgumentError("no component: graph has no edges")
    comps = connected_components(G)
    return min(comps, key=lambda c: (-len(c[0]), tuple(sorted(c[0]))))


def induced_subgraph(G: Graph, vertices: frozenset[int]) -> Graph:
    return Graph(G.n, [e for e in G.edges if e[0] in vertices and e[1] in vertices])


@dataclass(frozen=True)
class GraphMeetReport:
    """Constructive evidence for the four dense-pair component facts.

    Verdicts are recomputable from the evidence fields; alpha and beta are
    the uncovered-vertex proportions 1 - v(C_i)/n.
    """

    n: int
    precondition_met: bool
    edge_counts: tuple[int, int]
    component_vertices: tuple[frozenset[int], frozenset[int]]
    component_edges: tuple[frozenset[Edge2], frozenset[Edge2]]
    matchings: tuple[GraphMatching, GraphMatching]
    shared_edge: Edge2 | None
    verdict_cover: tuple[bool, bool]
    verdict_edges: tuple[bool, bool]
    verdict_matching: tuple[bool, bool]
    verdict_shared: bool
    alpha: Fraction
    beta: Fraction

    def all_verdicts(self) -> bool:
        return (
            all(self.verdict_cover)
            and all(self.verdict_edges)
            and all(self.verdict_matching)
            and self.verdict_shared
        )

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "precondition_met": self.precondition_met,
            "edge_counts": list(self.edge_counts),
            "component_sizes": [len(v) for v in self.component_vertices],
            "component_edge_counts": [len(e) for e in self.component_edges],
            "matching_sizes": [m.size for m in self.matchings],
            "shared_edge": list(self.shared_edge) if self.shared_edge else None,
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "verdicts": {
                "cover": list(self.verdict_cover),
                "edges": list(self.verdict_edges),
                "matching": list(self.verdict_matching),
                "shared": self.verdict_shared,
            },
            "all_true": self.all_verdicts(),
        }


def graphmeet_verify(G1: Graph, G2: Graph, observe: bool = False) -> GraphMeetReport:
    """Check the four largest-component facts for a pair of dense graphs.

    Preconditions: common vertex count n with 3 | n, and both edge counts
    strictly above (5/9)C(n,2).  With observe=True a failed precondition is
    recorded in the report instead of raising, for tightness exploration.
    """
    if G1.n != G2.n:
        raise InvalidArgumentError(f"vertex counts differ: {G1.n} vs {G2.n}")
    n = G1.n
    bound = 5 * comb(n, 2)  # compare 9*e > bound
    pre = n % 3 == 0 and 9 * len(G1.edges) > bound and 9 * len(G2.edges) > bound
    if not pre and not observe:
        raise PreconditionError(
            f"need 3 | n and e(G_i) > (5/9)C({n},2); got e = "
            f"{len(G1.edges)}, {len(G2.edges)}"
        )

    comps = []
    matchings = []
    v_ok = []
    e_ok = []
    m_ok = []
    for G in (G1, G2):
        cv, ce = largest_component(G)
        comps.append((cv, ce))
        mm = max_matching(induced_subgraph(G, cv))
        target = n // 3
        if mm.size >= target and n % 3 == 0:
            mm = mm.truncated(target)
            m_ok.append(True)
        else:
            m_ok.append(False)
        matchings.append(mm)
        v_ok.append(3 * len(cv) > 2 * n)
        e_ok.append(9 * len(ce) > 4 * comb(n, 2))

    shared = sorted(comps[0][1] & comps[1][1])
    shared_edge = shared[0] if shared else None

    return GraphMeetReport(
        n=n,
        precondition_met=pre,
        edge_counts=(len(G1.edges), len(G2.edges)),
        component_vertices=(comps[0][0], comps[1][0]),
        component_edges=(comps[0][1], comps[1][1]),
        matchings=(matchings[0], matchings[1]),
        shared_edge=shared_edge,
        verdict_cover=(v_ok[0], v_ok[1]),
        verdict_edges=(e_ok[0], e_ok[1]),
        verdict_matching=(m_ok[0], m_ok[1]),
        verdict_shared=shared_edge is not None,
        alpha=Fraction(n - len(comps[0][0]), n) if n else Fraction(0),
        beta=Fraction(n - len(comps[1][0]), n) if n else Fraction(0),
    )


def reverify_graphmeet(G1: Graph, G2: Graph, report: GraphMeetReport) -> list[str]:
    """Independently re-check the evidence in a GraphMeetReport.

    Returns a list of discrepancy strings (empty when everything holds).
    Uses plain DFS component recomputation rather than the verifier's path.
    """
    problems: list[str] = []
    for i, G in enumerate((G1, G2)):
        cv, ce = report.component_vertices[i], report.component_edges[i]
        # evidence edges must live in G and inside the claimed vertex set
        for e in ce:
            if e not in G.edge_set:
                problems.append(f"G{i+1}: component edge {e} not in graph")
            if e[0] not in cv or e[1] not in cv:
                problems.append(f"G{i+1}: component edge {e} leaves vertex set")
        # connectivity and maximality via recomputation
        comps = connected_components(G)
        if (cv, ce) not in comps:
            problems.append(f"G{i+1}: claimed component is not a component")
        if any(len(c[0]) > len(cv) for c in comps):
            problems.append(f"G{i+1}: claimed component is not largest")
        mm = report.matchings[i]
        try:
            mm.validate(G)
        except InvalidArgumentError as exc:
            problems.append(f"G{i+1}: {exc}")
        if report.verdict_matching[i]:
            if mm.size != report.n // 3:
                problems.append(f"G{i+1}: matching evidence has size {mm.size}")
            if any(p not in ce for p in mm.pairs):
                problems.append(f"G{i+1}: matching leaves the component")
    if report.verdict_shared:
        se = report.shared_edge
        if se is None or se not in report.component_edges[0] or se not in report.component_edges[1]:
            problems.append("shared edge evidence invalid")
    return problems
