"""Cluster partitions, relative densities, reduced graphs, and the degree
inheritance inequality.

A weak slice is a seeded random equipartition of the vertex set into t
clusters of equal size m (after deleting the n mod t remainder), with
complete bipartite pair graphs between clusters.  It stands in for a
genuine regular partition at desk scale: densities of cluster triples are
exact counts over the m^3 crossing triples, and "regular" labels come from
a sampled search for deviating induced sub-polyads, which is one-sided
evidence only.  The reduced-graph inequality checked by reduced_degree_check is a
counting fact and must hold for every density/label configuration, however
adversarial.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .errors import InvalidArgumentError
from .generators import derive_seed
from .hypergraph import Hypergraph3

EXACT_DENSITY_MAX_CUBE = 1_000_000  # keep Fractions while m^3 is below this

Triple = tuple[int, int, int]  # sorted triple of 0-based cluster ids


@dataclass(frozen=True)
class WeakSlice:
    """Equipartition of [1, n] minus a deleted remainder into t clusters.

    pair_graphs is None for the default complete bipartite pair setting;
    otherwise it maps a cluster pair (i, j), i < j, to the allowed vertex
    pairs between those clusters.
    """

    n: int
    clusters: tuple[tuple[int, ...], ...]
    deleted_vertices: tuple[int, ...]
    pair_graphs: dict[tuple[int, int], frozenset[tuple[int, int]]] | None = None

    @property
    def t(self) -> int:
        return len(self.clusters)

    @property
    def m(self) -> int:
        return len(self.clusters[0]) if self.clusters else 0

    def cluster_lookup(self) -> dict[int, int]:
        """vertex -> cluster id; deleted vertices are absent."""
        out: dict[int, int] = {}
        for cid, cl in enumerate(self.clusters):
            for v in cl:
                out[v] = cid
        return out

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "t": self.t,
            "m": self.m,
            "clusters": [list(c) for c in self.clusters],
            "deleted": list(self.deleted_vertices),
        }


def build_weak_slice(H: Hypergraph3, t: int, seed: int) -> WeakSlice:
    """Seeded uniform equipartition with complete pair graphs."""
    if t < 3:
        raise InvalidArgumentError(f"need t >= 3, got {t}")
    if t > H.n:
        raise InvalidArgumentError(f"t={t} exceeds n={H.n}")
    rng = random.Random(seed)
    order = list(range(1, H.n + 1))
    rng.shuffle(order)
    r = H.n % t
    deleted = tuple(sorted(order[:r]))
    rest = order[r:]
    m = len(rest) // t
    clusters = tuple(tuple(sorted(rest[i * m : (i + 1) * m])) for i in range(t))
    return WeakSlice(n=H.n, clusters=clusters, deleted_vertices=deleted)


def _check_triple(S: WeakSlice, X: Iterable[int]) -> Triple:
    xs = tuple(sorted(X))
    if len(xs) != 3 or len(set(xs)) != 3:
        raise InvalidArgumentError(f"X must be 3 distinct clusters, got {xs}")
    if xs[0] < 0 or xs[-1] >= S.t:
        raise InvalidArgumentError(f"cluster ids {xs} not inside [0, {S.t - 1}]")
    return xs  # type: ignore[return-value]


def _supported_pairs(S: WeakSlice, i: int, j: int):
    """Allowed pairs between clusters i < j, or None meaning all of them."""
    if S.pair_graphs is None:
        return None
    return S.pair_graphs.get((i, j), frozenset())


def relative_density(
    H: Hypergraph3, S: WeakSlice, X: Iterable[int]
) -> Fraction | float:
    """Fraction of pair-supported crossing triples over X that are edges of H.

    With complete pair graphs the denominator is m^3.  A sparse polyad that
    supports no triple has density 0 by convention.  Exact rationals while
    m^3 stays small; floats beyond.
    """
    xs = _check_triple(S, X)
    num, den = _polyad_counts(H, S, xs, [S.clusters[c] for c in xs])
    if den == 0:
        return Fraction(0) if S.m ** 3 <= EXACT_DENSITY_MAX_CUBE else 0.0
    if S.m ** 3 <= EXACT_DENSITY_MAX_CUBE:
        return Fraction(num, den)
    return num / den


def _polyad_counts(
    H: Hypergraph3,
    S: WeakSlice,
    xs: Triple,
    parts: Sequence[Sequence[int]],
) -> tuple[int, int]:
    """(edges of H inside parts, pair-supported triples inside parts)."""
    i, j, k = xs
    pij = _supported_pairs(S, i, j)
    pik = _supported_pairs(S, i, k)
    pjk = _supported_pairs(S, j, k)
    ai, aj, ak = (set(p) for p in parts)
    if pij is None and pik is None and pjk is None:
        den = len(ai) * len(aj) * len(ak)
        num = 0
        for e in H.edges:
            a, b, c = e
            for x, y, z in itertools.permutations((a, b, c)):
                if x in ai and y in aj and z in ak:
                    num += 1
                    break
        return num, den
    num = den = 0
    for x in sorted(ai):
        for y in sorted(aj):
            if pij is not None and (min(x, y), max(x, y)) not in pij:
                continue
            for z in sorted(ak):
                if pik is not None and (min(x, z), max(x, z)) not in pik:
                    continue
                if pjk is not None and (min(y, z), max(y, z)) not in pjk:
                    continue
                den += 1
                if (x, y, z) in H:
                    num += 1
    return num, den


def sub_polyad_density(
    H: Hypergraph3,
    S: WeakSlice,
    X: Iterable[int],
    subsets: Sequence[Sequence[int]],
) -> Fraction | float:
    """Density of the sub-polyad induced by one vertex subset per cluster of X."""
    xs = _check_triple(S, X)
    for cid, sub in zip(xs, subsets):
        cluster = set(S.clusters[cid])
        if not set(sub) <= cluster:
            raise InvalidArgumentError(f"subset {sub} not inside cluster {cid}")
    num, den = _polyad_counts(H, S, xs, subsets)
    if den == 0:
        return Fraction(0)
    size = len(subsets[0]) * len(subsets[1]) * len(subsets[2])
    if size <= EXACT_DENSITY_MAX_CUBE:
        return Fraction(num, den)
    return num / den


@dataclass(frozen=True)
class IrregularityWitness:
    """A re-verifiable deviation: an induced sub-polyad whose density differs
    from the reference by more than eps while supporting enough triples."""

    X: Triple
    subsets: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    observed_density: Fraction | float
    reference_density: Fraction | float
    eps: float

    def gap(self) -> float:
        return abs(float(self.observed_density) - float(self.reference_density))


def irregularity_witness(
    H: Hypergraph3,
    S: WeakSlice,
    X: Iterable[int],
    d,
    eps: float,
    samples: int,
    seed: int,
) -> IrregularityWitness | None:
    """Sampled search for a witness that the polyad over X is not eps-regular.

    Draws `samples` random vertex-subset-induced sub-polyads Q with
    |K_3(Q)| > eps * |K_3(polyad)| and returns the first whose density
    deviates from d by more than eps.  Returning None is NOT a proof of
    regularity, only absence of sampled evidence.
    """
    xs = _check_triple(S, X)
    if not 0 < eps < 1:
        raise InvalidArgumentError(f"eps must be in (0,1), got {eps}")
    if samples < 1:
        raise InvalidArgumentError(f"samples must be >= 1, got {samples}")
    rng = random.Random(seed)
    parts = [list(S.clusters[c]) for c in xs]
    full_support = S.m ** 3  # complete pair graphs; explicit ones recount below
    if S.pair_graphs is not None:
        _, full_support = _polyad_counts(H, S, xs, parts)
    for _ in range(samples):
        subs = []
        for part in parts:
            size = rng.randint(1, len(part))
            subs.append(tuple(sorted(rng.sample(part, size))))
        if len(subs[0]) * len(subs[1]) * len(subs[2]) <= eps * full_support:
            continue
        num, den = _polyad_counts(H, S, xs, subs)
        if den == 0 or den <= eps * full_support:
            continue
        dq = Fraction(num, den)
        if abs(float(dq) - float(d)) > eps:
            return IrregularityWitness(
                X=xs,
                subsets=(subs[0], subs[1], subs[2]),
                observed_density=dq,
                reference_density=d,
                eps=eps,
            )
    return None


@dataclass(frozen=True)
class ReducedGraph:
    """Weighted reduced 3-graph on clusters plus regularity labels.

    densities maps every 3-set of clusters to its relative density; the
    thresholded reduced graph keeps the triples that are labeled regular
    and have density at least d_threshold.
    """

    t: int
    m: int
    densities: dict[Triple, Fraction | float]
    regular: dict[Triple, bool]
    d_threshold: Fraction | float

    def __post_init__(self):
        expected = set(itertools.combinations(range(self.t), 3))
        if set(self.densities) != expected or set(self.regular) != expected:
            raise InvalidArgumentError("densities/regular must cover all cluster triples")
        for X, dv in self.densities.items():
            if not 0 <= dv <= 1:
                raise InvalidArgumentError(f"density {dv} at {X} outside [0,1]")

    def thresholded_edges(self) -> list[Triple]:
        return [
            X
            for X in sorted(self.densities)
            if self.regular[X] and self.densities[X] >= self.d_threshold
        ]

    def relative_degree_weighted(self, Y: int) -> Fraction | float:
        """Sum of densities over triples containing Y, over C(t-1,2)."""
        self._check_cluster(Y)
        total = sum(dv for X, dv in self.densities.items() if Y in X)
        return _ratio(total, comb(self.t - 1, 2))

    def relative_degree_thresholded(self, Y: int) -> Fraction:
        self._check_cluster(Y)
        count = sum(1 for X in self.thresholded_edges() if Y in X)
        return Fraction(count, comb(self.t - 1, 2))

    def zeta(self, Y: int) -> Fraction:
        """Proportion of cluster triples containing Y labeled irregular."""
        self._check_cluster(Y)
        bad = sum(1 for X, ok in self.regular.items() if Y in X and not ok)
        return Fraction(bad, comb(self.t - 1, 2))

    def irregular_count(self, Y: int) -> int:
        return sum(1 for X, ok in self.regular.items() if Y in X and not ok)

    def _check_cluster(self, Y: int) -> None:
        if self.t < 3:
            raise InvalidArgumentError(f"need t >= 3, got {self.t}")
        if not 0 <= Y < self.t:
            raise InvalidArgumentError(f"cluster {Y} not inside [0, {self.t - 1}]")

    def to_json_dict(self) -> dict:
        # colex order: sort by reversed triple
        triples = sorted(self.densities, key=lambda X: tuple(reversed(X)))
        return {
            "t": self.t,
            "m": self.m,
            "d_threshold": str(self.d_threshold),
            "triples": [
                {
                    "X": list(X),
                    "d": str(self.densities[X]),
                    "regular": self.regular[X],
                }
                for X in triples
            ],
        }


def _ratio(total, denom: int):
    if isinstance(total, int):
        return Fraction(total, denom)
    return total / denom


def zeta(R: ReducedGraph, Y: int) -> Fraction:
    return R.zeta(Y)


def relative_degree(obj: "ReducedGraph | Hypergraph3", Y: int, weighted: bool = True):
    """Relative degree of Y: a vertex degree over C(n-1,2) for a hypergraph,
    or the (weighted or thresholded) cluster degree for a reduced graph."""
    if isinstance(obj, Hypergraph3):
        return relative_degree_vertex(obj, Y)
    if weighted:
        return obj.relative_degree_weighted(Y)
    return obj.relative_degree_thresholded(Y)


def relative_degree_vertex(H: Hypergraph3, v: int) -> Fraction:
    """Degree of v over C(n-1, 2)."""
    return Fraction(H.degree([v]), comb(H.n - 1, 2))


def mean_relative_degree(H: Hypergraph3, vertices: Iterable[int]) -> Fraction:
    vs = list(vertices)
    if not vs:
        raise InvalidArgumentError("mean relative degree of an empty set")
    return sum(relative_degree_vertex(H, v) for v in vs) / len(vs)


@dataclass(frozen=True)
class ClusterDegreeReport:
    cluster: int
    lhs: Fraction | float  # relative degree in the thresholded reduced graph
    rhs: Fraction | float  # weighted relative degree - d - zeta
    ok: bool


def reduced_degree_check(R: ReducedGraph) -> list[ClusterDegreeReport]:
    """Per-cluster check of deg(Y; R_d) >= deg(Y; R) - d - zeta(Y).

    This is a counting identity over the stored densities and labels; it
    must hold for every configuration, which is exactly what the verifier
    campaigns assert.
    """
    out = []
    for Y in range(R.t):
        lhs = R.relative_degree_thresholded(Y)
        rhs = R.relative_degree_weighted(Y) - R.d_threshold - R.zeta(Y)
        out.append(ClusterDegreeReport(cluster=Y, lhs=lhs, rhs=rhs, ok=lhs >= rhs))
    return out


def build_reduced_graph(
    H: Hypergraph3,
    S: WeakSlice,
    d_threshold,
    eps: float,
    samples: int,
    seed: int,
) -> ReducedGraph:
    """Measure all triple densities and label regularity by witness search.

    A triple is labeled regular iff no deviating sub-polyad was found in
    `samples` draws against its own measured density (one-sided evidence).
    """
    densities: dict[Triple, Fraction | float] = {}
    regular: dict[Triple, bool] = {}
    for idx, X in enumerate(itertools.combinations(range(S.t), 3)):
        dv = relative_density(H, S, X)
        densities[X] = dv
        w = irregularity_witness(H, S, X, dv, eps, samples, derive_seed(seed, idx))
        regular[X] = w is None
    return ReducedGraph(
        t=S.t, m=S.m, densities=densities, regular=regular, d_threshold=d_threshold
    )


def good_clusters(R: ReducedGraph, threshold_fraction) -> tuple[int, ...]:
    """Clusters lying in fewer than threshold_fraction * C(t,2) irregular
    triples, trimmed largest-id-first to a multiple of 3."""
    cap = threshold_fraction * comb(R.t, 2)
    kept = [Y for Y in range(R.t) if R.irregular_count(Y) < cap]
    while len(kept) % 3 != 0:
        kept.pop()  # kept is ascending, so this removes the largest id
    return tuple(kept)
