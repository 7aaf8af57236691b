"""Fractional matchings over 3-graphs: exact LP optima, perfect-matching
decisions with infeasibility certificates, and the degree-conditioned
construction of a tightly-connected perfect fractional matching.

A fractional matching assigns each edge a weight in [0,1] with every
vertex loaded at most 1; it is perfect when the total weight is exactly
n/3, which forces every vertex load to equal 1.  Perfection is therefore
the feasibility of {A w = 1, w >= 0} over the restricted edge set, and
when it fails there is a vector a with a.1 > 0 and sum_{v in e} a_v <= 0
for every admissible edge.  We recover such a vector from the optimal
dual y of the maximization LP as a = 1 - 3y and re-verify it in exact
arithmetic before returning it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence, Union

from .errors import (
    InvalidArgumentError,
    InvariantViolation,
    PreconditionError,
    SizeLimitError,
)
from .hypergraph import Edge3, Hypergraph3
from .lp import solve_matching_lp, solve_matching_lp_float
from .matching import induced_subgraph, largest_component, max_matching
from .tight import TightComponentLabeling, component_star, tight_components

EXACT_LP_MAX_N = 30


@dataclass(frozen=True)
class FractionalMatching:
    """Nonzero edge weights of a fractional matching on n vertices."""

    n: int
    weights: dict[Edge3, Fraction]
    total_weight: Fraction
    support_component: int | None = None
    approximate: bool = False

    @property
    def perfect(self) -> bool:
        if self.approximate:
            return abs(self.total_weight - self.n / 3) <= 1e-9
        return 3 * self.total_weight == self.n

    def vertex_loads(self) -> dict[int, Fraction]:
        loads: dict[int, Fraction] = {v: Fraction(0) for v in range(1, self.n + 1)}
        for e, w in self.weights.items():
            for v in e:
                loads[v] += w
        return loads

    def validate(self, H: Hypergraph3, labeling: TightComponentLabeling | None = None) -> None:
        """Exact feasibility check against the host hypergraph.

        Raises InvariantViolation on the first broken constraint; intended
        to run on everything this module returns.
        """
        if self.n != H.n:
            raise InvariantViolation(f"matching over n={self.n} but host has n={H.n}")
        total = Fraction(0)
        for e, w in self.weights.items():
            if e not in H.edge_set:
                raise InvariantViolation(f"weighted edge {e} is not an edge", witness=e)
            if not 0 <= w <= 1:
                raise InvariantViolation(f"weight {w} outside [0,1]", witness=e)
            total += w
        if not self.approximate and total != self.total_weight:
            raise InvariantViolation(f"total weight {self.total_weight} != {total}")
        for v, load in self.vertex_loads().items():
            if self.approximate:
                if load > 1 + 1e-9:
                    raise InvariantViolation(f"vertex {v} overloaded: {load}", witness=v)
            elif load > 1:
                raise InvariantViolation(f"vertex {v} overloaded: {load}", witness=v)
        if self.support_component is not None:
            lab = labeling or tight_components(H)
            for e in self.weights:
                if lab.labels[e] != self.support_component:
                    raise InvariantViolation(
                        f"support edge {e} outside component {self.support_component}",
                        witness=e,
                    )

    def to_json_dict(self) -> dict:
        return {
            "total_weight": str(self.total_weight),
            "edges": [
                {"e": list(e), "w": str(w)}
                for e, w in sorted(self.weights.items())
            ],
            "component": self.support_component,
            "approximate": self.approximate,
            "perfect": self.perfect,
        }


@dataclass(frozen=True)
class FarkasCertificate:
    """Vector witnessing that no perfect fractional matching exists.

    Requirements: sum(a) > 0 and sum_{v in e} a_v <= 0 for every edge e of
    the restricted hypergraph.  Both are homogeneous, so positive rational
    rescalings of a valid certificate stay valid.
    """

    a: tuple[Fraction, ...]

    def validate(self, edges: Iterable[Edge3]) -> None:
        if sum(self.a) <= 0:
            raise InvariantViolation(f"certificate has a.1 = {sum(self.a)} <= 0")
        for e in edges:
            s = self.a[e[0] - 1] + self.a[e[1] - 1] + self.a[e[2] - 1]
            if s > 0:
                raise InvariantViolation(f"certificate violated on edge {e}: {s} > 0", witness=e)

    def to_json_dict(self) -> dict:
        return {"a": [str(x) for x in self.a]}


def _restricted_edges(
    H: Hypergraph3,
    restrict_to: int | None,
    labeling: TightComponentLabeling | None,
) -> tuple[list[Edge3], TightComponentLabeling | None]:
    if restrict_to is None:
        return list(H.edges), labeling
    lab = labeling or tight_components(H)
    if not 0 <= restrict_to < lab.component_count:
        raise InvalidArgumentError(
            f"component id {restrict_to} out of range 0..{lab.component_count - 1}"
        )
    return [e for e in H.edges if lab.labels[e] == restrict_to], lab


def max_fractional_matching(
    H: Hypergraph3,
    restrict_to: int | None = None,
    labeling: TightComponentLabeling | None = None,
) -> FractionalMatching:
    """Maximum-total-weight fractional matching, optionally restricted to one
    tight component.  Exact rationals for n <= 30; beyond that the LP is
    solved in floating point and the result is labeled approximate."""
    edges, lab = _restricted_edges(H, restrict_to, labeling)
    if H.n <= EXACT_LP_MAX_N:
        res = solve_matching_lp(H.n, edges)
        fm = FractionalMatching(
            n=H.n,
            weights=res.weights,
            total_weight=res.value,
            support_component=restrict_to,
        )
    else:
        value, weights = solve_matching_lp_float(H.n, edges)
        fm = FractionalMatching(
            n=H.n,
            weights={e: w for e, w in weights.items()},
            total_weight=value,  # type: ignore[arg-type]
            support_component=restrict_to,
            approximate=True,
        )
    fm.validate(H, lab)
    return fm


def perfect_or_certificate(
    H: Hypergraph3,
    restrict_to: int,
    labeling: TightComponentLabeling | None = None,
) -> Union[FractionalMatching, FarkasCertificate]:
    """Decide perfect fractional matchability within one tight component.

    Returns exactly one of: a perfect fractional matching (total weight
    equal to n/3, support inside the component), or a certificate that none
    exists.  Both outcomes are re-verified in exact arithmetic.
    """
    if H.n > EXACT_LP_MAX_N:
        raise SizeLimitError(
            f"exact decision budget is n <= {EXACT_LP_MAX_N}; "
            "use max_fractional_matching for an approximate optimum"
        )
    edges, lab = _restricted_edges(H, restrict_to, labeling)
    res = solve_matching_lp(H.n, edges)
    if 3 * res.value == H.n:
        fm = FractionalMatching(
            n=H.n,
            weights=res.weights,
            total_weight=res.value,
            support_component=restrict_to,
        )
        fm.validate(H, lab)
        return fm
    cert = FarkasCertificate(tuple(1 - 3 * y for y in res.dual))
    cert.validate(edges)
    return cert


@dataclass(frozen=True)
class FracmatchResult:
    """Output of the degree-conditioned construction: the selected tight
    component as a spanning edge set, plus its perfect fractional matching."""

    subgraph_edges: frozenset[Edge3]
    component: int
    subgraph_min_degree: int
    matching: FractionalMatching


def tight_perfect_fractional_matching(H: Hypergraph3) -> FracmatchResult:
    """Build a tightly-connected perfect fractional matching in H.

    Preconditions: 3 | n and min vertex degree strictly above (5/9)C(n,2).
    The construction collects, for each vertex u, the edges formed by the
    largest link-graph component of u with u added back; verifies these all
    land in one tight component H'; checks min degree of H' against
    (4/9)C(n,2); and solves the restricted LP, which must come out perfect.
    Any failed internal step raises InvariantViolation with a witness since
    the preconditions make failure impossible.
    """
    n = H.n
    if n % 3 != 0:
        raise PreconditionError(f"need 3 | n, got n={n}")
    delta = H.min_degree(1) if n >= 1 else 0
    if 9 * delta <= 5 * comb(n, 2):
        raise PreconditionError(
            f"need min degree > (5/9)C({n},2) = {5 * comb(n, 2)}/9, got {delta}"
        )

    labeling = tight_components(H)
    star_label: int | None = None
    for u in range(1, n + 1):
        link = H.link_graph(u)
        cu = largest_component(link)
        star = component_star(H, u, cu)
        for e in star:
            lbl = labeling.labels[e]
            if star_label is None:
                star_label = lbl
            elif lbl != star_label:
                raise InvariantViolation(
                    "link-component stars span two tight components",
                    witness=(u, e, star_label, lbl),
                )
    assert star_label is not None  # delta > 0, so every vertex has a star

    sub_edges = frozenset(e for e in H.edges if labeling.labels[e] == star_label)
    sub = Hypergraph3(n, sub_edges)
    delta_sub = sub.min_degree(1)
    if 9 * delta_sub < 4 * comb(n, 2):
        raise InvariantViolation(
            f"selected component has min degree {delta_sub} < (4/9)C({n},2)",
            witness=star_label,
        )

    outcome = perfect_or_certificate(H, star_label, labeling)
    if isinstance(outcome, FarkasCertificate):
        raise InvariantViolation(
            "degree condition holds but the LP produced a certificate",
            witness=outcome,
        )
    return FracmatchResult(
        subgraph_edges=sub_edges,
        component=star_label,
        subgraph_min_degree=delta_sub,
        matching=outcome,
    )


@dataclass(frozen=True)
class CertificateRefutation:
    """Outcome of running the constructive contradiction against a candidate
    certificate for a degree-conditioned host."""

    anchor_vertex: int | None
    violating_edge: Edge3 | None
    edge_value: Fraction | None
    axiom_failed: str | None  # set when the candidate was never a certificate

    @property
    def refuted(self) -> bool:
        return self.violating_edge is not None or self.axiom_failed is not None


def refute_certificate(H: Hypergraph3, a: Sequence) -> CertificateRefutation:
    """Demonstrate that `a` cannot certify infeasibility for a host meeting
    the degree precondition.

    Mirrors the constructive argument: pick u maximizing a_u, take a
    matching of size n/3 in the largest component of u's link graph, build
    the edges e_i = {u, x_i, y_i} and the partition classes S_i = {x_i,
    y_i, z_i}; summing gives sum_i a(e_i) >= a.1, so either a.1 <= 0
    (not a certificate) or some edge inequality a(e_i) <= 0 fails.  The
    returned report names that edge.
    """
    n = H.n
    if n % 3 != 0 or 9 * H.min_degree(1) <= 5 * comb(n, 2):
        raise PreconditionError("refutation argument needs 3 | n and degree > (5/9)C(n,2)")
    vec = [Fraction(x) for x in a]
    if len(vec) != n:
        raise InvalidArgumentError(f"certificate length {len(vec)} != n = {n}")
    if sum(vec) <= 0:
        return CertificateRefutation(
            anchor_vertex=None, violating_edge=None, edge_value=None,
            axiom_failed="a.1 <= 0",
        )
    u = max(range(1, n + 1), key=lambda v: (vec[v - 1], -v))
    cu_vertices, _ = largest_component(H.link_graph(u))
    mm = max_matching(induced_subgraph(H.link_graph(u), cu_vertices))
    if mm.size < n // 3:
        raise InvariantViolation(
            f"link component of {u} lacks a matching of size {n // 3}",
            witness=u,
        )
    pairs = mm.pairs[: n // 3]
    covered = {v for p in pairs for v in p}
    zs = sorted(v for v in range(1, n + 1) if v not in covered)
    if len(zs) != n // 3:
        raise InvariantViolation("partition classes do not cover V", witness=zs)
    for (x, y), z in zip(pairs, zs):
        edge = tuple(sorted((u, x, y)))
        if edge not in H.edge_set:
            raise InvariantViolation(f"constructed edge {edge} missing from H", witness=edge)
        val = vec[u - 1] + vec[x - 1] + vec[y - 1]
        if val > 0:
            return CertificateRefutation(
                anchor_vertex=u,
                violating_edge=edge,  # type: ignore[arg-type]
                edge_value=val,
                axiom_failed=None,
            )
    raise InvariantViolation(
        "no violated edge found although a.1 > 0; summation argument broken",
        witness=tuple(vec),
    )
