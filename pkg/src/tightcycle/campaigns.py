"""Seeded verification campaigns.

Each campaign hammers one verified fact with randomized (or exhaustive)
instances and returns a CampaignResult listing any failures.  These back
both the `tcl verify` subcommands and the acceptance suite; trial seeds
are derived arithmetically from the master seed, so campaigns reproduce
exactly and can be distributed over a process pool without changing their
outcome.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from math import comb

from .cycles import brute_force_longest_cycle, longest_tight_cycle
from .errors import GenerationError, InvariantViolation, TclError
from .fractional import (
    FarkasCertificate,
    FractionalMatching,
    tight_perfect_fractional_matching,
    max_fractional_matching,
    perfect_or_certificate,
)
from .generators import derive_seed, extremal, min_degree_bound, random_3graph, random_min_degree_3graph
from .hypergraph import Graph, complete_3graph
from .matching import (
    erdos_gallai_threshold,
    graphmeet_verify,
    max_matching,
    reverify_graphmeet,
)
from .pipeline import run_pipeline
from .slices import ReducedGraph, reduced_degree_check
from .tight import tight_components

MAX_RECORDED_FAILURES = 25


@dataclass
class CampaignResult:
    name: str
    trials: int
    failures: list[dict] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, failure: dict) -> None:
        if len(self.failures) < MAX_RECORDED_FAILURES:
            self.failures.append(failure)
        else:
            self.stats["failures_truncated"] = True

    def to_json_dict(self) -> dict:
        return {
            "campaign": self.name,
            "trials": self.trials,
            "passed": self.passed,
            "failures": self.failures,
            "stats": self.stats,
        }


def _map_trials(worker, trials: int, jobs: int) -> list:
    if jobs <= 1:
        return [worker(i) for i in range(trials)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        chunk = max(1, trials // (jobs * 8))
        return list(pool.map(worker, range(trials), chunksize=chunk))


# ---------------------------------------------------------------------------
# dense-pair component facts
# ---------------------------------------------------------------------------


def _random_dense_graph(n: int, rng: random.Random) -> Graph:
    lo = 5 * comb(n, 2) // 9 + 1
    hi = comb(n, 2)
    e = rng.randint(lo, hi)
    pairs = rng.sample(list(itertools.combinations(range(1, n + 1), 2)), e)
    return Graph(n, pairs)


def _graphmeet_trial(i: int, n: int, seed: int) -> dict | None:
    rng = random.Random(derive_seed(seed, i))
    G1 = _random_dense_graph(n, rng)
    G2 = _random_dense_graph(n, rng)
    report = graphmeet_verify(G1, G2)
    if not report.all_verdicts():
        return {"trial": i, "n": n, "problem": "verdict false", "report": report.to_json_dict()}
    problems = reverify_graphmeet(G1, G2, report)
    if problems:
        return {"trial": i, "n": n, "problem": "; ".join(problems)}
    return None


def run_graphmeet_campaign(n: int, trials: int, seed: int, jobs: int = 1) -> CampaignResult:
    """Random dense pairs at fixed n: all four verdicts must hold and the
    evidence must survive independent re-verification."""
    if n % 3 != 0:
        raise TclError(f"campaign needs 3 | n, got n={n}")
    result = CampaignResult(name="graphmeet", trials=trials, stats={"n": n})
    for failure in _map_trials(partial(_graphmeet_trial, n=n, seed=seed), trials, jobs):
        if failure:
            result.record(failure)
    return result


# ---------------------------------------------------------------------------
# degree-conditioned perfect fractional matchings
# ---------------------------------------------------------------------------


def _fracmatch_trial(i: int, n: int, seed: int, p: float) -> dict | None:
    target = min_degree_bound(n)
    try:
        H = random_min_degree_3graph(n, target, derive_seed(seed, i), max_attempts=400, p=p)
    except GenerationError as exc:
        return {"trial": i, "n": n, "problem": f"generation failed: {exc}"}
    try:
        res = tight_perfect_fractional_matching(H)
    except TclError as exc:
        return {"trial": i, "n": n, "problem": f"{type(exc).__name__}: {exc}"}
    out: dict | None = None
    if 3 * res.matching.total_weight != n:
        out = {"trial": i, "n": n, "problem": f"total weight {res.matching.total_weight} != n/3"}
    elif 9 * res.subgraph_min_degree < 4 * comb(n, 2):
        out = {"trial": i, "n": n, "problem": f"subgraph min degree {res.subgraph_min_degree} too small"}
    else:
        try:
            res.matching.validate(H)  # includes support-in-one-component check
        except InvariantViolation as exc:
            out = {"trial": i, "n": n, "problem": str(exc)}
    return out


def fracmatch_edge_probability(n: int) -> float:
    return min(0.97, min_degree_bound(n) / comb(n - 1, 2) + 0.15)


def run_fracmatch_campaign(n: int, trials: int, seed: int, jobs: int = 1) -> CampaignResult:
    """Random degree-conditioned 3-graphs at fixed n: the returned matching
    must be perfect (exact rational), supported in one tight component, and
    the component must keep min degree >= (4/9)C(n,2)."""
    if n % 3 != 0:
        raise TclError(f"campaign needs 3 | n, got n={n}")
    p = fracmatch_edge_probability(n)
    result = CampaignResult(name="fracmatch", trials=trials, stats={"n": n, "p": round(p, 4)})
    for failure in _map_trials(partial(_fracmatch_trial, n=n, seed=seed, p=p), trials, jobs):
        if failure:
            result.record(failure)
    return result


# ---------------------------------------------------------------------------
# perfect-or-certificate disjunction
# ---------------------------------------------------------------------------


def _largest_tight_component(H) -> int:
    lab = tight_components(H)
    return max(range(lab.component_count), key=lambda c: (lab.component_sizes[c], -c))


def _farkas_trial(i: int, seed: int, sizes: tuple[int, ...]) -> tuple[str | None, dict | None]:
    rng = random.Random(derive_seed(seed, i, 77))
    n = rng.choice(sizes)
    if i % 3 == 0:
        a = rng.randint(1, max(1, n // 3))
        H = extremal(n, a).hypergraph
        expect = "certificate" if 3 * a < n else None
    else:
        p = rng.uniform(0.15, 0.95)
        H = random_3graph(n, p, derive_seed(seed, i, 78))
        if not H.edges:
            return None, None  # nothing to decide; skip
        expect = None
    lab = tight_components(H)
    cid = _largest_tight_component(H)
    outcome = perfect_or_certificate(H, cid, lab)
    if isinstance(outcome, FractionalMatching):
        kind = "perfect"
        try:
            outcome.validate(H, lab)
            if 3 * outcome.total_weight != n:
                raise InvariantViolation(f"claimed perfect but weight {outcome.total_weight}")
        except InvariantViolation as exc:
            return kind, {"trial": i, "n": n, "problem": str(exc)}
    else:
        kind = "certificate"
        restricted = [e for e in H.edges if lab.labels[e] == cid]
        try:
            outcome.validate(restricted)
        except InvariantViolation as exc:
            return kind, {"trial": i, "n": n, "problem": str(exc)}
    if expect and kind != expect:
        return kind, {"trial": i, "n": n, "problem": f"expected {expect}, got {kind}"}
    return kind, None


def run_farkas_campaign(
    trials: int, seed: int, sizes: tuple[int, ...] = (6, 9, 12), jobs: int = 1
) -> CampaignResult:
    """Mixed instances (extremal family plus random): exactly one of a
    perfect matching or an exactly-verified certificate comes back, and the
    pinned extremal case must certify with maximum weight 2."""
    result = CampaignResult(name="farkas", trials=trials, stats={"sizes": list(sizes)})
    counts = {"perfect": 0, "certificate": 0, "skipped": 0}
    for kind, failure in _map_trials(partial(_farkas_trial, seed=seed, sizes=sizes), trials, jobs):
        if kind is None:
            counts["skipped"] += 1
        else:
            counts[kind] += 1
        if failure:
            result.record(failure)
    result.stats.update(counts)
    if counts["perfect"] == 0 or counts["certificate"] == 0:
        result.record({"problem": f"campaign did not exercise both outcomes: {counts}"})

    # pinned extremal reference point
    inst = extremal(9, 2)
    lab = tight_components(inst.hypergraph)
    opt = max_fractional_matching(inst.hypergraph, 0, lab)
    if opt.total_weight != 2:
        result.record({"problem": f"extremal(9,2) optimum {opt.total_weight} != 2"})
    outcome = perfect_or_certificate(inst.hypergraph, 0, lab)
    if not isinstance(outcome, FarkasCertificate):
        result.record({"problem": "extremal(9,2) did not produce a certificate"})
    return result


# ---------------------------------------------------------------------------
# reduced-graph degree inequality
# ---------------------------------------------------------------------------


def _random_reduced_graph(rng: random.Random, t: int) -> ReducedGraph:
    style = rng.randrange(4)
    densities = {}
    regular = {}
    p_irregular = rng.choice((0.0, 0.1, 0.3, 0.5, 0.9, 1.0))
    for X in itertools.combinations(range(t), 3):
        if style == 0:
            densities[X] = Fraction(rng.randint(0, 64), 64)
        elif style == 1:
            densities[X] = rng.choice((Fraction(0), Fraction(1)))
        elif style == 2:
            densities[X] = Fraction(rng.randint(0, 4), 4)
        else:
            densities[X] = Fraction(rng.randint(48, 64), 64)
        regular[X] = rng.random() >= p_irregular
    d = rng.choice((Fraction(0), Fraction(1, 64), Fraction(1, 8), Fraction(1, 2), Fraction(1)))
    return ReducedGraph(t=t, m=1, densities=densities, regular=regular, d_threshold=d)


def run_reduced_degree_campaign(
    trials: int, seed: int, t_values: tuple[int, ...] = tuple(range(4, 11))
) -> CampaignResult:
    """Adversarial and random density/label configurations: the thresholded
    degree inequality must hold for every cluster, exactly."""
    result = CampaignResult(name="reduced-degree", trials=trials, stats={"t_values": list(t_values)})
    for i in range(trials):
        rng = random.Random(derive_seed(seed, i))
        t = rng.choice(t_values)
        R = _random_reduced_graph(rng, t)
        for rep in reduced_degree_check(R):
            if not rep.ok:
                result.record(
                    {
                        "trial": i,
                        "t": t,
                        "cluster": rep.cluster,
                        "lhs": str(rep.lhs),
                        "rhs": str(rep.rhs),
                    }
                )
    return result


# ---------------------------------------------------------------------------
# matching threshold soundness
# ---------------------------------------------------------------------------


def _matching_number_table(N: int) -> bytearray:
    """nu[mask] for every graph on N labeled vertices, mask over C(N,2) pairs."""
    pairs = list(itertools.combinations(range(N), 2))
    P = len(pairs)
    incident = []
    for u, v in pairs:
        mask = 0
        for j, (x, y) in enumerate(pairs):
            if x in (u, v) or y in (u, v):
                mask |= 1 << j
        incident.append(mask)
    nu = bytearray(1 << P)
    for mask in range(1, 1 << P):
        low = (mask & -mask).bit_length() - 1
        skip = nu[mask & (mask - 1)]  # drop the lowest edge
        take = 1 + nu[mask & ~incident[low]]
        nu[mask] = take if take > skip else skip
    return nu


def run_erdos_gallai_exhaustive(max_n: int = 7) -> CampaignResult:
    """Every graph on at most max_n labeled vertices: edge counts above the
    threshold must force a matching of the corresponding size."""
    result = CampaignResult(name="erdos-gallai-exhaustive", trials=0, stats={})
    graphs = 0
    for N in range(1, max_n + 1):
        nu = _matching_number_table(N)
        P = comb(N, 2)
        thresholds = {}
        for k in range(1, N // 2 + 2):
            if N >= 2 * k - 1:
                thresholds[k] = erdos_gallai_threshold(N, k)
        for mask in range(1 << P):
            graphs += 1
            e = mask.bit_count()
            v = nu[mask]
            for k, thr in thresholds.items():
                if e > thr and v < k:
                    result.record({"N": N, "mask": mask, "e": e, "k": k, "nu": v})
    result.trials = graphs
    result.stats["graphs_checked"] = graphs
    return result


def _eg_random_trial(i: int, seed: int, max_n: int) -> dict | None:
    rng = random.Random(derive_seed(seed, i))
    N = rng.randint(2, max_n)
    p = rng.uniform(0.1, 0.95)
    edges = [e for e in itertools.combinations(range(1, N + 1), 2) if rng.random() < p]
    G = Graph(N, edges)
    nu = max_matching(G).size
    e = len(edges)
    for k in range(1, N // 2 + 2):
        if N >= 2 * k - 1 and e > erdos_gallai_threshold(N, k) and nu < k:
            return {"trial": i, "N": N, "e": e, "k": k, "nu": nu}
    return None


def run_erdos_gallai_random(trials: int, seed: int, max_n: int = 12, jobs: int = 1) -> CampaignResult:
    result = CampaignResult(name="erdos-gallai-random", trials=trials, stats={"max_n": max_n})
    for failure in _map_trials(partial(_eg_random_trial, seed=seed, max_n=max_n), trials, jobs):
        if failure:
            result.record(failure)
    return result


# ---------------------------------------------------------------------------
# extremal family bounds
# ---------------------------------------------------------------------------


def run_extremal_bound_campaign(max_n: int = 12) -> CampaignResult:
    """Exact reproduction of the extremal family facts for all n <= max_n:
    the min-degree formula for every a, the 3a cycle law whenever
    4 <= 3a <= n, Hamilton length when 3a > n (and a >= 2), and no cycle at
    all when a = 1."""
    result = CampaignResult(name="extremal-bound", trials=0, stats={})
    checked = 0
    cycles_checked = 0
    for n in range(3, max_n + 1):
        for a in range(1, n + 1):
            checked += 1
            inst = extremal(n, a)  # constructor asserts degree formula
            b = n - a
            predicted = comb(n - 1, 2) - (comb(b - 1, 2) if b >= 1 else 0)
            if inst.predicted_min_degree != predicted:
                result.record({"n": n, "a": a, "problem": "formula mismatch"})
            if n >= 4 and a == 1:
                cyc = longest_tight_cycle(inst.hypergraph)
                cycles_checked += 1
                if cyc is not None:
                    result.record({"n": n, "a": a, "problem": f"unexpected cycle {cyc.order}"})
            elif 4 <= 3 * a <= n:
                cyc = longest_tight_cycle(inst.hypergraph)
                cycles_checked += 1
                if cyc is None or cyc.length != 3 * a:
                    got = cyc.length if cyc else None
                    result.record({"n": n, "a": a, "problem": f"cycle length {got} != {3 * a}"})
            elif 3 * a > n and a >= 2 and n >= 4:
                cyc = longest_tight_cycle(inst.hypergraph)
                cycles_checked += 1
                if cyc is None or cyc.length != n:
                    got = cyc.length if cyc else None
                    result.record({"n": n, "a": a, "problem": f"cycle length {got} != n = {n}"})
    result.trials = checked
    result.stats.update({"pairs_checked": checked, "cycles_checked": cycles_checked})
    return result


# ---------------------------------------------------------------------------
# exact cycle solver vs permutation oracle
# ---------------------------------------------------------------------------


def _cycle_oracle_trial(i: int, seed: int, min_n: int, max_n: int) -> dict | None:
    rng = random.Random(derive_seed(seed, i))
    n = rng.randint(min_n, max_n)
    p = rng.uniform(0.15, 0.85)
    H = random_3graph(n, p, derive_seed(seed, i, 5))
    dp = longest_tight_cycle(H)
    bf = brute_force_longest_cycle(H)
    dp_len = dp.length if dp else 0
    bf_len = bf.length if bf else 0
    if dp_len != bf_len:
        return {"trial": i, "n": n, "p": round(p, 3), "dp": dp_len, "oracle": bf_len}
    return None


def run_cycle_oracle_campaign(
    trials: int, seed: int, min_n: int = 4, max_n: int = 9, jobs: int = 1
) -> CampaignResult:
    result = CampaignResult(
        name="cycle-oracle", trials=trials, stats={"min_n": min_n, "max_n": max_n}
    )
    for failure in _map_trials(
        partial(_cycle_oracle_trial, seed=seed, min_n=min_n, max_n=max_n), trials, jobs
    ):
        if failure:
            result.record(failure)
    return result


# ---------------------------------------------------------------------------
# pipeline smoke and determinism
# ---------------------------------------------------------------------------


def run_pipeline_determinism(
    n: int = 30, t: int = 6, seed: int = 7, d_threshold=Fraction(1, 20),
    eps: float = 0.25, samples: int = 40,
) -> CampaignResult:
    """Complete 3-graph through the whole pipeline, twice: the run must end
    in a valid cycle covering all undeleted vertices and the canonical
    (timing-free) reports must be byte-identical."""
    result = CampaignResult(name="pipeline-determinism", trials=2, stats={"n": n, "t": t})
    H = complete_3graph(n)
    r1 = run_pipeline(H, t, d_threshold, eps, samples, seed)
    r2 = run_pipeline(H, t, d_threshold, eps, samples, seed)
    if not r1.ok:
        result.record({"problem": f"pipeline failed at stage {r1.failed_stage()}"})
    else:
        cycle_detail = r1.stages[-1].detail
        expected = n - n % t
        if cycle_detail.get("length") != expected:
            result.record(
                {"problem": f"cycle length {cycle_detail.get('length')} != undeleted count {expected}"}
            )
    c1, c2 = r1.canonical_json(), r2.canonical_json()
    if c1 != c2:
        result.record({"problem": "canonical reports differ between identical runs"})
    result.stats["canonical_bytes"] = len(c1)
    return result
