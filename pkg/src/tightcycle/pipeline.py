"""End-to-end reduction pipeline: slice, densify, label, trim to good
clusters, match fractionally on the restricted reduced graph, then grow a
cycle guided by the matching.

Every stage is recorded in a report even when it fails; later stages are
then marked skipped.  Reports serialize to JSON with a canonical form that
excludes timings, so pinned-seed runs are byte-identical.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .cycles import CycleSearchParams, matching_guided_cycle
from .errors import TclError
from .fractional import FractionalMatching, tight_perfect_fractional_matching
from .generators import derive_seed
from .hypergraph import Hypergraph3
from .slices import ReducedGraph, build_reduced_graph, build_weak_slice, good_clusters


@dataclass
class StageRecord:
    name: str
    status: str  # "ok" | "failed" | "skipped"
    detail: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class PipelineReport:
    parameters: dict
    stages: list[StageRecord]
    timings: dict[str, float]

    @property
    def ok(self) -> bool:
        return all(s.status == "ok" for s in self.stages)

    def failed_stage(self) -> str | None:
        for s in self.stages:
            if s.status == "failed":
                return s.name
        return None

    def to_json_dict(self, include_timings: bool = True) -> dict:
        out = {
            "parameters": self.parameters,
            "stages": [s.to_json_dict() for s in self.stages],
            "ok": self.ok,
        }
        if include_timings:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out

    def canonical_json(self) -> str:
        """Timing-free compact JSON; the determinism contract hashes this."""
        return json.dumps(self.to_json_dict(include_timings=False),
                          sort_keys=True, separators=(",", ":"))


def run_pipeline(
    H: Hypergraph3,
    t: int,
    d_threshold,
    eps: float,
    samples: int,
    seed: int,
    cycle_params: CycleSearchParams | None = None,
) -> PipelineReport:
    stages: list[StageRecord] = []
    timings: dict[str, float] = {}
    params = {
        "t": t,
        "d_threshold": str(d_threshold),
        "eps": eps,
        "samples": samples,
        "seed": seed,
    }
    report = PipelineReport(parameters=params, stages=stages, timings=timings)

    def run_stage(name, fn):
        start = time.perf_counter()
        try:
            detail = fn()
        except TclError as exc:
            stages.append(StageRecord(name, "failed", {"error": str(exc)}))
            return False
        finally:
            timings[name] = time.perf_counter() - start
        stages.append(StageRecord(name, "ok", detail))
        return True

    state: dict = {}

    def stage_input():
        delta = H.min_degree(1) if H.n >= 1 else 0
        total = comb(H.n, 3)
        state["delta"] = delta
        return {
            "n": H.n,
            "edges": len(H.edges),
            "min_degree": delta,
            "density": str(Fraction(len(H.edges), total)) if total else "0",
        }

    def stage_slice():
        S = build_weak_slice(H, t, seed)
        state["S"] = S
        return {"t": S.t, "m": S.m, "deleted": list(S.deleted_vertices)}

    def stage_reduce():
        S = state["S"]
        R = build_reduced_graph(H, S, d_threshold, eps, samples, derive_seed(seed, 1))
        state["R"] = R
        total = len(R.densities)
        regular = sum(1 for ok in R.regular.values() if ok)
        return {
            "triples": total,
            "regular": regular,
            "regular_fraction": str(Fraction(regular, total)),
            "thresholded_edges": len(R.thresholded_edges()),
        }

    def stage_good():
        R = state["R"]
        good = good_clusters(R, 2 * math.sqrt(eps))
        state["good"] = good
        if len(good) < 3:
            raise TclError(f"only {len(good)} good clusters; need at least 3")
        return {"good_clusters": list(good), "count": len(good)}

    def stage_matching():
        R: ReducedGraph = state["R"]
        good = state["good"]
        pos = {c: i + 1 for i, c in enumerate(good)}
        good_set = set(good)
        sub_edges = [
            tuple(sorted(pos[c] for c in X))
            for X in R.thresholded_edges()
            if set(X) <= good_set
        ]
        view = Hypergraph3(len(good), sub_edges)
        result = tight_perfect_fractional_matching(view)
        weights = {
            tuple(sorted(good[v - 1] + 1 for v in e)): w
            for e, w in result.matching.weights.items()
        }
        M = FractionalMatching(
            n=R.t,
            weights=weights,
            total_weight=result.matching.total_weight,
        )
        state["M"] = M
        return {
            "restricted_n": len(good),
            "restricted_edges": len(sub_edges),
            "restricted_min_degree": view.min_degree(1),
            "total_weight": str(result.matching.total_weight),
            "perfect_on_restriction": result.matching.perfect,
            "component": result.component,
            "support_size": len(result.matching.weights),
        }

    def stage_cycle():
        S = state["S"]
        R = state["R"]
        M = state["M"]
        cp = cycle_params or CycleSearchParams(seed=derive_seed(seed, 2))
        res = matching_guided_cycle(H, S, R, M, cp)
        if not res.success:
            raise TclError(res.detail)
        assert res.cycle is not None
        return {
            "length": res.cycle.length,
            "order": list(res.cycle.order),
            "valid": True,
            "coverage": {str(k): v for k, v in sorted(res.coverage.items())},
            "targets": {str(k): v for k, v in sorted(res.targets.items())},
            "scale_used": res.scale_used,
        }

    plan = [
        ("input", stage_input),
        ("slice", stage_slice),
        ("reduce", stage_reduce),
        ("good-clusters", stage_good),
        ("reduced-matching", stage_matching),
        ("cycle", stage_cycle),
    ]
    failed = False
    for name, fn in plan:
        if failed:
            stages.append(StageRecord(name, "skipped"))
            continue
        if not run_stage(name, fn):
            failed = True
    return report
