"""Command-line surface.

Every subcommand wraps one library operation (`pipeline` and `verify`
run documented sequences).  Exit codes: 0 on success, 1 when a
verification verdict is false, 2 on usage, parse, or precondition errors.
'-' names standard input for file arguments, so generators chain into
consumers.  The TCL_SEED environment variable supplies a seed when --seed
is not given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import campaigns
from .cycles import CycleSearchParams, longest_tight_cycle, validate_cycle
from .errors import TclError
from .fractional import max_fractional_matching, tight_perfect_fractional_matching
from .generators import (
    extremal,
    extremal_from_eta,
    provenance_comment,
    random_3graph,
    random_min_degree_3graph,
)
from .hypergraph import (
    density,
    read_graph,
    read_hypergraph,
    write_graph,
    write_hypergraph,
)
from .matching import erdos_gallai_threshold, graphmeet_verify, max_matching
from .pipeline import run_pipeline
from .slices import build_reduced_graph, build_weak_slice
from .tight import tight_components

EXIT_OK = 0
EXIT_VERDICT_FALSE = 1
EXIT_USAGE = 2


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise TclError(f"cannot read {path}: {exc}")


def _default_seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("TCL_SEED")
    return int(env) if env else 0


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif fmt == "text":
        for key, value in _flatten(payload):
            print(f"{key}: {value}")
    elif fmt == "csv":
        print("key,value")
        for key, value in _flatten(payload):
            print(f"{key},{value}")
    else:
        raise TclError(f"unknown format {fmt!r}")


def _flatten(obj, prefix: str = ""):
    if isinstance(obj, dict):
        for k in sorted(obj, key=str):
            yield from _flatten(obj[k], f"{prefix}{k}.")
    elif isinstance(obj, list):
        yield prefix.rstrip("."), json.dumps(obj)
    else:
        yield prefix.rstrip("."), obj


def _parse_threshold(text: str):
    return Fraction(text) if "/" in text or "." not in text else float(text)


def cmd_info(args) -> int:
    H = read_hypergraph(_read_source(args.file))
    lab = tight_components(H)
    payload = {
        "n": H.n,
        "edges": len(H.edges),
        "min_degree_1": H.min_degree(1) if H.n >= 1 else 0,
        "min_degree_2": H.min_degree(2) if H.n >= 2 else 0,
        "density": str(density(H)),
        "tight_components": lab.component_count,
        "tightly_connected": lab.component_count == 1,
    }
    _emit(payload, args.format)
    return EXIT_OK


def cmd_link(args) -> int:
    H = read_hypergraph(_read_source(args.file))
    sys.stdout.write(write_graph(H.link_graph(args.vertex)))
    return EXIT_OK


def cmd_components(args) -> int:
    H = read_hypergraph(_read_source(args.file))
    lab = tight_components(H)
    payload = {
        "component_count": lab.component_count,
        "component_sizes": list(lab.component_sizes),
        "labels": [{"e": list(e), "c": c} for e, c in sorted(lab.labels.items())],
    }
    _emit(payload, args.format)
    return EXIT_OK


def cmd_match(args) -> int:
    G = read_graph(_read_source(args.file))
    mm = max_matching(G)
    _emit({"size": mm.size, "pairs": [list(p) for p in mm.pairs]}, args.format)
    return EXIT_OK


def cmd_egcheck(args) -> int:
    G = read_graph(_read_source(args.file))
    nu = max_matching(G).size
    e = len(G.edges)
    rows = []
    ok = True
    ks = [args.k] if args.k else range(1, G.n // 2 + 2)
    for k in ks:
        if G.n < 2 * k - 1:
            continue
        thr = erdos_gallai_threshold(G.n, k)
        above = e > thr
        guaranteed = not above or nu >= k
        ok = ok and guaranteed
        rows.append({"k": k, "threshold": thr, "edges_above": above, "matching_ok": guaranteed})
    _emit({"n": G.n, "edges": e, "matching_number": nu, "checks": rows}, args.format)
    return EXIT_OK if ok else EXIT_VERDICT_FALSE


def cmd_graphmeet(args) -> int:
    G1 = read_graph(_read_source(args.file1))
    G2 = read_graph(_read_source(args.file2))
    report = graphmeet_verify(G1, G2, observe=args.observe)
    _emit(report.to_json_dict(), args.format)
    return EXIT_OK if report.all_verdicts() else EXIT_VERDICT_FALSE


def cmd_fracmatch(args) -> int:
    H = read_hypergraph(_read_source(args.file))
    result = tight_perfect_fractional_matching(H)
    payload = {
        "component": result.component,
        "subgraph_edges": len(result.subgraph_edges),
        "subgraph_min_degree": result.subgraph_min_degree,
        "matching": result.matching.to_json_dict(),
    }
    _emit(payload, args.format)
    return EXIT_OK


def cmd_maxmatch(args) -> int:
    H = read_hypergraph(_read_source(args.file))
    fm = max_fractional_matching(H, restrict_to=args.component)
    _emit(fm.to_json_dict(), args.format)
    return EXIT_OK


def cmd_cycle(args) -> int:
    H = read_hypergraph(_read_source(args.file))
    cycle = longest_tight_cycle(H)
    if cycle is None:
        _emit({"cycle": None, "length": 0}, args.format)
    else:
        _emit(cycle.to_json_dict(), args.format)
    return EXIT_OK


def cmd_validate(args) -> int:
    H = read_hypergraph(_read_source(args.file))
    seq = [int(tok) for tok in args.sequence.replace(",", " ").split()]
    check = validate_cycle(H, seq)
    _emit(check.to_json_dict(), args.format)
    return EXIT_OK if check.valid else EXIT_VERDICT_FALSE


def cmd_extremal(args) -> int:
    if args.eta is None and args.a is None:
        raise TclError("extremal needs --a or --eta")
    inst = extremal_from_eta(args.n, args.eta) if args.eta is not None else extremal(args.n, args.a)
    print(provenance_comment("extremal", n=args.n, a=len(inst.a_side)))
    sys.stdout.write(write_hypergraph(inst.hypergraph))
    return EXIT_OK


def cmd_random(args) -> int:
    seed = _default_seed(args.seed)
    if args.delta_target is not None:
        H = random_min_degree_3graph(
            args.n, args.delta_target, seed, max_attempts=args.max_attempts, p=args.p
        )
        print(provenance_comment("random-min-degree", n=args.n,
                                 delta=args.delta_target, seed=seed))
    else:
        if args.p is None:
            raise TclError("random needs --p (or --delta-target)")
        H = random_3graph(args.n, args.p, seed)
        print(provenance_comment("random", n=args.n, p=args.p, seed=seed))
    sys.stdout.write(write_hypergraph(H))
    return EXIT_OK


def cmd_slice(args) -> int:
    H = read_hypergraph(_read_source(args.file))
    S = build_weak_slice(H, args.t, _default_seed(args.seed))
    _emit(S.to_json_dict(), args.format)
    return EXIT_OK


def cmd_reduce(args) -> int:
    H = read_hypergraph(_read_source(args.file))
    seed = _default_seed(args.seed)
    S = build_weak_slice(H, args.t, seed)
    R = build_reduced_graph(H, S, _parse_threshold(args.d), args.eps, args.samples, seed)
    _emit(R.to_json_dict(), args.format)
    return EXIT_OK


def cmd_pipeline(args) -> int:
    H = read_hypergraph(_read_source(args.file))
    seed = _default_seed(args.seed)
    report = run_pipeline(
        H, args.t, _parse_threshold(args.d), args.eps, args.samples, seed,
        cycle_params=CycleSearchParams(seed=seed, restarts=args.restarts),
    )
    if args.canonical:
        print(report.canonical_json())
    else:
        _emit(report.to_json_dict(include_timings=True), args.format)
    return EXIT_OK if report.ok else EXIT_VERDICT_FALSE


def cmd_verify(args) -> int:
    seed = _default_seed(args.seed)
    name = args.campaign
    if name == "graphmeet":
        result = campaigns.run_graphmeet_campaign(args.n or 9, args.trials, seed, jobs=args.jobs)
    elif name == "fracmatch":
        result = campaigns.run_fracmatch_campaign(args.n or 9, args.trials, seed, jobs=args.jobs)
    elif name == "farkas":
        result = campaigns.run_farkas_campaign(args.trials, seed, jobs=args.jobs)
    elif name == "reduced-degree":
        result = campaigns.run_reduced_degree_campaign(args.trials, seed)
    elif name == "erdos-gallai":
        result = campaigns.run_erdos_gallai_exhaustive(args.exhaustive_n)
        if result.passed:
            rnd = campaigns.run_erdos_gallai_random(args.trials, seed, max_n=args.max_n, jobs=args.jobs)
            result.trials += rnd.trials
            result.failures.extend(rnd.failures)
            result.stats.update({"random_trials": rnd.trials})
    elif name == "extremal-bound":
        result = campaigns.run_extremal_bound_campaign(args.max_n)
    elif name == "cycle-oracle":
        result = campaigns.run_cycle_oracle_campaign(args.trials, seed, max_n=min(args.max_n, 9), jobs=args.jobs)
    elif name == "pipeline":
        result = campaigns.run_pipeline_determinism(n=args.n or 30, t=args.t, seed=seed)
    else:
        raise TclError(f"unknown campaign {name!r}")
    _emit(result.to_json_dict(), args.format)
    return EXIT_OK if result.passed else EXIT_VERDICT_FALSE


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="tcl",
        description="tight-cycle laboratory for 3-uniform hypergraphs",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, **kw):
        p = sub.add_parser(name, help=help_, **kw)
        p.set_defaults(fn=fn)
        p.add_argument("--format", default="json", choices=("json", "text", "csv"))
        return p

    p = add("info", cmd_info, "summary statistics of a .3g file")
    p.add_argument("file")

    p = add("link", cmd_link, "emit the link graph of a vertex as .2g")
    p.add_argument("file")
    p.add_argument("vertex", type=int)

    p = add("components", cmd_components, "tight-component labeling of a .3g file")
    p.add_argument("file")

    p = add("match", cmd_match, "maximum matching of a .2g file")
    p.add_argument("file")

    p = add("egcheck", cmd_egcheck, "matching-threshold check on a .2g file")
    p.add_argument("file")
    p.add_argument("--k", type=int)

    p = add("graphmeet", cmd_graphmeet, "dense-pair component verifier on two .2g files")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--observe", action="store_true",
                   help="run despite failed preconditions and flag the report")

    p = add("fracmatch", cmd_fracmatch, "tightly-connected perfect fractional matching")
    p.add_argument("file")

    p = add("maxfrac", cmd_maxmatch, "maximum fractional matching (optionally restricted)")
    p.add_argument("file")
    p.add_argument("--component", type=int, default=None)

    p = add("cycle", cmd_cycle, "exact longest tight cycle (n <= 22)")
    p.add_argument("file")

    p = add("validate", cmd_validate, "validate a vertex sequence as a tight cycle")
    p.add_argument("file")
    p.add_argument("sequence", help="comma- or space-separated vertices")

    p = add("extremal", cmd_extremal, "emit the extremal instance as .3g")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int)
    p.add_argument("--eta", type=float, help="choose a from an eta value instead of --a")

    p = add("random", cmd_random, "emit a random .3g (optionally degree-conditioned)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--delta-target", type=int, dest="delta_target")
    p.add_argument("--max-attempts", type=int, default=1000, dest="max_attempts")

    p = add("slice", cmd_slice, "seeded weak slice of a .3g file")
    p.add_argument("file")
    p.add_argument("--t", type=int, default=6)
    p.add_argument("--seed", type=int)

    p = add("reduce", cmd_reduce, "reduced graph with densities and labels")
    p.add_argument("file")
    p.add_argument("--t", type=int, default=6)
    p.add_argument("--d", default="1/20", help="density threshold (rational or float)")
    p.add_argument("--eps", type=float, default=0.25)
    p.add_argument("--samples", type=int, default=40)
    p.add_argument("--seed", type=int)

    p = add("pipeline", cmd_pipeline, "full reduction pipeline with staged report")
    p.add_argument("file")
    p.add_argument("--t", type=int, default=6)
    p.add_argument("--d", default="1/20")
    p.add_argument("--eps", type=float, default=0.25)
    p.add_argument("--samples", type=int, default=40)
    p.add_argument("--seed", type=int)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--canonical", action="store_true",
                   help="emit the compact timing-free canonical report")

    p = add("verify", cmd_verify, "run a verification campaign")
    p.add_argument("campaign", choices=(
        "graphmeet", "fracmatch", "farkas", "reduced-degree", "erdos-gallai",
        "extremal-bound", "cycle-oracle", "pipeline",
    ))
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=int, default=6)
    p.add_argument("--max-n", type=int, default=12, dest="max_n")
    p.add_argument("--exhaustive-n", type=int, default=6, dest="exhaustive_n")
    p.add_argument("--jobs", type=int, default=1)

    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except TclError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
