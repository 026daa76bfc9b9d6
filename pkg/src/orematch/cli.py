"""Command-line entry point binding every module.

Subcommands: construct, stats, match, sweep, certify, verify-lemma, absorb.
Exit codes: 0 = success / positive answer, 1 = valid-but-negative answer,
2 = usage or input error.

All machine-readable output goes through a run-report envelope carrying the
subcommand, its parameters, the tool version, the seed and a payload whose
schema is fixed per subcommand (see orematch/schemas/). Randomness flows
from a single --seed flag with a fixed default; re-running with the same
seed reproduces the payload byte for byte. Progress notes for long runs go
to stderr only, never into the payload stream.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from . import __version__
from ._kernels import backend_name
from .hypergraph import read_edge_list, format_edge_list
from .families import h_ell, h12
from .matching import has_perfect_matching, max_matching
from .extremal import certify_counterexample, sweep_max_sigma2
from .lemmas import DEFAULT_SEED, LEMMA_IDS, run_lemma
from .absorbing import AbsorptionError, absorb, build_family

import numpy as np


def _emit_report(args, subcommand: str, parameters: dict, payload: dict,
                 started: float, seed: int | None, dest: str | None) -> None:
    report = {
        "subcommand": subcommand,
        "parameters": parameters,
        "version": __version__,
        "backend": backend_name(),
        "seed": seed,
        "wall_time_s": round(time.perf_counter() - started, 6),
        "payload": payload,
    }
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if dest is None or dest == "-":
        sys.stdout.write(text)
    else:
        with open(dest, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_construct(args) -> int:
    if args.family == "h12":
        if args.x is None or args.y is None:
            raise ValueError("h12 needs --x and --y")
        inst = h12(args.n, args.x, args.y)
    else:
        if args.s is None:
            raise ValueError(f"{args.family} needs --s")
        inst = h_ell(args.n, args.s, int(args.family[1]))
    comments = [f"family {inst.family} " + " ".join(
        f"{k}={v}" for k, v in inst.params.items())]
    for name, rng in inst.partition.blocks:
        if len(rng):
            comments.append(f"block {name}: {rng.start}..{rng.stop - 1}")
        else:
            comments.append(f"block {name}: empty")
    text = format_edge_list(inst.graph, comments)
    if args.output is None or args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def _cmd_stats(args) -> int:
    started = time.perf_counter()
    h = read_edge_list(args.file)
    alpha, _ = h.independence_number()
    payload = {
        "n": h.n,
        "m": h.m,
        "min_degree": h.min_degree(),
        "sigma2": h.sigma2(),
        "independence_number": alpha,
    }
    if args.json is not None:
        _emit_report(args, "stats", {"file": str(args.file)}, payload,
                     started, None, args.json)
    else:
        print(f"n               {payload['n']}")
        print(f"m               {payload['m']}")
        print(f"min degree      {payload['min_degree']}")
        s2 = payload["sigma2"]
        print(f"sigma2          {'-' if s2 is None else s2}")
        print(f"independence    {payload['independence_number']}")
    return 0


def _cmd_match(args) -> int:
    started = time.perf_counter()
    h = read_edge_list(args.file)
    if args.perfect:
        cert = has_perfect_matching(h)
        found = cert is not None
        mode = "perfect"
    else:
        cert = max_matching(h)
        found = True
        mode = "max"
    payload = {
        "mode": mode,
        "found": found,
        "size": cert.size if cert else 0,
        "perfect": bool(cert.perfect) if cert else False,
        "edges": [list(e) for e in cert.edges] if cert else [],
    }
    if args.json is not None:
        _emit_report(args, "match", {"file": str(args.file), "mode": mode},
                     payload, started, None, args.json)
    else:
        for e in payload["edges"]:
            print("M: " + " ".join(str(v) for v in e))
        if not found:
            print("no perfect matching", file=sys.stderr)
    return 0 if found else 1


def _cmd_sweep(args) -> int:
    started = time.perf_counter()
    result = sweep_max_sigma2(args.n, threads=args.threads)
    rows = [
        {
            "x": r.x,
            "y": r.y,
            "sigma2": r.sigma2,
            "two_f1": r.two_f1,
            "f2": r.f2,
            "is_max": r.is_max,
        }
        for r in result.rows
    ]
    if args.csv is not None:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["x", "y", "sigma2", "two_f1", "f2", "is_max"])
        for r in rows:
            writer.writerow([
                r["x"], r["y"],
                "" if r["sigma2"] is None else r["sigma2"],
                r["two_f1"], r["f2"], int(r["is_max"]),
            ])
        if args.csv == "-":
            sys.stdout.write(buf.getvalue())
        else:
            with open(args.csv, "w", encoding="utf-8", newline="") as fh:
                fh.write(buf.getvalue())
    payload = {
        "n": result.n,
        "max_sigma2": result.max_sigma2,
        "argmax": [list(p) for p in result.argmax],
        "rows": rows,
    }
    if args.json is not None:
        _emit_report(args, "sweep", {"n": args.n}, payload, started, None,
                     args.json)
    elif args.csv is None:
        print(f"n={result.n} max sigma2 = {result.max_sigma2} "
              f"at {list(result.argmax)}")
    return 0


def _cmd_certify(args) -> int:
    started = time.perf_counter()
    report = certify_counterexample(args.n)
    payload = report.as_dict()
    if args.json is not None:
        _emit_report(args, "certify", {"n": args.n}, payload, started, None,
                     args.json)
    else:
        print(f"n = {report.n}: H12 at (x, y) = ({report.x}, {report.y})")
        print(f"  sigma2 {report.sigma2} > threshold {report.threshold}: "
              f"{report.degree_sum_exceeds_threshold}")
        print(f"  max matching {report.max_matching_size} "
              f"({report.max_matching_method}) < {report.n // 3}: "
              f"{report.no_perfect_matching}")
        print(f"  independence {report.independence_number} < "
              f"{report.n // 3 + 1}: {report.not_subgraph_of_h2}")
        print(f"  all conditions hold: {report.all_conditions_hold}")
    return 0 if report.all_conditions_hold else 1


def _cmd_verify_lemma(args) -> int:
    started = time.perf_counter()
    mode = None
    if args.exhaustive:
        mode = "exhaustive"
    elif args.samples is not None:
        mode = "randomized"

    def note(msg: str) -> None:
        print(msg, file=sys.stderr)

    verdicts = run_lemma(
        args.id,
        mode=mode,
        samples=args.samples,
        seed=args.seed,
        n=args.n,
        s=args.s,
        a=args.a,
        b=args.b,
        threads=args.threads,
    )
    for v in verdicts:
        note(
            f"[{v.lemma_id}] {v.mode} {v.params or ''} universe={v.universe_size} "
            f"max={v.max_lhs} bound={v.bound} "
            f"{'PASS' if v.passed else 'COUNTEREXAMPLE'}"
        )
    all_pass = all(v.passed for v in verdicts)
    payload = {
        "lemma_id": args.id,
        "verdicts": [v.as_dict() for v in verdicts],
        "all_pass": all_pass,
    }
    if args.json is not None:
        _emit_report(
            args, "verify-lemma",
            {"id": args.id, "mode": mode, "samples": args.samples,
             "n": args.n, "s": args.s, "a": args.a, "b": args.b},
            payload, started, args.seed, args.json,
        )
    if not all_pass:
        for v in verdicts:
            for cex in v.counterexamples:
                note(f"counterexample for {v.lemma_id}: {json.dumps(cex)}")
    return 0 if all_pass else 1


def _cmd_absorb(args) -> int:
    started = time.perf_counter()
    h = read_edge_list(args.graph)
    family = build_family(
        h,
        sample_count=args.samples,
        per_a_target=args.target,
        seed=args.seed,
        budget_per_a=args.budget,
        epsilon=args.epsilon,
    )
    demo = None
    demo_ok = True
    if args.vprime > 0:
        rng = np.random.default_rng(args.seed + 1)
        free = sorted(set(range(h.n)) - set(family.vertex_union()))
        if len(free) < args.vprime or args.vprime % 3 != 0:
            demo = {"v_prime": [], "success": False,
                    "error": "not enough free vertices for the demo"}
            demo_ok = False
        else:
            vp = sorted(int(v) for v in
                        rng.choice(len(free), size=args.vprime, replace=False))
            vp = [free[i] for i in vp]
            try:
                cert = absorb(family, vp, seed=args.seed + 2)
                demo = {
                    "v_prime": vp,
                    "success": True,
                    "matching": [list(e) for e in cert.edges],
                    "covered": sorted(cert.covered),
                }
            except (AbsorptionError, ValueError) as exc:
                demo = {"v_prime": vp, "success": False, "error": str(exc)}
                demo_ok = False
    payload = {
        "family": family.as_dict(),
        "demo": demo,
    }
    if args.json is not None:
        _emit_report(
            args, "absorb",
            {"graph": str(args.graph), "samples": args.samples,
             "target": args.target, "budget": args.budget,
             "epsilon": args.epsilon, "vprime": args.vprime},
            payload, started, args.seed, args.json,
        )
    else:
        cov = family.coverage
        print(f"family: {len(family.sets)} disjoint absorbing 18-sets")
        print(f"coverage: {cov['fraction_met']:.2f} of {len(cov['samples'])} "
              f"sampled 3-sets reached target {cov['target']}")
        if demo is not None:
            print(f"demo absorb of {demo.get('v_prime')}: "
                  f"{'ok' if demo['success'] else demo.get('error')}")
    full = family.coverage["fraction_met"] == 1.0 and demo_ok
    return 0 if full else 1


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="orematch",
        description="Degree-sum perfect-matching toolkit for 3-uniform "
                    "hypergraphs",
    )
    top.add_argument("--version", action="version",
                     version=f"orematch {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit a named family as an edge list")
    p.add_argument("family", choices=["h1", "h2", "h3", "h12"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int)
    p.add_argument("--x", type=int)
    p.add_argument("--y", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=_cmd_construct)

    p = sub.add_parser("stats", help="n, m, min degree, sigma2, independence")
    p.add_argument("file")
    p.add_argument("--json", nargs="?", const="-")
    p.set_defaults(fn=_cmd_stats)

    p = sub.add_parser("match", help="perfect or maximum matching")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--perfect", action="store_true")
    group.add_argument("--max", action="store_true")
    p.add_argument("--json", nargs="?", const="-")
    p.set_defaults(fn=_cmd_match)

    p = sub.add_parser("sweep", help="sigma2 sweep over the (x, y) grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--csv", nargs="?", const="-")
    p.add_argument("--json", nargs="?", const="-")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("certify", help="three-condition counterexample report")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", nargs="?", const="-")
    p.set_defaults(fn=_cmd_certify)

    p = sub.add_parser("verify-lemma", help="finite lemma verification")
    p.add_argument("--id", required=True, choices=list(LEMMA_IDS))
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--n", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--json", nargs="?", const="-")
    p.set_defaults(fn=_cmd_verify_lemma)

    p = sub.add_parser("absorb", help="build an absorbing family and demo it")
    p.add_argument("--graph", required=True)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--target", type=int, default=1)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--budget", type=int, default=120)
    p.add_argument("--epsilon", type=float, default=0.05)
    p.add_argument("--vprime", type=int, default=6,
                   help="size of the demo leftover set (0 skips the demo)")
    p.add_argument("--json", nargs="?", const="-")
    p.set_defaults(fn=_cmd_absorb)

    return top


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
