"""Command-line driver: run one search on a file or generated instance and
print a JSON summary.

Exit codes: 0 on success, 2 on bad arguments or a malformed instance
file, 1 on I/O failure or a result that fails re-verification.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import asdict
from pathlib import Path

from .choice import ChoiceConfig, Rule
from .double_pass import DoublePassAscent, DoublePassConfig
from .engine import AAConfig, AlternatingAscent
from .harness import BRUTE_FORCE_LIMIT, FormatError, brute_force, generate_instance, load_qubo
from .memory import EEConfig
from .qubo import QuboProvider, objective
from .tabu import TabuConfig, TabuSearch

ALGOS = ("single", "double-v1", "double-v2", "tabu", "tabu-free")
TRACE_COLUMNS = ["iter", "phase", "k", "eval_k", "xo", "xo_star", "status_event", "trigger_fired"]
STATS_COLUMNS = ["min", "mean", "max", "cutoff", "list_len"]


class UsageError(Exception):
    pass


def _parse_random(text: str) -> tuple[int, float, int]:
    try:
        n, density, rng = text.split(",")
        return int(n), float(density), int(rng)
    except ValueError:
        raise argparse.ArgumentTypeError("expected n,density,range, e.g. 50,0.5,100") from None


def _pair(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(",")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError("expected low,high") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="altascent",
        description="Alternating Ascent and baseline tabu search for QUBO maximization.",
    )
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--instance", metavar="PATH", help="instance file ('n m' header, then 'i j q' lines)")
    src.add_argument("--random", type=_parse_random, metavar="N,DENSITY,RANGE", help="generate a seeded random instance")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--algo", choices=ALGOS, default="single")
    p.add_argument("--choice", choices=[r.value for r in Rule], default=Rule.WEIGHTED_SUM.value)
    p.add_argument("--Q", type=int, default=20, help="EE window length")
    p.add_argument("--r", type=int, default=10, help="recency depth")
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--arithmetic", choices=("int", "real"), default=None, help="default: int when alpha is 2")
    p.add_argument("--trigger", type=int, default=5)
    p.add_argument("--W1", type=float, default=0.1)
    p.add_argument("--W2", type=float, default=10.0)
    p.add_argument("--F", type=float, default=None, help="cutoff fraction (default .8)")
    p.add_argument("--max-iter", type=int, default=10_000)
    p.add_argument("--mc", choices=("A", "B", "off"), default="off", help="myopic correction schedule")
    p.add_argument("--small", type=int, default=0, choices=(0, 1, 2), help="tenure of dropped moves")
    p.add_argument("--no-list", action="store_true", help="double pass: rescan the index range instead of the list")
    p.add_argument("--tenure", type=_pair, default=(7, 12), metavar="LOW,HIGH", help="tabu baseline tenure range")
    p.add_argument("--tabu-range", type=int, default=100)
    p.add_argument("--xo-tolerance", type=float, default=0.0)
    p.add_argument("--out", metavar="PATH", help="write JSON here instead of stdout")
    p.add_argument("--trace", metavar="PATH", help="write a per-iteration CSV trace")
    p.add_argument("--brute-force", action="store_true", help=f"also report the exact optimum (n <= {BRUTE_FORCE_LIMIT})")
    return p


def _make_search(args, provider):
    want_trace = args.trace is not None
    if args.algo in ("tabu", "tabu-free"):
        low, high = args.tenure
        cfg = TabuConfig(
            tenure_low=low,
            tenure_high=high,
            max_iter=args.max_iter,
            seed=args.seed,
            tabu_free=args.algo == "tabu-free",
            tabu_range=args.tabu_range,
            xo_tolerance=args.xo_tolerance,
            trace=want_trace,
        )
        return TabuSearch(provider, cfg)
    arithmetic = args.arithmetic or ("int" if args.alpha == 2 else "real")
    F = 0.8 if args.F is None else args.F
    cfg = AAConfig(
        ee=EEConfig(Q=args.Q, r=args.r, alpha=args.alpha, arithmetic=arithmetic),
        # F belongs to the choice rule in a single pass, to the cutoff in a double pass
        choice=ChoiceConfig(rule=Rule(args.choice), W1=args.W1, W2=args.W2, F=F if args.algo == "single" else 0.8),
        trigger=args.trigger,
        max_iter=args.max_iter,
        small=args.small,
        mc_schedule=None if args.mc == "off" else args.mc,
        seed=args.seed,
        trace=want_trace,
    )
    if args.algo == "single":
        return AlternatingAscent(provider, cfg)
    dp = DoublePassConfig(version=1 if args.algo == "double-v1" else 2, F=F, use_list=not args.no_list)
    return DoublePassAscent(provider, cfg, dp)


def write_trace(path: str, trace, with_stats: bool) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(TRACE_COLUMNS + (STATS_COLUMNS if with_stats else []))
        for t in trace:
            row = [t.iter, t.phase, t.k, t.eval_k, t.xo, t.xo_star, t.status_event, int(t.trigger_fired)]
            if with_stats:
                ex = t.extra or {}
                row += [ex.get(c, "") for c in STATS_COLUMNS]
            w.writerow(row)


def run(args) -> dict:
    if args.instance is not None:
        inst = load_qubo(args.instance)
        source = {"file": str(Path(args.instance))}
    else:
        n, density, rng = args.random
        inst = generate_instance(n, density, rng, args.seed)
        source = {"random": {"n": n, "density": density, "range": rng, "seed": args.seed}}
    if args.brute_force and inst.n > BRUTE_FORCE_LIMIT:
        raise UsageError(f"--brute-force needs n <= {BRUTE_FORCE_LIMIT}, instance has n = {inst.n}")
    search = _make_search(args, QuboProvider(inst))
    result = search.run()
    # re-verify the reported best against a from-scratch evaluation
    if objective(inst, result.best_assignment) != result.best_objective:
        raise RuntimeError("best_assignment does not reproduce best_objective")
    out = result.summary()
    out["algo"] = args.algo
    if isinstance(search, DoublePassAscent):
        out["config"]["double_pass"] = asdict(search.dp)
    out["instance"] = {"n": inst.n, "entries": len(inst.coeffs), **source}
    if args.brute_force:
        opt, _ = brute_force(inst)
        out["optimum"] = opt
        out["optimum_found"] = result.best_objective == opt
    if args.trace:
        write_trace(args.trace, result.trace, args.algo.startswith("double"))
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = run(args)
    except (FormatError, UsageError, ValueError) as exc:
        print(f"altascent: error: {exc}", file=sys.stderr)
        return 2
    except (OSError, RuntimeError) as exc:
        print(f"altascent: error: {exc}", file=sys.stderr)
        return 1
    text = json.dumps(out, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
