"""Command line front end."""

from __future__ import annotations

import argparse
import json
import sys

from .errors import BudgetExhaustedError, InstanceSpecError, SoundnessViolationError
from .eps import TraceLog, paused_gc
from .instance import load_instance, to_higman_instance
from .realizer import gamma
from .selftest import SelftestCaps, run_selftest

# High enough for any feasible play depth, low enough that the interpreter
# raises RecursionError cleanly instead of exhausting the C stack.
RECURSION_LIMIT = 10_000


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="higman",
        description="Certified goodness bounds for word sequences over finite preordered alphabets.",
    )
    parser.add_argument("--spec", help="path to an instance JSON file")
    parser.add_argument("--mode", choices=["bound", "selftest", "trace"], default="bound")
    parser.add_argument("--seed", type=int, default=0, help="selftest generator seed")
    parser.add_argument("--count", type=int, default=10, help="selftest instance count")
    parser.add_argument("--max-eps-calls", type=int, default=None, help="override the recursion budget")
    parser.add_argument("--trace-out", help="write recursion trace events to this JSONL file")
    parser.add_argument("--json", action="store_true", help="emit machine-readable selftest output")
    return parser


def run_bound(args) -> int:
    if not args.spec:
        print("error: --spec is required for bound and trace modes", file=sys.stderr)
        return 2
    if args.mode == "trace" and not args.trace_out:
        print("error: --trace-out is required for trace mode", file=sys.stderr)
        return 2
    spec = load_instance(args.spec)
    instance = to_higman_instance(spec, eps_calls=args.max_eps_calls)
    trace = TraceLog() if args.trace_out else None
    with paused_gc():
        report = gamma(instance, trace=trace)
    if args.trace_out:
        with open(args.trace_out, "w") as fp:
            trace.write_jsonl(fp)
    print(json.dumps(report.to_json_dict()))
    return 0


def run_selftest_mode(args) -> int:
    caps = SelftestCaps() if args.max_eps_calls is None else SelftestCaps(eps_calls=args.max_eps_calls)
    report = run_selftest(seed=args.seed, count=args.count, caps=caps)
    if args.json:
        print(json.dumps(report.to_dict()))
    else:
        print(report.render_text())
    return 0 if report.ok else 1


def main(argv=None) -> int:
    sys.setrecursionlimit(RECURSION_LIMIT)
    args = build_parser().parse_args(argv)
    try:
        if args.mode == "selftest":
            return run_selftest_mode(args)
        return run_bound(args)
    except InstanceSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BudgetExhaustedError, SoundnessViolationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
