"""Command line front end: ``stabcut solve | bench | verify``.

Exit codes: 0 success, 1 verify mismatch, 2 bad flags, 3 unreadable
instance, 4 instance too large for the exact oracle.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .formats import FormatError, load_instance
from .oracle import DEFAULT_MAX_N, OracleSizeError
from .runner import ALGORITHMS, SolveOptions, render, run

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_ORACLE = 4

INSTANCE_SUFFIXES = {".tsp": "tsplib", ".mcut": "mcut"}


def _positive_float(text):
    value = float(text)
    if not math.isfinite(value) or value < 0:
        raise argparse.ArgumentTypeError("epsilon must be a non-negative number")
    return value


def _add_policy_flags(p):
    p.add_argument("--tie-break", choices=("lex", "revlex"), default="lex")
    p.add_argument("--survivor", choices=("small", "large"), default="small")
    p.add_argument(
        "--dec-direction", choices=("max-total", "keep-smaller", "keep-larger"), default="max-total"
    )
    p.add_argument("--epsilon", type=_positive_float, default=None)
    p.add_argument("--engine", choices=("heap", "naive"), default="heap")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="exact oracle size limit")


def _options(args) -> SolveOptions:
    return SolveOptions(
        tie_break=args.tie_break,
        survivor=args.survivor,
        dec_direction=args.dec_direction,
        epsilon=args.epsilon,
        engine=args.engine,
        max_n=args.max_n,
    )


def _number_arg(text):
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _algorithm_list(text):
    names = [a.strip() for a in text.split(",") if a.strip()]
    bad = [a for a in names if a not in ALGORITHMS]
    if bad or not names:
        raise argparse.ArgumentTypeError(
            f"unknown algorithm(s) {', '.join(bad) or '(none)'}; choose from {', '.join(ALGORITHMS)}"
        )
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stabcut", description="Max-Cut heuristics and benchmarks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one instance")
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--format", choices=("tsplib", "mcut"), required=True)
    p.add_argument("--algorithm", choices=ALGORITHMS, required=True)
    p.add_argument("--trace", action="store_true", help="print the contraction trace to stderr")
    p.add_argument("--output", choices=("csv", "md", "json"), default="csv")
    p.add_argument("--repeat", type=int, default=1)
    _add_policy_flags(p)

    p = sub.add_parser("bench", help="run algorithms over every instance in a directory")
    p.add_argument("--dir", required=True, type=Path)
    p.add_argument("--algorithms", required=True, type=_algorithm_list)
    p.add_argument("--output", choices=("csv", "md", "json"), default="csv")
    p.add_argument("--out-file", type=Path)
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--jobs", type=int, default=1, help="solve instances in parallel processes")
    _add_policy_flags(p)

    p = sub.add_parser("verify", help="check a computed cut weight against an expected value")
    p.add_argument("--input", required=True, type=Path)
    p.add_argument("--format", choices=("tsplib", "mcut"), required=True)
    p.add_argument("--algorithm", choices=ALGORITHMS, required=True)
    p.add_argument("--expect", required=True, type=_number_arg)
    _add_policy_flags(p)
    return parser


def _load(path, fmt):
    try:
        return load_instance(path, fmt)
    except FormatError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        return None


def cmd_solve(args) -> int:
    loaded = _load(args.input, args.format)
    if loaded is None:
        return EXIT_PARSE
    name, W = loaded
    try:
        report, outcome = run(name, W, args.algorithm, _options(args), args.repeat)
    except OracleSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    sys.stdout.write(render([report], args.output))
    if args.trace:
        if outcome.trace is None:
            print(f"# {args.algorithm} does not contract edges; no trace", file=sys.stderr)
        else:
            sys.stderr.write(outcome.trace.to_text())
    return EXIT_OK


def _bench_instance(job):
    name, W, algorithms, options, repeat = job
    reports, skipped = [], []
    for algorithm in algorithms:
        try:
            reports.append(run(name, W, algorithm, options, repeat)[0])
        except OracleSizeError as exc:
            skipped.append(f"{name}/{algorithm}: {exc}")
    optimum = next((r.cut_weight for r in reports if r.algorithm == "exact"), None)
    if optimum is not None:
        for r in reports:
            r.optimal_weight = optimum
    return reports, skipped


def cmd_bench(args) -> int:
    files = sorted(
        p for p in args.dir.iterdir() if p.is_file() and p.suffix.lower() in INSTANCE_SUFFIXES
    ) if args.dir.is_dir() else []
    if not files:
        print(f"error: no instances found in {args.dir}", file=sys.stderr)
        return EXIT_PARSE
    loaded, failed = [], False
    for path in files:
        got = _load(path, INSTANCE_SUFFIXES[path.suffix.lower()])
        if got is None:
            failed = True
        else:
            loaded.append(got)
    if failed:
        return EXIT_PARSE
    loaded.sort(key=lambda item: item[0])
    options = _options(args)
    jobs = [(name, W, args.algorithms, options, args.repeat) for name, W in loaded]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_bench_instance, jobs))
    else:
        results = [_bench_instance(job) for job in jobs]
    reports = []
    for rows, skipped in results:
        reports.extend(rows)
        for note in skipped:
            print(f"skipped {note}", file=sys.stderr)
    text = render(reports, args.output)
    if args.out_file:
        args.out_file.write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    loaded = _load(args.input, args.format)
    if loaded is None:
        return EXIT_PARSE
    name, W = loaded
    options = _options(args)
    try:
        report, _ = run(name, W, args.algorithm, options)
    except OracleSizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    got, expect = report.cut_weight, args.expect
    if W.is_integer:
        ok = got == expect
    else:
        eps = options.epsilon if options.epsilon is not None else W.epsilon
        ok = abs(got - expect) <= eps
    print(f"{name} {args.algorithm}: computed {got}, expected {expect}: {'OK' if ok else 'MISMATCH'}")
    return EXIT_OK if ok else EXIT_MISMATCH


COMMANDS = {"solve": cmd_solve, "bench": cmd_bench, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "repeat", 1) < 1:
        parser.error("--repeat must be at least 1")
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
