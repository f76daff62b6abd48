"""Command-line front end.

Exit codes: 0 success, 1 mathematical mismatch (a would-be counterexample),
2 usage error, 3 resource budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import BudgetExceeded, CapExceeded, FactorBudgetExceeded
from .fibcore import fib
from .modfib import factorize, fib_mod, pisano_period, pisano_period_brute
from .oracle import oracle_budget
from .report import analysis_to_dict, parse_range, render_csv, render_json, run_sweep
from .tower import TowerSpec, analyze
from .verify import suites_for

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

# brute period search stays affordable below this modulus
BRUTE_LIMIT = 10_000_000
CROSSCHECK_LIMIT = 100_000


def _positive(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fibtower",
        description="Exact valuation and unit-residue analysis of Fibonacci index towers.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_fib = sub.add_parser("fib", help="exact Fibonacci number")
    p_fib.add_argument("index", type=_positive)
    p_fib.add_argument("--max-index", type=_positive, default=None)

    p_fibmod = sub.add_parser("fibmod", help="Fibonacci number modulo m")
    p_fibmod.add_argument("index", type=_positive)
    p_fibmod.add_argument("modulus", type=_positive)

    p_pisano = sub.add_parser("pisano", help="Pisano period of a modulus")
    p_pisano.add_argument("modulus", type=_positive)
    p_pisano.add_argument(
        "--method", choices=("brute", "factored", "auto"), default="auto"
    )

    p_analyze = sub.add_parser("analyze", help="analyze one tower spec")
    p_analyze.add_argument("k", type=_positive)
    p_analyze.add_argument("n", type=_positive)
    p_analyze.add_argument("m", type=_positive)
    p_analyze.add_argument("--json", action="store_true", dest="as_json")

    p_sweep = sub.add_parser("sweep", help="analyze a parameter grid")
    p_sweep.add_argument("--k", required=True, metavar="A..B")
    p_sweep.add_argument("--n", required=True, metavar="A..B")
    p_sweep.add_argument("--m", required=True, metavar="A..B")
    p_sweep.add_argument("--jobs", type=int, default=1)
    p_sweep.add_argument("--out", type=Path, default=None)
    p_sweep.add_argument("--format", choices=("json", "csv"), default="json")

    p_verify = sub.add_parser("verify", help="run the property suites")
    p_verify.add_argument(
        "--suite", choices=("identities", "lemmas", "oracle", "all"), default="all"
    )
    p_verify.add_argument("--max-index", type=_positive, default=None)

    return parser


def _cmd_fib(args) -> int:
    print(fib(args.index, max_index=args.max_index))
    return EXIT_OK


def _cmd_fibmod(args) -> int:
    if args.modulus < 1:
        print("modulus must be positive", file=sys.stderr)
        return EXIT_USAGE
    print(fib_mod(args.index, args.modulus))
    return EXIT_OK


def _cmd_pisano(args) -> int:
    m = args.modulus
    if m < 1:
        print("modulus must be positive", file=sys.stderr)
        return EXIT_USAGE
    if args.method == "brute":
        if m >= BRUTE_LIMIT:
            raise CapExceeded(
                f"brute period search refused for modulus >= {BRUTE_LIMIT}"
            )
        print(pisano_period_brute(m))
        return EXIT_OK
    if args.method == "factored":
        print(pisano_period(factorize(m)).value)
        return EXIT_OK
    # auto: factored first, brute as fallback and as cross-check when cheap
    try:
        period = pisano_period(factorize(m)).value
    except FactorBudgetExceeded:
        if m >= BRUTE_LIMIT:
            raise
        period = pisano_period_brute(m)
        print(period)
        return EXIT_OK
    if m <= CROSSCHECK_LIMIT and period != pisano_period_brute(m):
        print(f"factored/brute disagreement for modulus {m}", file=sys.stderr)
        return EXIT_MISMATCH
    print(period)
    return EXIT_OK


def _format_analysis(report) -> str:
    d = analysis_to_dict(report)
    order = (
        "k",
        "n",
        "m",
        "fn",
        "expected_valuation",
        "divisibility_ok",
        "unit_residue",
        "exact",
        "case",
        "predicted_residue",
        "match",
        "trivial_base",
        "status",
    )
    lines = [f"{key:>20}  {d[key]}" for key in order]
    chain = " <- ".join(str(level["modulus"]) for level in d["chain"]) or "(trivial)"
    lines.append(f"{'chain':>20}  {chain}")
    return "\n".join(lines)


def _cmd_analyze(args) -> int:
    report = analyze(TowerSpec(k=args.k, n=args.n, m=args.m))
    if args.as_json:
        print(json.dumps(analysis_to_dict(report), indent=2, sort_keys=True))
    else:
        print(_format_analysis(report))
    ok = report.divisibility_ok and report.match
    return EXIT_OK if ok else EXIT_MISMATCH


def _cmd_sweep(args, parser: argparse.ArgumentParser) -> int:
    try:
        k_range = parse_range(args.k)
        n_range = parse_range(args.n)
        m_range = parse_range(args.m)
    except ValueError as exc:
        parser.error(str(exc))
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    report = run_sweep(k_range, n_range, m_range, jobs=args.jobs)
    text = render_csv(report) if args.format == "csv" else render_json(report)
    if args.out is not None:
        args.out.write_bytes(text.encode("utf-8"))
    else:
        sys.stdout.write(text)
    counts = report.summary()["status"]
    return EXIT_MISMATCH if counts.get("mismatch") else EXIT_OK


def _cmd_verify(args) -> int:
    results = suites_for(args.suite, args.max_index)
    failed = 0
    for res in results:
        if res.ok:
            print(f"PASS  {res.name}  ({res.cases} cases)")
        else:
            failed += 1
            print(f"FAIL  {res.name}  ({res.cases} cases)  {res.detail}")
    total = len(results)
    label = {
        "identities": "identity families",
        "lemmas": "lemma properties",
        "oracle": "oracle agreement properties",
        "all": "properties",
    }[args.suite]
    print(f"{total - failed}/{total} {label} pass")
    if args.suite in ("oracle", "all"):
        print(f"oracle index budget: {oracle_budget(args.max_index)}")
    return EXIT_OK if failed == 0 else EXIT_MISMATCH


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "fib":
            return _cmd_fib(args)
        if args.command == "fibmod":
            return _cmd_fibmod(args)
        if args.command == "pisano":
            return _cmd_pisano(args)
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "sweep":
            return _cmd_sweep(args, parser)
        if args.command == "verify":
            return _cmd_verify(args)
    except (BudgetExceeded, FactorBudgetExceeded, CapExceeded) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # parser.error inside subcommands
        return int(exc.code or 0)
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
