"""Command line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 internal
invariant breach.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import records
from .curves import PointNotOnCurve, curve_from_triple
from .descent import infinite_order_witness
from .rank import InvariantBreach, RankConfig, rank_interval
from .survey import CheckpointMismatch, run_survey
from .tables import TABLE_IDS, TableDataError, verify_tables
from .torsion import torsion_subgroup
from .triples import gen_triples_even, triple_from_abc

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BREACH = 0, 1, 2, 3
PUBLISHED_COUNT_BOUND, PUBLISHED_COUNT = 1000, 202461


def _parse_triple(text: str):
    try:
        a, b, c = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a,b,c integers, got {text!r}")
    return a, b, c


def _config(args) -> RankConfig:
    return RankConfig(
        point_height=args.search_bound,
        descent_bound=args.descent_bound,
        selmer_enabled=not getattr(args, "no_selmer", False),
    )


def cmd_gen_triples(args) -> int:
    if args.max_ij < 2:
        print(f"error: --max-ij must be >= 2, got {args.max_ij}", file=sys.stderr)
        return EXIT_USAGE
    triples = gen_triples_even(args.max_ij, inclusive=args.inclusive)
    text = records.triples_to_csv(triples) if args.format == "csv" else records.triples_to_jsonl(triples)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"{len(triples)} triples", file=sys.stderr)
    if args.max_ij == PUBLISHED_COUNT_BOUND:
        for name, inclusive in (("i < N", False), ("i <= N", True)):
            n = len(triples) if inclusive == args.inclusive else len(gen_triples_even(args.max_ij, inclusive=inclusive))
            flag = "matches" if n == PUBLISHED_COUNT else "differs from"
            print(f"  {name}: {n} triples ({flag} the published {PUBLISHED_COUNT})", file=sys.stderr)
    return EXIT_OK


def cmd_curve(args) -> int:
    try:
        triple = triple_from_abc(*args.triple)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    curve = curve_from_triple(triple)
    report: dict = {
        "triple": list(triple.abc),
        "params": [triple.params.i, triple.params.j],
        "curve": str(curve),
        "A": str(curve.A),
        "B": str(curve.B),
        "discriminant": str(curve.D),
    }
    if args.torsion or args.all:
        tors = torsion_subgroup(curve)
        report["torsion"] = {
            "structure": tors.group_structure,
            "order": tors.order,
            "two_torsion": [records.point_to_json(T) for T in tors.two_torsion],
            "evidence": [list(e) for e in tors.order_bound_evidence],
        }
    if args.witness or args.all:
        P, cert = infinite_order_witness(curve)
        report["witness"] = {
            "point": records.point_to_json(P),
            "y_divides_D": cert.y_divides_D,
            "nonzero_multiples": list(cert.nonzero_multiples),
        }
    if args.rank or args.all:
        extra = records.read_points_csv(args.points) if args.points else []
        ri = rank_interval(curve, _config(args), extra)
        report["rank"] = {
            "lower": ri.lower,
            "upper": ri.upper,
            "selmer_dim": ri.selmer_dim,
            "lower_witnesses": [records.point_to_json(P) for P in ri.lower_witnesses],
            "notes": ri.method_notes,
        }
    print(json.dumps(report, indent=2))
    return EXIT_OK


def cmd_verify_tables(args) -> int:
    tables = tuple(args.table) if args.table else TABLE_IDS
    report = verify_tables(tables, args.data, _config(args), with_ranks=not args.no_ranks)
    for r in report.results:
        print(r.line())
    passed = sum(r.passed for r in report.results)
    print(f"{passed}/{len(report.results)} checks passed")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_survey(args) -> int:
    summary = run_survey(
        args.max_ij,
        args.out,
        _config(args),
        resume=args.resume,
        jobs=args.jobs,
        timings=not args.no_timings,
        limit=args.limit,
    )
    print(f"processed {summary.processed} curves, {summary.skipped} already in checkpoint")
    print("rank lower bound histogram:")
    for k, v in summary.lower_histogram.items():
        print(f"  {k}: {v}")
    print("rank upper bound histogram:")
    for k, v in summary.upper_histogram.items():
        print(f"  {k}: {v}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pythagorean-curves", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def rank_knobs(p):
        p.add_argument("--search-bound", type=int, default=RankConfig.point_height,
                       help="height bound for the x = m/e^2 point search")
        p.add_argument("--descent-bound", type=int, default=RankConfig.descent_bound,
                       help="direction height bound for homogeneous space searches")

    p = sub.add_parser("gen-triples", help="list primitive triples 1 <= j < i < N")
    p.add_argument("--max-ij", type=int, required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--inclusive", action="store_true", help="scan i <= N instead of i < N")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen_triples)

    p = sub.add_parser("curve", help="report on the curve of one triple")
    p.add_argument("--triple", type=_parse_triple, required=True, metavar="a,b,c")
    p.add_argument("--torsion", action="store_true")
    p.add_argument("--witness", action="store_true")
    p.add_argument("--rank", action="store_true")
    p.add_argument("--all", action="store_true")
    p.add_argument("--no-selmer", action="store_true")
    p.add_argument("--points", metavar="FILE", help="CSV with x,y columns of extra points")
    rank_knobs(p)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("verify-tables", help="replay the bundled published tables")
    p.add_argument("--data", default=None, help="directory holding table1.csv .. table6.csv")
    p.add_argument("--table", action="append", choices=TABLE_IDS)
    p.add_argument("--no-ranks", action="store_true", help="skip rank interval checks")
    rank_knobs(p)
    p.set_defaults(func=cmd_verify_tables)

    p = sub.add_parser("survey", help="run the full pipeline over a parameter range")
    p.add_argument("--max-ij", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--resume", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--limit", type=int, default=None, help="stop after this many new records")
    p.add_argument("--no-timings", action="store_true")
    rank_knobs(p)
    p.set_defaults(func=cmd_survey)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (TableDataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (CheckpointMismatch, PointNotOnCurve) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:  # InvariantBreach included
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return EXIT_BREACH


if __name__ == "__main__":
    sys.exit(main())
