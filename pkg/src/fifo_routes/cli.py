"""Command-line interface.

    fifo-routes ingest GTFS_DIR --out timetable.json
    fifo-routes generate --sequences 10 --trips 20 --stops 8 --out t.json
    fifo-routes solve t.json --algorithm optimal --out routes.json
    fifo-routes verify t.json routes.json
    fifo-routes compare t.json

Exit codes: 0 success, 1 verification failure, 2 input/data error,
3 solver refusal (brute-force limit), 64 usage error.  Results go only
to --out files; stdout carries summaries, stderr diagnostics.
"""

from __future__ import annotations

import argparse
import json
import sys

from fifo_routes import files, gtfs
from fifo_routes.generate import GeneratorSpec, generate_synthetic
from fifo_routes.solvers import (
    BruteForceLimitError,
    DEFAULT_BRUTE_PARTITION_LIMIT,
    solve_brute,
    solve_greedy,
    solve_optimal,
    solve_trivial,
)
from fifo_routes.verify import (
    VerificationError,
    compare_solvers,
    verify_certificate,
    verify_partition,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_DATA_ERROR = 2
EXIT_REFUSED = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the CLI contract wants 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="fifo-routes",
        description="Group transit trips into a minimal set of FIFO routes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="load a GTFS directory")
    p_ingest.add_argument("gtfs_dir", help="directory containing stop_times.txt")
    p_ingest.add_argument("--out", required=True, help="canonical timetable JSON to write")

    p_solve = sub.add_parser("solve", help="partition a timetable into FIFO routes")
    p_solve.add_argument("timetable", help="canonical timetable JSON")
    p_solve.add_argument(
        "--algorithm",
        choices=["optimal", "greedy", "trivial", "brute"],
        default="optimal",
    )
    p_solve.add_argument("--out", required=True, help="assignment file to write")
    p_solve.add_argument("--format", choices=["json", "csv"], default="json")
    p_solve.add_argument(
        "--brute-limit",
        type=int,
        default=DEFAULT_BRUTE_PARTITION_LIMIT,
        help="per-group size cap for --algorithm brute",
    )
    p_solve.add_argument("--threads", type=int, default=None)

    p_verify = sub.add_parser("verify", help="check an assignment against a timetable")
    p_verify.add_argument("timetable")
    p_verify.add_argument("assignment")

    p_compare = sub.add_parser("compare", help="route counts: optimal vs greedy vs trivial")
    p_compare.add_argument("timetable")
    p_compare.add_argument("--threads", type=int, default=None)

    p_gen = sub.add_parser("generate", help="write a synthetic timetable")
    p_gen.add_argument("--sequences", type=int, default=10)
    p_gen.add_argument("--trips", type=int, default=20)
    p_gen.add_argument("--stops", type=int, default=8)
    p_gen.add_argument("--headway", type=int, default=600)
    p_gen.add_argument("--jitter", type=int, default=0)
    p_gen.add_argument("--overtake-prob", type=float, default=0.0)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", required=True)

    return parser


def _cmd_ingest(args) -> int:
    try:
        timetable, report = gtfs.load_gtfs(args.gtfs_dir)
    except gtfs.IngestError as exc:
        print(f"ingest error: {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR
    files.save_timetable(timetable, args.out)
    print(f"trips_loaded:   {report.trips_loaded}")
    print(f"trips_dropped:  {report.trips_dropped}")
    for reason in sorted(report.drop_reasons):
        print(f"  {reason}: {report.drop_reasons[reason]}")
    print(f"stations_seen:  {report.stations_seen}")
    if report.frequencies_rows:
        print(f"frequencies_rows_ignored: {report.frequencies_rows}")
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_solve(args) -> int:
    timetable = files.load_timetable(args.timetable)
    certificate = None
    if args.algorithm == "optimal":
        partition, certificate = solve_optimal(timetable, threads=args.threads)
    elif args.algorithm == "greedy":
        partition = solve_greedy(timetable, threads=args.threads)
    elif args.algorithm == "trivial":
        partition = solve_trivial(timetable)
    else:
        try:
            partition = solve_brute(timetable, limit=args.brute_limit)
        except BruteForceLimitError as exc:
            print(f"refused: {exc}", file=sys.stderr)
            return EXIT_REFUSED
    files.save_assignment(
        partition,
        timetable,
        args.out,
        fmt=args.format,
        certificate=certificate if args.format == "json" else None,
    )
    print(f"total routes: {partition.total_routes}")
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    timetable = files.load_timetable(args.timetable)
    partition, certificate = files.load_assignment(args.assignment, timetable)
    try:
        report = verify_partition(partition, timetable)
    except VerificationError as exc:
        print(f"verification error: {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR
    for violation in report.violations:
        print(violation)
    if not report.valid:
        print(f"INVALID: {len(report.violations)} violation(s)")
        return EXIT_INVALID
    if certificate is not None:
        if not verify_certificate(certificate, partition, timetable):
            print("INVALID: optimality certificate does not verify")
            return EXIT_INVALID
        print(
            f"OK: {partition.total_routes} routes over"
            f" {report.groups_checked} group(s); certificate verified"
        )
    else:
        print(
            f"OK: {partition.total_routes} routes over"
            f" {report.groups_checked} group(s)"
        )
    return EXIT_OK


def _cmd_compare(args) -> int:
    timetable = files.load_timetable(args.timetable)
    stats = compare_solvers(timetable, threads=args.threads)
    header = f"{'stop sequence':<32} {'trips':>7} {'optimal':>8} {'greedy':>7} {'trivial':>8}"
    print(header)
    print("-" * len(header))
    for row in stats.rows:
        label = "-".join(row.sequence)
        if len(label) > 32:
            label = label[:29] + "..."
        print(
            f"{label:<32} {row.trips:>7} {row.optimal_routes:>8}"
            f" {row.greedy_routes:>7} {row.trivial_routes:>8}"
        )
    print("-" * len(header))
    print(
        f"{'TOTAL':<32} {stats.total_trips:>7} {stats.total_optimal:>8}"
        f" {stats.total_greedy:>7} {stats.total_trivial:>8}"
    )
    print()
    print(
        json.dumps(
            {
                "total_trips": stats.total_trips,
                "total_optimal": stats.total_optimal,
                "total_greedy": stats.total_greedy,
                "total_trivial": stats.total_trivial,
                "groups": len(stats.rows),
                "groups_where_greedy_suboptimal": stats.groups_where_greedy_suboptimal,
            },
            indent=2,
        )
    )
    return EXIT_OK


def _cmd_generate(args) -> int:
    try:
        spec = GeneratorSpec(
            num_sequences=args.sequences,
            trips_per_sequence=args.trips,
            stops_per_sequence=args.stops,
            headway_seconds=args.headway,
            jitter_seconds=args.jitter,
            overtake_probability=args.overtake_prob,
            rng_seed=args.seed,
        )
    except ValueError as exc:
        print(f"fifo-routes generate: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    timetable = generate_synthetic(spec)
    files.save_timetable(timetable, args.out)
    print(f"generated {len(timetable)} trips over {args.sequences} sequence(s)")
    print(f"wrote {args.out}")
    return EXIT_OK


_COMMANDS = {
    "ingest": _cmd_ingest,
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "compare": _cmd_compare,
    "generate": _cmd_generate,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (files.FileFormatError, FileNotFoundError, NotADirectoryError) as exc:
        print(f"fifo-routes {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
