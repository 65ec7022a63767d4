"""Command-line benchmark driver.

Solves each instance for each requested k, prints one run record per
(instance, k) pair, and can emit the records as CSV, JSON, or an aligned
table, optionally with report figures rendered next to the output.

Exit status: 0 when every run finished optimally, 2 when any run timed
out, 1 on any error (including bad flags and failed oracle checks).
"""

from __future__ import annotations

import argparse
import sys

from .instances import FORMATS, InstanceSpec, ParseError, parse_instance
from .oracle import OracleLimitError, brute_force
from .records import EMIT_FORMATS, RunRecord, emit_records
from .search import SolverConfig, solve

ORACLE_CHECK_LIMIT = 24


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        raise CliError(f"{message}\n{self.format_usage().rstrip()}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="kdclique",
        description="Exact maximum k-defective clique solver and benchmark harness.",
    )
    parser.add_argument("instances", nargs="+", help="instance files to solve")
    parser.add_argument(
        "--k", type=int, action="append",
        help="missing-edge budget; repeat for a sweep (default: 1)",
    )
    parser.add_argument("--time-limit", type=float, default=1800.0, metavar="SEC",
                        help="cut-off time per run in seconds (default: 1800)")
    parser.add_argument("--seed", type=int, default=0,
                        help="branching tie-break seed (0 = vertex-id order)")
    parser.add_argument("--no-club-pre", action="store_true",
                        help="disable the coloring bound during preprocessing")
    parser.add_argument("--no-club-bnb", action="store_true",
                        help="disable the coloring bound during the search")
    parser.add_argument("--oracle-check", action="store_true",
                        help=f"verify results by brute force (≤ {ORACLE_CHECK_LIMIT} vertices)")
    parser.add_argument("--format", choices=FORMATS, default="auto",
                        help="instance file format (default: auto-detect)")
    parser.add_argument("--out", metavar="PATH", help="write the emission to a file")
    parser.add_argument("--emit", choices=EMIT_FORMATS, default="table",
                        help="output encoding (default: table)")
    parser.add_argument("--figures", metavar="DIR",
                        help="render report figures into this directory")
    return parser


def run_cli(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)

    ks = args.k if args.k else [1]
    try:
        return _run(args, ks)
    except (CliError, ParseError, OracleLimitError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _run(args, ks: list[int]) -> int:
    records: list[RunRecord] = []
    any_timeout = False
    for path in args.instances:
        instance = parse_instance(InstanceSpec(path, args.format))
        g = instance.graph
        if args.oracle_check and g.active_count > ORACLE_CHECK_LIMIT:
            raise CliError(
                f"{instance.label}: {g.active_count} vertices exceed the "
                f"--oracle-check limit of {ORACLE_CHECK_LIMIT}"
            )
        for k in ks:
            if k < 0:
                raise CliError(f"--k must be non-negative, got {k}")
            config = SolverConfig(
                k=k,
                time_limit=args.time_limit,
                seed=args.seed,
                club_in_preprocess=not args.no_club_pre,
                club_in_bnb=not args.no_club_bnb,
            )
            result = solve(g, k, config)
            record = RunRecord.from_result(
                instance.label, g.n, g.edge_count, k, result, config
            )
            records.append(record)
            any_timeout |= result.status == "timeout"
            witness = " ".join(instance.original_labels(result.witness))
            print(
                f"{record.instance} k={k}: best={record.best_size} "
                f"status={record.status} nodes={record.tree_nodes} "
                f"time={record.total_time:.3f}s witness=[{witness}]",
                file=sys.stderr,
            )
            if args.oracle_check:
                reference = brute_force(g, k)
                if reference.size != result.best_size:
                    raise CliError(
                        f"{instance.label} k={k}: solver found {result.best_size} "
                        f"but brute force found {reference.size}"
                    )

    text = emit_records(records, args.emit)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    if args.figures:
        from .report import render_figures

        for fig_path in render_figures(records, args.figures):
            print(f"wrote {fig_path}", file=sys.stderr)

    return 2 if any_timeout else 0


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
