import argparse
import logging
import os
import sys
from typing import List, Optional

from affinefields.errors import AffineFieldsError
from fieldsuites.config import load_config
from fieldsuites.suites import SuiteRunner
from fieldsuites.table_writer import write_summary, write_table

logger = logging.getLogger(__name__)

COMMANDS = ("demo-inhomogeneous", "moments", "causality-scan", "timeslice")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="path to a 'key = value' run configuration")
    common.add_argument("--out", default=None, help="output directory (overrides 'out')")
    common.add_argument("--seed", type=int, default=None, help="random seed (overrides 'seed')")
    common.add_argument("--verbose", action="store_true", help="log at DEBUG level")

    parser = argparse.ArgumentParser(
        prog="affine-fields",
        description="Verification suites for affine field theories on lattice spacetimes.",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("demo-inhomogeneous", parents=[common],
                        help="recover the source J from one-point functions")
    commands.add_parser("moments", parents=[common],
                        help="moments and truncated moments up to n = 6")
    commands.add_parser("causality-scan", parents=[common],
                        help="tau and commutators over a grid of separations")
    commands.add_parser("timeslice", parents=[common],
                        help="deform observables into the configured window")
    return parser


def run_command(command: str, config) -> bool:
    """
    Runs one suite and writes `<out>/<command>.csv` and `<out>/<command>-summary.json`.

    :return: True if every check of the suite passed
    """
    result = SuiteRunner(config).run(command)
    table = os.path.join(config.out, f"{command}.csv")
    count = write_table(table, result.header, result.rows)
    summary = dict(result.summary, command=command, seed=config.seed, passed=result.passed)
    write_summary(os.path.join(config.out, f"{command}-summary.json"), summary)
    print(f"{command}: {count} rows written to {table}, {'passed' if result.passed else 'FAILED'}",
          file=sys.stderr)
    return result.passed


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s: %(message)s",
    )
    try:
        config = load_config(args.config, {"out": args.out, "seed": args.seed})
        passed = run_command(args.command, config)
    except AffineFieldsError as e:
        print(f"affine-fields {args.command}: {e}", file=sys.stderr)
        return 2
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
