#!/usr/bin/env python3

import argparse
import sys

import imex_relax
from imex_relax.harness.convergence import DEFAULT_CELLS
from imex_relax.harness.presets import benchmark_ids
from imex_relax.logger import setup_logger


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.4e}"
    return str(value)


def get_parser():
    parser = argparse.ArgumentParser(
        prog="imex-relax",
        description="Asymptotic-preserving IMEX Runge-Kutta schemes for 1-D relaxation systems",
        formatter_class=argparse.RawTextHelpFormatter,
    )

    # Global Variables
    parser.add_argument(
        "--debug",
        dest="debug",
        help="use verbose logging to debug.",
        default=False,
        action="store_true",
    )
    parser.add_argument(
        "--quiet",
        dest="quiet",
        help="suppress additional output.",
        default=False,
        action="store_true",
    )
    parser.add_argument(
        "--nocolor",
        dest="nocolor",
        help="suppress color output.",
        default=False,
        action="store_true",
    )
    parser.add_argument(
        "--json",
        dest="json",
        help="print the result as JSON instead of a panel.",
        default=False,
        action="store_true",
    )
    parser.add_argument(
        "--version",
        dest="version",
        help="show software version.",
        default=False,
        action="store_true",
    )

    subparsers = parser.add_subparsers(
        help="actions",
        title="actions",
        description="actions",
        dest="command",
    )

    tableau = subparsers.add_parser("tableau", description="inspect IMEX pairs")
    tableau_actions = tableau.add_subparsers(dest="tableau_command", title="tableau actions")
    check = tableau_actions.add_parser(
        "check", description="classify a pair and verify its order conditions"
    )
    check.add_argument("name", help="builtin identifier (e.g., BPR343) or tableau file")
    check.add_argument("--order", type=int, help="classical order to check (default declared)")
    check.add_argument(
        "--additional",
        default=False,
        action="store_true",
        help="also check the additional conditions on the algebraic component",
    )
    tableau_actions.add_parser("list", description="list the builtin pairs")

    run = subparsers.add_parser("run", description="run one experiment from a config file")
    run.add_argument("--config", required=True, help="experiment config (YAML or JSON)")
    run.add_argument("--progress", default=False, action="store_true", help="log progress")

    converge = subparsers.add_parser("converge", description="temporal convergence study")
    converge.add_argument("--preset", default="test1", help="convergence preset (default test1)")
    converge.add_argument("--tableaus", nargs="+", help="pairs to study")
    converge.add_argument(
        "--cells",
        nargs="+",
        type=int,
        default=list(DEFAULT_CELLS),
        help="numbers of cells N, each run with dt = lambda_cfl * dx (default %(default)s)",
    )
    converge.add_argument("--workers", type=int, default=1, help="concurrent runs")
    converge.add_argument("--out", help="directory for the convergence CSV")

    bench = subparsers.add_parser(
        "paper-test", aliases=["benchmark"], description="reproduce a named numerical test"
    )
    bench.add_argument("test_id", choices=benchmark_ids(), help="test identifier")
    bench.add_argument("--out", help="directory for CSV and SVG artifacts")
    bench.add_argument("--reference-dx", dest="fine_dx", type=float, help="fine reference dx")
    bench.add_argument("--workers", type=int, default=1, help="concurrent convergence runs")
    return parser


def run_imex_relax():
    parser = get_parser()

    def help(return_code=0):
        print("\nIMEX Relax v%s" % imex_relax.__version__)
        parser.print_help()
        sys.exit(return_code)

    # If the user didn't provide any arguments, show the full help
    if len(sys.argv) == 1:
        help()

    args, extra = parser.parse_known_args()
    if args.version:
        print(imex_relax.__version__)
        sys.exit(0)
    if extra:
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    if not args.command:
        help(1)

    setup_logger(quiet=args.quiet, nocolor=args.nocolor, debug=args.debug)

    if args.command == "tableau":
        from .tableau import main
    elif args.command == "run":
        from .run import main
    elif args.command == "converge":
        from .converge import main
    elif args.command in ("paper-test", "benchmark"):
        from .benchmark import main

    result = main(args, parser)
    if args.json:
        print(result.to_json())
    else:
        result.render()
    sys.exit(result.returncode)


main = run_imex_relax


if __name__ == "__main__":
    run_imex_relax()
