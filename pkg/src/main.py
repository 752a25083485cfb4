import argparse
import os
import sys

os.environ['RUN_ID'] = os.getenv('RUN_ID', 'local-run')

from algebra.errors import ConsistencyError, GuardExceeded, InvalidCertificate
from harness.certify import cmd_verify
from harness.compute import InexactResult, cmd_compute
from harness.crosscheck import cmd_crosscheck
from harness.spec import SpecSyntaxError, SpecValueError
from harness.summary import cmd_subgroups
from harness.table import DEFAULT_SOLVER_MAX_ORDER, cmd_table
from particover_utils import debug, validate_environment
from search.branch import SearchBudget


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Minimal covers and partitions of finite groups")
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="sigma and rho of one group")
    compute.add_argument("spec", help="Group spec, e.g. S4, C3^2, PSL2(7), AGL1(5,4) x C3")
    compute.add_argument("--sigma", action="store_true", help="Only compute sigma")
    compute.add_argument("--rho", action="store_true", help="Only compute rho")
    compute.add_argument("--budget-seconds", type=float, help="Search budget per value")
    compute.add_argument("--threads", type=int, help="Solver threads")
    compute.add_argument("--exact-only", action="store_true", help="Fail unless every value is exact")
    compute.add_argument("--no-cache", action="store_true", help="Ignore cached records")

    table = sub.add_parser("table", help="Check every published value")
    table.add_argument("which", nargs="?", default="published", choices=["published"])
    table.add_argument("--solver-max-order", type=int, default=DEFAULT_SOLVER_MAX_ORDER,
                       help="Larger groups fall back to constructions and formulas")
    table.add_argument("--budget-seconds", type=float, help="Search budget per value")
    table.add_argument("--threads", type=int, help="Solver threads")
    table.add_argument("--output", help="Write the table as parquet")

    verify = sub.add_parser("verify", help="Check a certificate file")
    verify.add_argument("spec")
    verify.add_argument("certfile")

    subgroups = sub.add_parser("subgroups", help="Subgroup lattice summary")
    subgroups.add_argument("spec")

    crosscheck = sub.add_parser("crosscheck", help="Formulas against the solver over the catalog")
    crosscheck.add_argument("--max-order", type=int, default=100)
    crosscheck.add_argument("--budget-seconds", type=float, help="Search budget per value")
    crosscheck.add_argument("--threads", type=int, help="Solver threads")
    return parser


def run(args) -> int:
    budget = None
    if hasattr(args, "budget_seconds"):
        budget = SearchBudget.from_environment(max_seconds=args.budget_seconds, threads=args.threads)

    if args.command == "compute":
        both = args.sigma == args.rho
        cmd_compute(args.spec, want_sigma=both or args.sigma, want_rho=both or args.rho,
                    budget=budget, exact_only=args.exact_only, use_cache=not args.no_cache)
        return 0
    if args.command == "table":
        return 1 if cmd_table(args.solver_max_order, budget, args.output) else 0
    if args.command == "verify":
        return 0 if cmd_verify(args.spec, args.certfile) else 1
    if args.command == "subgroups":
        cmd_subgroups(args.spec)
        return 0
    return 1 if cmd_crosscheck(args.max_order, budget) else 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        validate_environment()
    except ValueError as e:
        print(f"Error: {e}")
        return 2

    debug.log_run_start(args.command)
    try:
        code = run(args)
    except (SpecSyntaxError, SpecValueError) as e:
        print(f"Error: {e}")
        debug.log_run_end("usage", str(e), args.command)
        return 2
    except ConsistencyError as e:
        print(f"FATAL: {e}")
        debug.log_run_end("inconsistent", str(e), args.command)
        return 1
    except (InexactResult, GuardExceeded, InvalidCertificate, OSError) as e:
        print(f"Error: {e}")
        debug.log_run_end("failed", str(e), args.command)
        return 1
    debug.log_run_end("completed" if code == 0 else "failed", None, args.command)
    return code


if __name__ == "__main__":
    sys.exit(main())
