"""
Command-line entry point.

Exit status: 0 on success or pass, 1 on verification failure or a
computation error, 2 on usage errors, 3 when a resource limit aborts the run.
"""
import argparse
import logging
import sys
import time

from typing import List, Optional, Sequence

from pydantic import ValidationError

from .commands import register_commands
from .config import LimitsConfig, get_app_config
from .exceptions import GraphoplexError, InvalidGroup, ResourceLimit, UsageError
from .logging_config import log_command_run, setup_logging
from .models.run import RunConfig

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3

FLAG_NAMES = {
    "k_min": "--kmin", "k_max": "--kmax", "r_min": "--rmin", "r_max": "--rmax", "e_max": "--emax",
    "group_table": "--group-table", "max_cells": "--max-cells",
}


def _common_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--seed", type=int, default=0, help="Random seed for randomized suites")
    parser.add_argument("--jobs", type=int, default=1, help="Worker processes for enumeration and assembly")
    parser.add_argument("--max-cells", dest="max_cells", type=int, default=None,
                        help="Largest basis size (default GRAPHOPLEX_MAX_CELLS or 20000)")
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug output on the console")
    parser.add_argument("--no-log-files", dest="no_log_files", action="store_true",
                        help="Log to the console only")
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphoplex",
                                     description="Graph homology of mated species and the symplectic side")
    subparsers = parser.add_subparsers(dest="command", required=True)
    register_commands(subparsers, [_common_parser()], run)
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    fields = {name: value for name, value in vars(args).items() if name in RunConfig.model_fields}
    try:
        return RunConfig(**fields)
    except ValidationError as e:
        problems = []
        for error in e.errors():
            field = str(error["loc"][0]) if error["loc"] else "?"
            problems.append(f"{FLAG_NAMES.get(field, '--' + field.replace('_', '-'))}: {error['msg']}")
        raise UsageError("; ".join(problems))


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run one subcommand and return its exit status"""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    app_config = get_app_config()
    app_config.logging_config.file_logging = not args.no_log_files
    setup_logging(logging.DEBUG if args.verbose else logging.INFO)
    logger = app_config.logger

    start_time = time.time()
    species = getattr(args, "species", None)
    try:
        run_config = _run_config(args)
        limits = LimitsConfig(max_cells=run_config.max_cells, jobs=run_config.jobs)
        status = args.handler(run_config, limits)
        log_command_run(args.command, species, status, time.time() - start_time)
        return status
    except (UsageError, InvalidGroup) as e:
        logger.error(f"{args.command}: {e}")
        log_command_run(args.command, species, EXIT_USAGE, time.time() - start_time, error=str(e))
        return EXIT_USAGE
    except ResourceLimit as e:
        logger.error(f"{args.command}: resource limit reached: {e}")
        log_command_run(args.command, species, EXIT_LIMIT, time.time() - start_time, error=str(e))
        return EXIT_LIMIT
    except GraphoplexError as e:
        logger.error(f"{args.command} failed: {type(e).__name__}: {e}")
        log_command_run(args.command, species, EXIT_FAILURE, time.time() - start_time, error=str(e))
        return EXIT_FAILURE


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
