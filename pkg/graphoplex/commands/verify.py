"""
verify and selftest: run verification suites and report pass or fail.
"""
import functools
import logging

from graphoplex.config import LimitsConfig
from graphoplex.models.reports import VerificationRun
from graphoplex.models.run import RunConfig
from graphoplex.selftest import Runner, run_selftest
from graphoplex.verify import SUITES, run_suite

from .common import add_output_arguments, add_species_arguments, add_window_arguments, emit, resolve_species, \
    witness_text

logger = logging.getLogger(__name__)

CSV_HEADER = ("suite", "check", "message", "witness")


def _failure_rows(result: VerificationRun):
    for report in result.reports:
        for failure in report.failures:
            yield report.suite, failure.check, failure.message, witness_text(failure.witness)


def run_verify(run: RunConfig, limits: LimitsConfig) -> int:
    species = resolve_species(run)
    names = list(SUITES) if run.suite == "all" else [run.suite]
    result = VerificationRun(species=species.key)
    for name in names:
        result.add(run_suite(name, species, run.window(), limits=limits, seed=run.seed))
    emit(run, result, CSV_HEADER, _failure_rows(result))
    return 0 if result.passed else 1


def run_selftest_command(run: RunConfig, limits: LimitsConfig, runner: Runner) -> int:
    result = VerificationRun(species="all")
    result.add(run_selftest(runner))
    emit(run, result, CSV_HEADER, _failure_rows(result))
    return 0 if result.passed else 1


def register(subparsers, parents, runner: Runner) -> None:
    parser = subparsers.add_parser("verify", parents=parents, help="Run verification suites")
    parser.add_argument("--suite", choices=["all"] + list(SUITES), default="all", help="Suite to run")
    add_species_arguments(parser)
    add_window_arguments(parser)
    add_output_arguments(parser)
    parser.set_defaults(handler=run_verify)

    selftest = subparsers.add_parser("selftest", parents=parents, help="Run the built-in small examples")
    add_output_arguments(selftest)
    selftest.set_defaults(handler=functools.partial(run_selftest_command, runner=runner))
