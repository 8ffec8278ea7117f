"""
Verify the builtin theorem suite over enumerated finite systems

Each spec is a list of hypothesis predicates and a conclusion predicate. Every
system in the scopes of a spec that satisfies the hypotheses must satisfy the
conclusion. Specs whose hypotheses are never satisfied are reported as
vacuous. Results about infinite spaces are complemented by evidence on the
tent map and by countable discrete fixtures.

The exit code is 0 if all selected specs pass and 1 if a violation was found.
"""
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from ..args import positive_int
from ..timer import StageTimer
from ..utils import default_threads, plural_s
from ..verifier import (
    ResourceExceeded,
    Resources,
    SpecResult,
    UnknownSuiteError,
    builtin_suite,
    select_specs,
    verify_all,
)
from ..verifier.suite import label_of
from . import CommandLineError, dump_json, log_memory_usage, log_timings

logger = logging.getLogger(__name__)


# fmt: off
def add_arguments(parser):
    add = parser.add_argument
    add("--suite", metavar="IDS", default="all",
        help="Comma-separated spec ids or short labels (see --list) to verify, or 'all'. "
        "Default: %(default)s")
    add("--list", dest="list_specs", action="store_true", default=False,
        help="List the spec ids of the builtin suite and exit")
    add("--json", metavar="FILE", default=None,
        help="Write the full report in JSON format to FILE ('-' for standard output)")

    arg = parser.add_argument_group("Resources").add_argument
    arg("--nmin", dest="n_min", type=positive_int, default=2,
        help="Smallest number of points. Default: %(default)s")
    arg("--nmax", dest="n_max", type=positive_int, default=4,
        help="Largest number of points of the exhaustive sweep over all "
        "topologies. Default: %(default)s")
    arg("--discrete-nmax", dest="discrete_n_max", type=positive_int, default=7,
        help="Largest number of points of the sweep over discrete spaces. Default: %(default)s")
    arg("--vacuity-nmax", dest="vacuity_n_max", type=positive_int, default=5,
        help="Largest number of points of the vacuity sweep. Default: %(default)s")
    arg("--sample-n", type=positive_int, default=5,
        help="Number of points of sampled systems. Default: %(default)s")
    arg("--sample-size", type=int, default=100000,
        help="Number of sampled systems. Default: %(default)s")
    arg("--seed", type=int, default=0, help="Seed for sampling. Default: %(default)s")
    arg("--threads", type=positive_int, default=None,
        help="Number of worker processes. Default: $QCDYN_THREADS or the number of CPUs")
    arg("--window", type=positive_int, default=50,
        help="Window size for fixture simulation. Default: %(default)s")
    arg("--mesh", type=positive_int, default=16,
        help="Number of mesh intervals for interval evidence. Default: %(default)s")
    arg("--horizon", type=positive_int, default=32,
        help="Iteration horizon for interval evidence. Default: %(default)s")
    arg("--max-violations", type=positive_int, default=10,
        help="Report at most this many violations per spec. Default: %(default)s")
    arg("--verify-baire", action="store_true", default=False,
        help="Confirm the Baire property of every space by brute force")
# fmt: on


def validate(args, parser):
    if args.n_min > args.n_max:
        parser.error("--nmin must not be larger than --nmax")


def format_summary(results: Sequence[SpecResult]) -> str:
    lines = ["#id\tstatus\tchecked\tsatisfied\tviolations\tvacuous"]
    for result in results:
        lines.append(
            "\t".join(
                [
                    result.spec.id,
                    "pass" if result.passed else "FAIL",
                    str(result.total_checked),
                    str(result.total_satisfied),
                    str(len(result.violations)),
                    "yes" if result.vacuous else "no",
                ]
            )
        )
    return "\n".join(lines) + "\n"


def report_json(results: Sequence[SpecResult], resources: Resources) -> Dict[str, Any]:
    return {
        "resources": resources.to_json(),
        "passed": all(result.passed for result in results),
        "specs": [result.to_json() for result in results],
    }


def run_verify(
    suite: str = "all",
    json: Optional[str] = None,
    threads: Optional[int] = None,
    list_specs: bool = False,
    outfile=None,
    **resource_args,
) -> int:
    """Run the selected specs and return the exit code"""
    outfile = outfile or sys.stdout
    if list_specs:
        for spec in builtin_suite():
            print(f"{spec.id}\t{label_of(spec.id)}\t{spec.title}", file=outfile)
        return 0
    ids: List[str] = [i.strip() for i in suite.split(",") if i.strip()]
    try:
        specs = select_specs(ids)
    except UnknownSuiteError as e:
        raise CommandLineError(e)
    resources = Resources(
        threads=threads if threads is not None else default_threads(), **resource_args
    )
    try:
        resources.validate()
    except ResourceExceeded as e:
        raise CommandLineError(e)

    timers = StageTimer()
    logger.info(
        "Verifying %d spec%s with %d thread%s",
        len(specs),
        plural_s(len(specs)),
        resources.threads,
        plural_s(resources.threads),
    )
    results = verify_all(specs, resources, timers)
    if json is not None:
        dump_json(report_json(results, resources), json)
    if json != "-":
        outfile.write(format_summary(results))

    failed = [result.spec.id for result in results if not result.passed]
    for spec_id in failed:
        logger.error("Spec %s failed", spec_id)
    log_timings(timers)
    log_memory_usage(include_children=resources.threads > 1)
    return 1 if failed else 0


def main(args):
    return run_verify(**vars(args))
