"""
Search for the first finite system satisfying a conjunction of literals

A literal is a predicate name, optionally negated with '!', for example
"TT !TTp" asks for a topologically transitive system that is not TT+.
Spaces are enumerated by size, maps lexicographically; the first witness is
printed in the system file format. If no witness exists up to --nmax, this is
reported and the exit code is 1.
"""
import logging
import sys
from typing import Optional, Sequence

from ..args import positive_int
from ..fileformats import format_system
from ..timer import StageTimer
from ..topology import DEFAULT_CAP
from ..verifier import PREDICATES, SearchResult, UnknownPredicateError, search_counterexample
from . import CommandLineError, dump_json, log_timings, write_output

logger = logging.getLogger(__name__)


# fmt: off
def add_arguments(parser):
    add = parser.add_argument
    add("--nmin", dest="n_min", type=positive_int, default=1,
        help="Smallest number of points. Default: %(default)s")
    add("--nmax", dest="n_max", type=positive_int, default=4,
        help="Largest number of points. Default: %(default)s")
    add("--discrete", action="store_true", default=False,
        help="Only search discrete spaces")
    add("-o", "--output", metavar="FILE", default=None,
        help="Write the witness system to FILE instead of standard output")
    add("--json", metavar="FILE", default=None,
        help="Write the search result in JSON format to FILE")
    add("literals", nargs="+", metavar="LITERAL",
        help="Predicate names, negated with '!'. Known predicates: " + ", ".join(PREDICATES))
# fmt: on


def validate(args, parser):
    if not args.discrete and args.n_max > DEFAULT_CAP:
        parser.error(f"--nmax must be at most {DEFAULT_CAP} unless --discrete is given")


def run_search(
    literals: Sequence[str],
    n_max: int,
    n_min: int = 1,
    discrete: bool = False,
    output: Optional[str] = None,
    json: Optional[str] = None,
) -> SearchResult:
    timers = StageTimer()
    try:
        with timers("search"):
            result = search_counterexample(literals, n_max, n_min=n_min, discrete=discrete)
    except UnknownPredicateError as e:
        raise CommandLineError(e)
    if json is not None:
        dump_json(result.to_json(), json)
    if result.witness is not None:
        write_output(format_system(result.witness), output)
    else:
        print(
            f"No witness for {' '.join(literals)} with {n_min} to {n_max} points "
            f"({result.checked} systems checked)",
            file=sys.stderr,
        )
    log_timings(timers)
    return result


def main(args):
    result = run_search(**vars(args))
    return 0 if result.found else 1
