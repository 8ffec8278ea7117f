"""
Analyse an exact piecewise-linear map of [0, 1]

The map is read from a PWL file or chosen with --builtin. All computations
use exact rational arithmetic. Numbers are given as integers or fractions
such as 3/8.

--props reports continuity and quasi-continuity at the breakpoints and
whether the iterates form a quasi-continuous system. --hit lists the times
n at which f^n(U) meets V for two open intervals. --certify checks on a mesh
of open intervals that every ordered pair is hit within a horizon, which is
evidence for TT+ (but not a proof).
"""
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

import portion as P

from ..fileformats import ParseError, format_pwl, read_pwl
from ..interval import (
    BUILTIN_MAPS,
    PWLError,
    PWLMap,
    certify_ttplus_on_mesh,
    compose,
    hitting_check,
    hitting_table_tsv,
    is_qc_system_pwl,
    orbit_prefix,
    qc_points_pwl,
    rational,
    return_times_on_mesh,
)
from ..utils import default_threads
from . import CommandLineError, dump_json, write_output

logger = logging.getLogger(__name__)


# fmt: off
def add_arguments(parser):
    add = parser.add_argument
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--builtin", choices=sorted(BUILTIN_MAPS), default=None,
        help="Use a builtin map")
    source.add_argument("pwl", metavar="PWL", nargs="?", default=None, help="PWL map file")
    add("--props", action="store_true", default=False,
        help="Report continuity, quasi-continuity and the iterates of the map")
    add("--max-iterates", type=int, default=32,
        help="Number of iterates to inspect with --props. Default: %(default)s")
    add("--hit", nargs=5, metavar=("A", "B", "C", "D", "HORIZON"), default=None,
        help="List the n <= HORIZON for which f^n((A, B)) meets (C, D)")
    add("--orbit", nargs=2, metavar=("X", "STEPS"), default=None,
        help="Print x, f(x), ..., f^STEPS(x)")
    add("--certify", nargs=2, type=int, metavar=("MESH", "HORIZON"), default=None,
        help="Compute first hitting times for all pairs of mesh intervals")
    add("--returns", action="store_true", default=False,
        help="With --certify, also list the return times of every mesh interval")
    add("--tsv", metavar="FILE", default=None,
        help="Write the hitting table of --certify to FILE")
    add("--threads", type=int, default=None,
        help="Worker processes for --certify. Default: $QCDYN_THREADS or the number of CPUs")
    add("--json", metavar="FILE", default=None, help="Write all results in JSON format to FILE")
# fmt: on


def load_pwl(pwl: Optional[str], builtin: Optional[str]) -> PWLMap:
    if builtin is not None:
        return BUILTIN_MAPS[builtin]()
    try:
        return read_pwl(pwl)
    except OSError as e:
        raise CommandLineError(e)
    except ParseError as e:
        raise CommandLineError(f"Cannot parse PWL file '{pwl}': {e}")


def _yes(value: bool) -> str:
    return "yes" if value else "no"


def props_report(f: PWLMap, max_iterates: int) -> Dict[str, Any]:
    analysis = qc_points_pwl(f)
    verdict = is_qc_system_pwl(f, max_iterates)
    return {
        "continuous": analysis.continuous,
        "quasicontinuous": analysis.qc_everywhere,
        "discontinuities": [str(c) for c in analysis.discontinuities],
        "non_qc_points": [str(c) for c in analysis.non_qc_points],
        "idempotent": compose(f, f) == f,
        "qc_system": verdict.status,
        "iterates_checked": verdict.iterates_checked,
        "iterate_preperiod": verdict.preperiod,
        "iterate_period": verdict.period,
        "failing_iterate": verdict.failing_iterate,
        "failing_point": None if verdict.failing_point is None else str(verdict.failing_point),
    }


def format_props(report: Dict[str, Any]) -> str:
    parts = [
        f"quasi-continuous: {_yes(report['quasicontinuous'])}",
        f"continuous: {_yes(report['continuous'])}",
    ]
    if report["discontinuities"]:
        parts.append("discontinuity at " + ", ".join(report["discontinuities"]))
    if report["idempotent"]:
        parts.append("f²=f")
    lines = ["; ".join(parts)]
    line = f"quasi-continuous system: {report['qc_system']}"
    if report["qc_system"] == "true" and report["iterate_period"] is not None:
        line += (
            f" (iterates repeat with preperiod {report['iterate_preperiod']}"
            f" and period {report['iterate_period']})"
        )
    elif report["qc_system"] == "false":
        line += f" (f^{report['failing_iterate']} fails at {report['failing_point']})"
    lines.append(line)
    return "\n".join(lines) + "\n"


def run_interval(
    pwl: Optional[str] = None,
    builtin: Optional[str] = None,
    props: bool = False,
    max_iterates: int = 32,
    hit: Optional[Sequence[str]] = None,
    orbit: Optional[Sequence[str]] = None,
    certify: Optional[Sequence[int]] = None,
    returns: bool = False,
    tsv: Optional[str] = None,
    threads: Optional[int] = None,
    json: Optional[str] = None,
    outfile=None,
) -> Dict[str, Any]:
    outfile = outfile or sys.stdout
    f = load_pwl(pwl, builtin)
    results: Dict[str, Any] = {"map": format_pwl(f)}
    try:
        if props:
            report = props_report(f, max_iterates)
            results["props"] = report
            outfile.write(format_props(report))
        if hit is not None:
            a, b, c, d = (rational(x) for x in hit[:4])
            horizon = int(hit[4])
            hits = hitting_check(f, P.open(a, b), P.open(c, d), horizon)
            results["hits"] = hits
            print(f"N+(({a}, {b}), ({c}, {d})) up to {horizon}: {hits}", file=outfile)
        if orbit is not None:
            points = orbit_prefix(f, orbit[0], int(orbit[1]))
            results["orbit"] = [str(x) for x in points]
            print(" ".join(results["orbit"]), file=outfile)
        if certify is not None:
            mesh, horizon = certify
            certificate = certify_ttplus_on_mesh(
                f, mesh, horizon, threads=threads if threads is not None else default_threads()
            )
            results["certificate"] = {
                "mesh": mesh,
                "horizon": horizon,
                "pairs_witnessed": certificate.pairs_witnessed,
                "pairs": mesh * mesh,
                "failing": certificate.failing,
            }
            print(
                f"certificate: {certificate.pairs_witnessed}/{mesh * mesh} pairs hit "
                f"within horizon {horizon}",
                file=outfile,
            )
            if tsv is not None:
                write_output(hitting_table_tsv(certificate), tsv)
            if returns:
                return_times = return_times_on_mesh(f, mesh, horizon)
                results["returns"] = {str(i): times for i, times in return_times.items()}
                few: List[int] = [i for i, times in return_times.items() if len(times) < 2]
                print(
                    f"mesh intervals returning at least twice: {mesh - len(few)}/{mesh}",
                    file=outfile,
                )
    except ValueError as e:
        raise CommandLineError(e)
    except PWLError as e:
        raise CommandLineError(e)
    if json is not None:
        dump_json(results, json)
    return results


def main(args):
    run_interval(**vars(args))
