"""
Count (and optionally write) all topologies on n labelled points

Topologies are enumerated as preorders on {0, ..., n-1}. With --dedup only one
representative per homeomorphism class is kept. With --output, every space is
written in the text format, separated by blank lines.
"""
import logging
from typing import Dict, Optional

from xopen import xopen

from ..args import positive_int
from ..fileformats import format_space
from ..timer import StageTimer
from ..topology import DEFAULT_CAP, SpaceError, enumerate_spaces
from . import CommandLineError, log_timings

logger = logging.getLogger(__name__)


# fmt: off
def add_arguments(parser):
    add = parser.add_argument
    add("--dedup", action="store_true", default=False,
        help="Keep only one space per homeomorphism class")
    add("--cap", type=positive_int, default=DEFAULT_CAP,
        help="Refuse to enumerate more than this many points. Default: %(default)s")
    add("-o", "--output", metavar="FILE", default=None,
        help="Write all spaces to FILE (gzip-compressed if it ends in .gz)")
    add("n", type=positive_int, help="Number of points")
# fmt: on


def run_enumerate(
    n: int, dedup: bool = False, cap: int = DEFAULT_CAP, output: Optional[str] = None
) -> Dict[int, int]:
    timers = StageTimer()
    counts = {}
    try:
        with timers("enumerate"):
            spaces = enumerate_spaces(n, cap=cap, dedup=dedup)
            if output is None:
                counts[n] = sum(1 for _ in spaces)
            else:
                with xopen(output, "w") as f:
                    count = 0
                    for space in spaces:
                        if count:
                            print(file=f)
                        f.write(format_space(space))
                        count += 1
                counts[n] = count
    except SpaceError as e:
        raise CommandLineError(e)
    kind = "homeomorphism classes of topologies" if dedup else "labelled topologies"
    logger.info("%d %s on %d points", counts[n], kind, n)
    log_timings(timers)
    return counts


def main(args):
    counts = run_enumerate(**vars(args))
    print(counts[args.n])
