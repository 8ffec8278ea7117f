import json
import logging
import resource
import sys
from typing import Any, Optional

from xopen import xopen

from ..dynamics import System
from ..fileformats import ParseError, read_system
from ..timer import StageTimer

logger = logging.getLogger(__name__)


class CommandLineError(Exception):
    """An anticipated command-line error occurred. This ends up as a user-visible error message"""


def load_system(path: str) -> System:
    try:
        return read_system(path)
    except OSError as e:
        raise CommandLineError(e)
    except ParseError as e:
        raise CommandLineError(f"Cannot parse system file '{path}': {e}")


def write_output(text: str, path: Optional[str]) -> None:
    """Write text to path (compressed if it ends in .gz), or to standard output"""
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with xopen(path, "w") as f:
        f.write(text)


def dump_json(data: Any, path: Optional[str]) -> None:
    write_output(json.dumps(data, indent=2) + "\n", path)


def log_timings(timers: StageTimer) -> None:
    logger.info("\n== SUMMARY ==")
    for stage in timers.stages():
        logger.info("Time spent %-20s %9.2f s", stage + ":", timers.elapsed(stage))
    logger.info("Total elapsed time:            %9.2f s", timers.total())


def log_memory_usage(include_children=False):
    if sys.platform == "linux":
        if include_children:
            memory_kb = (
                resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
                + resource.getrusage(resource.RUSAGE_CHILDREN).ru_maxrss
            )
        else:
            memory_kb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
        logger.info("Maximum memory usage: %.3f GB", memory_kb / 1e6)
