import logging
import os
from collections import defaultdict
from typing import DefaultDict

THREADS_VARIABLE = "QCDYN_THREADS"


def plural_s(n: int) -> str:
    return "" if n == 1 else "s"


def default_threads() -> int:
    """
    Thread count from the QCDYN_THREADS environment variable, or the number
    of CPUs if it is unset or invalid.
    """
    value = os.environ.get(THREADS_VARIABLE)
    if value:
        try:
            threads = int(value)
        except ValueError:
            threads = 0
        if threads >= 1:
            return threads
        warn_once(logging.getLogger(__name__), "Ignoring invalid %s=%r.", THREADS_VARIABLE, value)
    return os.cpu_count() or 1


_warning_count: DefaultDict[str, int] = defaultdict(int)


def warn_once(logger, msg: str, *args) -> None:
    if _warning_count[msg] == 0 and not logger.isEnabledFor(logging.DEBUG):
        logger.warning(msg + " Hiding further warnings of this type, use --debug to show", *args)
    else:
        logger.debug(msg, *args)
    _warning_count[msg] += 1
