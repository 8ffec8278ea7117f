"""
Utility functions only used by unit tests
"""
import io
import textwrap
from functools import lru_cache
from typing import Iterator, List

from .dynamics import System
from .fileformats import read_system
from .maps import all_maps
from .topology import FiniteSpace, discrete_space, enumerate_spaces


def string_to_system(s: str) -> System:
    """
    Parse a system given in the text format. Indentation is removed, so
    systems can be written inline in tests.

    >>> string_to_system('''
    ...     2
    ...     0
    ...     1
    ...     1 1
    ... ''').f
    (1, 1)
    """
    return read_system(io.StringIO(textwrap.dedent(s).strip() + "\n"))


@lru_cache(maxsize=None)
def spaces(n: int) -> List[FiniteSpace]:
    return list(enumerate_spaces(n))


def all_systems(n: int, discrete: bool = False) -> Iterator[System]:
    """Every system on n points, or every system on the discrete n-point space"""
    for space in [discrete_space(n)] if discrete else spaces(n):
        for f in all_maps(n):
            yield System(space, f)
