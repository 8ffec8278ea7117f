import time
from collections import defaultdict
from contextlib import contextmanager
from typing import Dict, Iterator, List


class StageTimer:
    """Accumulate wall-clock time of the named stages of a run (enumerating, checking, ...)"""

    def __init__(self):
        self._start: Dict[str, float] = dict()
        self._elapsed: Dict[str, float] = defaultdict(float)
        self._overall_start_time = time.time()

    def start(self, stage: str) -> None:
        self._start[stage] = time.time()

    def stop(self, stage: str) -> float:
        t = time.time() - self._start.pop(stage)
        self._elapsed[stage] += t
        return t

    def elapsed(self, stage: str) -> float:
        """
        Time spent in a stage so far. A stage that is currently running only
        counts its completed spans.
        """
        return self._elapsed[stage]

    def stages(self) -> List[str]:
        return list(self._elapsed)

    def total(self) -> float:
        return time.time() - self._overall_start_time

    @contextmanager
    def __call__(self, stage: str) -> Iterator[None]:
        self.start(stage)
        try:
            yield
        finally:
            self.stop(stage)
