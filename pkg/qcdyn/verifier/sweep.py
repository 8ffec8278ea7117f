"""
Run theorem specs over their scopes.

Finite scopes are enumerated in blocks of (space, map range). A block is
checked by _check_block, possibly in a worker process, and returns a Tally.
Tallies merge associatively, and violations are kept sorted by enumeration
order, so the outcome does not depend on the number of threads.
"""
import logging
import random
from collections import Counter
from dataclasses import asdict, dataclass, field
from itertools import islice
from multiprocessing import Pool
from typing import Any, Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from ..maps import SelfMap, all_maps
from ..timer import StageTimer
from ..topology import DEFAULT_CAP, FiniteSpace, discrete_space, enumerate_spaces
from .cycletail import FixtureReport, cycle_tail_checks, line_checks
from .evidence import EvidenceReport, interval_evidence
from .predicates import Facts, SpaceFacts, evaluate, space_literals_hold, system_literals_hold
from .report import ViolationReport
from .suite import SCOPES, TheoremSpec

logger = logging.getLogger(__name__)

FINITE_SCOPES = ("finite-exhaustive", "finite-sample", "discrete-exhaustive", "vacuity")

# systems per block handed to a worker
BLOCK_SIZE = 20000

DISCRETE_CAP = 8

FIXTURE_CYCLE_LENGTHS = (1, 2, 3)


class ResourceExceeded(Exception):
    pass


@dataclass
class Resources:
    n_min: int = 2
    n_max: int = 4
    discrete_n_max: int = 7
    vacuity_n_max: int = 5
    sample_n: int = 5
    sample_size: int = 100000
    seed: int = 0
    threads: int = 1
    window: int = 50
    mesh: int = 16
    horizon: int = 32
    max_violations: int = 10
    verify_baire: bool = False

    def validate(self) -> None:
        if self.n_min < 1:
            raise ResourceExceeded("n_min must be at least 1")
        for name in ("n_max", "vacuity_n_max", "sample_n"):
            value = getattr(self, name)
            if value > DEFAULT_CAP:
                raise ResourceExceeded(
                    f"{name}={value} exceeds the enumeration cap of {DEFAULT_CAP} points"
                )
        if self.discrete_n_max > DISCRETE_CAP:
            raise ResourceExceeded(
                f"discrete_n_max={self.discrete_n_max} exceeds the cap of {DISCRETE_CAP} points"
            )
        if self.sample_size < 0 or self.threads < 1 or self.max_violations < 1:
            raise ResourceExceeded("sample size, threads and max_violations must be positive")
        if self.mesh < 2 or self.horizon < 1 or self.window < 1:
            raise ResourceExceeded("mesh, horizon and window must be positive (mesh at least 2)")

    def to_json(self) -> Dict[str, Any]:
        return asdict(self)

    def size_range(self, scope: str) -> range:
        if scope == "finite-exhaustive":
            return range(self.n_min, self.n_max + 1)
        if scope == "discrete-exhaustive":
            return range(self.n_min, self.discrete_n_max + 1)
        if scope == "vacuity":
            return range(self.n_min, self.vacuity_n_max + 1)
        if scope == "finite-sample":
            return range(self.sample_n, self.sample_n + 1)
        return range(0)


@dataclass
class Tally:
    """Counts keyed by (spec id, scope, n) plus violations per spec"""

    checked: Counter = field(default_factory=Counter)
    satisfied: Counter = field(default_factory=Counter)
    violations: Dict[str, List[ViolationReport]] = field(default_factory=dict)

    def add_violation(self, report: ViolationReport) -> None:
        self.violations.setdefault(report.spec_id, []).append(report)

    def merge(self, other: "Tally", max_violations: int) -> "Tally":
        result = Tally(self.checked + other.checked, self.satisfied + other.satisfied)
        for spec_id in set(self.violations) | set(other.violations):
            merged = self.violations.get(spec_id, []) + other.violations.get(spec_id, [])
            merged.sort(key=lambda r: (SCOPES.index(r.scope), r.order))
            result.violations[spec_id] = merged[:max_violations]
        return result


class Block(NamedTuple):
    scope: str
    n: int
    spaces: Tuple[Tuple[int, ...], ...]
    space_offset: int
    map_start: int
    map_stop: int


class SampleBlock(NamedTuple):
    n: int
    # (sample index, space min_nbhd, map)
    systems: Tuple[Tuple[int, Tuple[int, ...], SelfMap], ...]


def _prepare(specs: Sequence[TheoremSpec]):
    return [(spec, spec.hypothesis_literals(), spec.conclusion_literal()) for spec in specs]


def _check_system(tally, prepared, scope, n, space_facts, f, order, max_violations):
    facts = Facts(space_facts, f)
    for spec, hypotheses, conclusion in prepared:
        if not system_literals_hold(hypotheses, space_facts, facts):
            continue
        tally.satisfied[(spec.id, scope, n)] += 1
        if evaluate(conclusion, space_facts, facts):
            continue
        if len(tally.violations.get(spec.id, [])) < max_violations:
            tally.add_violation(
                ViolationReport.build(
                    spec.id, scope, hypotheses, conclusion, space_facts, facts, order
                )
            )
        logger.debug("Violation of %s by %s", spec.id, f)


def _check_block(
    block: Block, specs: Sequence[TheoremSpec], verify_baire: bool, max_violations: int
) -> Tally:
    prepared = _prepare(specs)
    tally = Tally()
    n = block.n
    for space_index, min_nbhd in enumerate(block.spaces, block.space_offset):
        space_facts = SpaceFacts(FiniteSpace(min_nbhd), verify_baire)
        active = []
        for entry in prepared:
            tally.checked[(entry[0].id, block.scope, n)] += block.map_stop - block.map_start
            if space_literals_hold(entry[1], space_facts):
                active.append(entry)
        if not active:
            continue
        maps = islice(all_maps(n), block.map_start, block.map_stop)
        for map_index, f in enumerate(maps, block.map_start):
            _check_system(
                tally,
                active,
                block.scope,
                n,
                space_facts,
                f,
                (n, space_index, map_index),
                max_violations,
            )
    return tally


def _check_sample_block(
    block: SampleBlock, specs: Sequence[TheoremSpec], verify_baire: bool, max_violations: int
) -> Tally:
    prepared = _prepare(specs)
    tally = Tally()
    scope = "finite-sample"
    for index, min_nbhd, f in block.systems:
        space_facts = SpaceFacts(FiniteSpace(min_nbhd), verify_baire)
        active = []
        for entry in prepared:
            tally.checked[(entry[0].id, scope, block.n)] += 1
            if space_literals_hold(entry[1], space_facts):
                active.append(entry)
        if active:
            _check_system(
                tally, active, scope, block.n, space_facts, f, (block.n, index), max_violations
            )
    return tally


def _spaces(scope: str, n: int) -> List[Tuple[int, ...]]:
    if scope == "discrete-exhaustive":
        return [discrete_space(n).min_nbhd]
    return [space.min_nbhd for space in enumerate_spaces(n)]


def _blocks(scope: str, n: int, block_size: int = BLOCK_SIZE) -> Iterator[Block]:
    spaces = _spaces(scope, n)
    maps = n**n
    if maps >= block_size:
        for space_index, space in enumerate(spaces):
            for start in range(0, maps, block_size):
                yield Block(scope, n, (space,), space_index, start, min(start + block_size, maps))
    else:
        per_block = max(1, block_size // maps)
        for i in range(0, len(spaces), per_block):
            yield Block(scope, n, tuple(spaces[i : i + per_block]), i, 0, maps)


def _sample_blocks(resources: Resources, block_size: int = BLOCK_SIZE) -> Iterator[SampleBlock]:
    """Draw the sample with a seeded generator, so it is the same for every run"""
    n = resources.sample_n
    spaces = _spaces("finite-sample", n)
    rng = random.Random(resources.seed)
    batch = []
    for index in range(resources.sample_size):
        space = spaces[rng.randrange(len(spaces))]
        f = tuple(rng.randrange(n) for _ in range(n))
        batch.append((index, space, f))
        if len(batch) == block_size:
            yield SampleBlock(n, tuple(batch))
            batch = []
    if batch:
        yield SampleBlock(n, tuple(batch))


def _run_blocks(
    jobs: List[Tuple[Any, Tuple]], resources: Resources
) -> Tally:
    """Run (function, arguments) jobs, in worker processes if threads > 1"""
    if resources.threads > 1 and len(jobs) > 1:
        with Pool(processes=resources.threads) as pool:
            process_results = [pool.apply_async(func, args) for func, args in jobs]
            tallies = [res.get() for res in process_results]
    else:
        tallies = [func(*args) for func, args in jobs]
    total = Tally()
    for tally in tallies:
        total = total.merge(tally, resources.max_violations)
    return total


@dataclass
class SpecResult:
    spec: TheoremSpec
    resources: Resources
    checked: Dict[Tuple[str, int], int] = field(default_factory=dict)
    satisfied: Dict[Tuple[str, int], int] = field(default_factory=dict)
    violations: List[ViolationReport] = field(default_factory=list)
    evidence: List[EvidenceReport] = field(default_factory=list)
    fixtures: List[FixtureReport] = field(default_factory=list)

    @property
    def total_checked(self) -> int:
        return sum(self.checked.values())

    @property
    def total_satisfied(self) -> int:
        return sum(self.satisfied.values())

    @property
    def vacuous(self) -> bool:
        """True if no finite system in scope satisfies the hypotheses"""
        return self.total_checked > 0 and self.total_satisfied == 0

    @property
    def passed(self) -> bool:
        return (
            not self.violations
            and all(e.passed for e in self.evidence)
            and all(fixture.consistent for fixture in self.fixtures)
        )

    def to_json(self) -> Dict[str, Any]:
        def per_size(counts):
            result: Dict[str, Dict[str, int]] = {}
            ordered = sorted(
                counts.items(), key=lambda item: (SCOPES.index(item[0][0]), item[0][1])
            )
            for (scope, n), count in ordered:
                result.setdefault(scope, {})[str(n)] = count
            return result

        return {
            "id": self.spec.id,
            "title": self.spec.title,
            "hypotheses": list(self.spec.hypotheses),
            "conclusion": self.spec.conclusion,
            "passed": self.passed,
            "checked": self.total_checked,
            "satisfied": self.total_satisfied,
            "vacuous_hypotheses": self.vacuous,
            "checked_per_size": per_size(self.checked),
            "satisfied_per_size": per_size(self.satisfied),
            "violations": [v.to_json() for v in self.violations],
            "evidence": [e.to_json() for e in self.evidence],
            "fixtures": [
                {"name": fx.name, "flags": fx.flags(), "consistent": fx.consistent}
                for fx in self.fixtures
            ],
        }


def _fixture_reports(resources: Resources) -> List[FixtureReport]:
    reports = [cycle_tail_checks(k, resources.window) for k in FIXTURE_CYCLE_LENGTHS]
    reports.append(line_checks(resources.window))
    return reports


def verify_all(
    specs: Sequence[TheoremSpec], resources: Resources, timers: Optional[StageTimer] = None
) -> List[SpecResult]:
    """
    Verify several specs with one enumeration pass per scope. The facts of
    each system are computed lazily and shared by all specs of the pass.
    """
    resources.validate()
    if timers is None:
        timers = StageTimer()
    results = {spec.id: SpecResult(spec, resources) for spec in specs}
    total = Tally()
    for scope in FINITE_SCOPES:
        scoped = tuple(spec for spec in specs if scope in spec.scopes)
        if not scoped:
            continue
        sizes = resources.size_range(scope)
        logger.info(
            "Checking %d spec(s) in scope %s (n = %d..%d)",
            len(scoped),
            scope,
            sizes.start,
            sizes.stop - 1,
        )
        jobs: List[Tuple[Any, Tuple]] = []
        with timers("enumerate"):
            if scope == "finite-sample":
                for sample_block in _sample_blocks(resources):
                    jobs.append(
                        (
                            _check_sample_block,
                            (
                                sample_block,
                                scoped,
                                resources.verify_baire,
                                resources.max_violations,
                            ),
                        )
                    )
            else:
                for n in sizes:
                    for block in _blocks(scope, n):
                        jobs.append(
                            (
                                _check_block,
                                (block, scoped, resources.verify_baire, resources.max_violations),
                            )
                        )
        with timers("check"):
            total = total.merge(_run_blocks(jobs, resources), resources.max_violations)

    for (spec_id, scope, n), count in total.checked.items():
        results[spec_id].checked[(scope, n)] = count
    for (spec_id, scope, n), count in total.satisfied.items():
        results[spec_id].satisfied[(scope, n)] = count
    for spec_id, violations in total.violations.items():
        results[spec_id].violations = violations

    fixtures: Optional[List[FixtureReport]] = None
    for spec in specs:
        result = results[spec.id]
        if "interval-evidence" in spec.scopes:
            with timers("evidence"):
                result.evidence.append(
                    interval_evidence(
                        spec.id, resources.mesh, resources.horizon, threads=resources.threads
                    )
                )
        if "fixture" in spec.scopes:
            if fixtures is None:
                with timers("fixtures"):
                    fixtures = _fixture_reports(resources)
            result.fixtures = fixtures
        logger.info(
            "%s: %s (%d systems checked, %d satisfy the hypotheses%s)",
            spec.id,
            "pass" if result.passed else "FAIL",
            result.total_checked,
            result.total_satisfied,
            ", hypotheses never satisfied" if result.vacuous else "",
        )
    return [results[spec.id] for spec in specs]


def verify(spec: TheoremSpec, resources: Resources) -> SpecResult:
    return verify_all([spec], resources)[0]
