"""
Counterexample search: the first system in enumeration order that satisfies
a conjunction of literals.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence

from ..dynamics import System
from ..fileformats import system_to_json
from ..maps import all_maps
from ..topology import discrete_space, enumerate_spaces
from .predicates import Facts, SpaceFacts, parse_literals, space_literals_hold, system_literals_hold
from .report import evaluate_system

logger = logging.getLogger(__name__)


@dataclass
class SearchResult:
    literals: Sequence[str]
    n_min: int
    n_max: int
    discrete: bool
    checked: int = 0
    witness: Optional[System] = None
    vector: Dict[str, bool] = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.witness is not None

    def to_json(self) -> Dict[str, Any]:
        return {
            "literals": list(self.literals),
            "n_min": self.n_min,
            "n_max": self.n_max,
            "discrete": self.discrete,
            "checked": self.checked,
            "found": self.found,
            "witness": system_to_json(self.witness) if self.witness is not None else None,
            "vector": self.vector,
        }


def search_counterexample(
    literals: Sequence[str], n_max: int, n_min: int = 1, discrete: bool = False
) -> SearchResult:
    """
    Enumerate spaces by size, then maps in lexicographic order, and return the
    first system on which every literal holds. If there is none, the result
    certifies that no system with n_min..n_max points satisfies the literals.

    >>> result = search_counterexample(["TT", "!TTp"], n_max=2, discrete=True)
    >>> result.witness.f
    (0, 0)
    """
    parsed = parse_literals(literals)
    result = SearchResult(list(literals), n_min, n_max, discrete)
    for n in range(n_min, n_max + 1):
        spaces = [discrete_space(n)] if discrete else enumerate_spaces(n)
        for space in spaces:
            space_facts = SpaceFacts(space)
            if not space_literals_hold(parsed, space_facts):
                result.checked += n**n
                continue
            for f in all_maps(n):
                result.checked += 1
                facts = Facts(space_facts, f)
                if system_literals_hold(parsed, space_facts, facts):
                    result.witness = facts.system
                    result.vector = facts.vector()
                    logger.info("Found a witness on %d points after %d systems", n, result.checked)
                    return result
    logger.info("No witness with %d to %d points (%d systems)", n_min, n_max, result.checked)
    return result


def reverify_witness(result: SearchResult) -> bool:
    """True if the witness of a search result still satisfies all of its literals"""
    if result.witness is None:
        return False
    values = evaluate_system(result.witness, result.literals)
    vector = Facts(SpaceFacts(result.witness.space), result.witness.f).vector()
    return all(values.values()) and vector == result.vector
