"""
Violation reports and their re-verification.

A report carries everything needed to reproduce a failure: the system in its
JSON serialization, the values of the hypotheses and the conclusion, and the
property vector of the system.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple

from ..dynamics import System
from ..fileformats import system_from_json, system_to_json
from .predicates import Facts, Literal, SpaceFacts, evaluate, parse_literal


def literal_values(
    literals: Sequence[Literal], space_facts: SpaceFacts, facts: Facts
) -> Dict[str, bool]:
    """Truth value of each literal, keyed by its text"""
    return {str(lit): evaluate(lit, space_facts, facts) for lit in literals}


def evaluate_system(system: System, names: Sequence[str]) -> Dict[str, bool]:
    space_facts = SpaceFacts(system.space)
    facts = Facts(space_facts, system.f)
    return literal_values([parse_literal(name) for name in names], space_facts, facts)


@dataclass
class ViolationReport:
    spec_id: str
    scope: str
    system: Dict[str, Any]
    hypotheses: Dict[str, bool]
    conclusion: Dict[str, bool]
    vector: Dict[str, bool]
    order: Tuple[int, ...] = field(default=(), compare=False)

    @classmethod
    def build(
        cls,
        spec_id: str,
        scope: str,
        hypotheses: Sequence[Literal],
        conclusion: Literal,
        space_facts: SpaceFacts,
        facts: Facts,
        order: Tuple[int, ...],
    ) -> "ViolationReport":
        return cls(
            spec_id=spec_id,
            scope=scope,
            system=system_to_json(facts.system),
            hypotheses=literal_values(hypotheses, space_facts, facts),
            conclusion=literal_values([conclusion], space_facts, facts),
            vector=facts.vector(),
            order=order,
        )

    def to_json(self) -> Dict[str, Any]:
        return {
            "spec": self.spec_id,
            "scope": self.scope,
            "system": self.system,
            "hypotheses": self.hypotheses,
            "conclusion": self.conclusion,
            "vector": self.vector,
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "ViolationReport":
        return cls(
            spec_id=data["spec"],
            scope=data["scope"],
            system=data["system"],
            hypotheses=dict(data["hypotheses"]),
            conclusion=dict(data["conclusion"]),
            vector=dict(data["vector"]),
        )


def reverify(report: ViolationReport) -> bool:
    """
    Re-run the system of a report. True if every hypothesis still holds, the
    conclusion still fails and the property vector is unchanged.
    """
    system = system_from_json(report.system)
    names: List[str] = list(report.hypotheses) + list(report.conclusion)
    values = evaluate_system(system, names)
    vector = Facts(SpaceFacts(system.space), system.f).vector()
    return (
        all(values[name] for name in report.hypotheses)
        and not any(values[name] for name in report.conclusion)
        and vector == report.vector
    )
