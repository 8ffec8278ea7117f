"""
Evidence for results whose hypotheses have no finite model.

A perfect Hausdorff space is necessarily infinite, so the corresponding specs
are vacuous on finite spaces. For them the tent map on [0, 1] serves as a
model: it is continuous (hence a quasi-continuous system), and on a mesh of
small intervals every ordered pair is hit within the horizon and every
interval returns to itself repeatedly. This is evidence, not proof.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List

from ..interval import (
    BUILTIN_MAPS,
    certify_ttplus_on_mesh,
    is_qc_system_pwl,
    return_times_on_mesh,
)

logger = logging.getLogger(__name__)

EVIDENCE_MAP = "tent"


@dataclass
class EvidenceReport:
    name: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "details": self.details,
            "notes": self.notes,
        }


def interval_evidence(
    spec_id: str, mesh: int, horizon: int, threads: int = 1, map_name: str = EVIDENCE_MAP
) -> EvidenceReport:
    f = BUILTIN_MAPS[map_name]()
    verdict = is_qc_system_pwl(f, max_iterates=horizon)
    certificate = certify_ttplus_on_mesh(f, mesh, horizon, threads=threads)
    returns = return_times_on_mesh(f, mesh, horizon)
    few_returns = sorted(i for i, times in returns.items() if len(times) < 2)
    details = {
        "map": map_name,
        "qc_system": verdict.status,
        "mesh": mesh,
        "horizon": horizon,
        "pairs_witnessed": certificate.pairs_witnessed,
        "pairs": mesh * mesh,
        "intervals_returning_twice": mesh - len(few_returns),
    }
    notes = []
    if certificate.failing is not None:
        notes.append(f"mesh pair {certificate.failing} not hit within the horizon")
    if few_returns:
        notes.append(f"intervals {few_returns} return fewer than twice")
    passed = verdict.status == "true" and certificate.certified and not few_returns
    logger.debug("Interval evidence for %s: %s", spec_id, "passed" if passed else "failed")
    return EvidenceReport(f"interval {map_name}", passed, details, notes)
