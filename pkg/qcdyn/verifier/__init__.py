"""
Theorem checker: specs made of hypothesis and conclusion predicates, verified
over enumerated finite systems, interval evidence and countable fixtures.
"""
from .cycletail import (
    CycleTailSystem,
    FixtureReport,
    LineSystem,
    cycle_tail_checks,
    fixture_report,
    line_checks,
)
from .evidence import EvidenceReport, interval_evidence
from .predicates import PREDICATES, Facts, SpaceFacts, UnknownPredicateError, parse_literals
from .report import ViolationReport, reverify
from .search import SearchResult, reverify_witness, search_counterexample
from .suite import SCOPES, TheoremSpec, UnknownSuiteError, builtin_suite, select_specs
from .sweep import ResourceExceeded, Resources, SpecResult, verify, verify_all

__all__ = [
    "CycleTailSystem",
    "EvidenceReport",
    "Facts",
    "FixtureReport",
    "LineSystem",
    "PREDICATES",
    "ResourceExceeded",
    "Resources",
    "SCOPES",
    "SearchResult",
    "SpaceFacts",
    "SpecResult",
    "TheoremSpec",
    "UnknownPredicateError",
    "UnknownSuiteError",
    "ViolationReport",
    "builtin_suite",
    "cycle_tail_checks",
    "fixture_report",
    "interval_evidence",
    "line_checks",
    "parse_literals",
    "reverify",
    "reverify_witness",
    "search_counterexample",
    "select_specs",
    "verify",
    "verify_all",
]
