"""
The builtin theorem suite: one spec per result, each a list of hypothesis
predicates, a conclusion predicate and the scopes it is checked in.
"""
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .predicates import PREDICATES, Literal, parse_literals

SCOPES = (
    "finite-exhaustive",
    "finite-sample",
    "discrete-exhaustive",
    "vacuity",
    "interval-evidence",
    "fixture",
)


class UnknownSuiteError(Exception):
    pass


@dataclass(frozen=True)
class TheoremSpec:
    id: str
    title: str
    hypotheses: Tuple[str, ...]
    conclusion: str
    scopes: Tuple[str, ...]

    def __post_init__(self):
        for name in self.hypotheses + (self.conclusion,):
            if name.lstrip("!") not in PREDICATES:
                raise ValueError(f"spec {self.id}: unknown predicate {name!r}")
        for scope in self.scopes:
            if scope not in SCOPES:
                raise ValueError(f"spec {self.id}: unknown scope {scope!r}")

    def hypothesis_literals(self) -> List[Literal]:
        return parse_literals(self.hypotheses)

    def conclusion_literal(self) -> Literal:
        return parse_literals([self.conclusion])[0]


def _spec(id, title, hypotheses, conclusion, *scopes) -> TheoremSpec:
    return TheoremSpec(id, title, tuple(hypotheses), conclusion, tuple(scopes))


def builtin_suite() -> List[TheoremSpec]:
    return [
        _spec(
            "diagram",
            "Arrows between the seven properties valid for every system",
            [],
            "diagram",
            "finite-exhaustive",
            "finite-sample",
        ),
        _spec(
            "tt-in-continuous",
            "TT and IN are equivalent for continuous maps",
            ["continuous"],
            "tt_iff_in",
            "finite-exhaustive",
        ),
        _spec(
            "self-return",
            "On a perfect Hausdorff space, TT makes every N+(U, U) infinite",
            ["perfect", "T2", "qc_system", "TT"],
            "self_return_infinite",
            "vacuity",
            "interval-evidence",
        ),
        _spec(
            "feebly-open-delta-open",
            "Quasi-continuous feebly open maps are delta-open",
            ["quasicontinuous", "feebly_open"],
            "delta_open",
            "finite-exhaustive",
        ),
        _spec(
            "c-inf-residual",
            "On a fragmentable space the points where all iterates are continuous form a residual set",
            ["fragmentable", "qc_system"],
            "c_inf_residual",
            "finite-exhaustive",
        ),
        _spec(
            "c-inf-orbit-residual",
            "For quasi-continuous delta-open maps on a fragmentable space, the points whose "
            "orbit stays in C(f) form a residual set",
            ["fragmentable", "quasicontinuous", "delta_open"],
            "c_inf_orbit_residual",
            "finite-exhaustive",
        ),
        _spec(
            "tt-upgrade",
            "On a perfect Hausdorff space TT implies TT+ and TT+ implies TT++",
            ["perfect", "T2", "qc_system"],
            "tt_chain",
            "vacuity",
            "interval-evidence",
        ),
        _spec(
            "omega-equivalence",
            "On a Baire space: DO++, density of eventual returns, and a dense open set of "
            "points with full omega-limit are equivalent",
            ["baire", "qc_system"],
            "omega_equivalence",
            "finite-exhaustive",
        ),
        _spec(
            "ttp-dense-orbit",
            "On a space of the second category TT+ implies DO+, and the transitive points "
            "contain a dense open set",
            ["second_category", "qc_system", "TTp"],
            "dense_transitive",
            "finite-exhaustive",
        ),
        _spec(
            "dop-dopp-perfect-t1",
            "On a perfect T1 space DO+ and DO++ are equivalent",
            ["perfect", "T1", "qc_system"],
            "dop_iff_dopp",
            "vacuity",
        ),
        _spec(
            "perfect-equivalence",
            "On a perfect Hausdorff Baire space TT, TT+, TT++, DO, DO+ and DO++ are equivalent",
            ["perfect", "T2", "baire", "qc_system"],
            "all_equivalent",
            "vacuity",
            "interval-evidence",
        ),
        _spec(
            "isolated-sources",
            "Under TT at most one isolated point has an empty preimage",
            ["TT"],
            "at_most_one_isolated_source",
            "finite-exhaustive",
            "discrete-exhaustive",
        ),
        _spec(
            "periodic-double-preimage",
            "Under TT an isolated point with several preimages is periodic with exactly two",
            ["T2", "qc_system", "TT"],
            "double_preimage_periodic",
            "finite-exhaustive",
            "discrete-exhaustive",
        ),
        _spec(
            "unique-double-preimage",
            "Under TT at most one isolated point has exactly two preimages",
            ["T2", "qc_system", "TT"],
            "at_most_one_double_preimage",
            "finite-exhaustive",
            "discrete-exhaustive",
        ),
        _spec(
            "trans-in-iso",
            "Under TT every transitive point is isolated",
            ["T2", "has_isolated", "qc_system", "TT"],
            "trans_in_iso",
            "finite-exhaustive",
            "discrete-exhaustive",
        ),
        _spec(
            "isolated-trichotomy",
            "Under TT the preimage sizes of isolated points decide the plus-properties",
            ["T2", "has_isolated", "qc_system", "TT"],
            "isolated_trichotomy",
            "discrete-exhaustive",
            "fixture",
        ),
        _spec(
            "isolated-plus-equivalence",
            "With isolated points, none of them without preimage, DO+, TT+, DO++ and TT++ "
            "are equivalent",
            ["T2", "has_isolated", "qc_system", "no_isolated_source"],
            "plus_equivalence",
            "finite-exhaustive",
            "discrete-exhaustive",
        ),
        _spec(
            "isolated-tt-do",
            "With isolated points TT and DO are equivalent",
            ["T2", "has_isolated", "qc_system"],
            "tt_iff_do",
            "finite-exhaustive",
            "discrete-exhaustive",
        ),
    ]


# Short labels of the results, accepted in place of the ids
LABELS = {
    "D1": "diagram",
    "T-IN": "tt-in-continuous",
    "P35": "self-return",
    "P39": "feebly-open-delta-open",
    "P37": "c-inf-residual",
    "P310": "c-inf-orbit-residual",
    "T41": "tt-upgrade",
    "T42": "omega-equivalence",
    "T43": "ttp-dense-orbit",
    "P44": "dop-dopp-perfect-t1",
    "C45": "perfect-equivalence",
    "L51": "isolated-sources",
    "L53": "periodic-double-preimage",
    "L54": "unique-double-preimage",
    "P55": "trans-in-iso",
    "T56": "isolated-trichotomy",
    "C57": "isolated-plus-equivalence",
    "C58": "isolated-tt-do",
}


def label_of(spec_id: str) -> str:
    return next(label for label, i in LABELS.items() if i == spec_id)


def select_specs(ids: Sequence[str]) -> List[TheoremSpec]:
    """
    Specs by id or label in suite order; "all" selects the whole suite

    >>> [spec.id for spec in select_specs(["P44", "d1"])]
    ['diagram', 'dop-dopp-perfect-t1']
    """
    suite = builtin_suite()
    if not ids or "all" in ids:
        return suite
    ids = [LABELS.get(i.upper(), i) for i in ids]
    by_id: Dict[str, TheoremSpec] = {spec.id: spec for spec in suite}
    unknown = [i for i in ids if i not in by_id]
    if unknown:
        raise UnknownSuiteError(
            f"Unknown suite id {unknown[0]!r}. Known ids: {', '.join(by_id)}"
        )
    return [spec for spec in suite if spec.id in ids]
