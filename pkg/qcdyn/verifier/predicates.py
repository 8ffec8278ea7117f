"""
Named predicates over finite systems.

A predicate is either space-level (it only depends on the topology and can be
evaluated once per space) or system-level. All facts about a system are
computed lazily and at most once, so that the specs of a suite share the work.
"""
from functools import cached_property
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

from ..dynamics import (
    System,
    cycles,
    eventual_return_dense,
    has_dense_orbit_sequence,
    is_irreducible,
    omega_full_points,
    trajectory,
    transitive_points,
)
from ..maps import (
    IterateCycle,
    c_infinity_sets,
    continuity_points,
    is_delta_open,
    is_feebly_open,
    is_quasicontinuous,
    iterate_cycle,
    preimage,
    preimage_sizes,
)
from ..topology import FiniteSpace, SpaceProfile, category_predicates, space_profile


class UnknownPredicateError(Exception):
    pass


class SpaceFacts:
    def __init__(self, space: FiniteSpace, verify_baire: bool = False):
        self.space = space
        self.verify_baire = verify_baire

    @cached_property
    def profile(self) -> SpaceProfile:
        return space_profile(self.space, verify_baire=self.verify_baire)

    @cached_property
    def discrete(self) -> bool:
        return self.space.is_discrete()


class Facts:
    """Lazily evaluated facts about one system"""

    def __init__(self, space_facts: SpaceFacts, f: Tuple[int, ...]):
        self.space_facts = space_facts
        self.space = space_facts.space
        self.f = f
        self.system = System(self.space, f)

    @property
    def profile(self) -> SpaceProfile:
        return self.space_facts.profile

    @cached_property
    def iterates(self) -> IterateCycle:
        return iterate_cycle(self.f)

    @cached_property
    def cont_points(self) -> int:
        return continuity_points(self.space, self.f)

    @cached_property
    def continuous(self) -> bool:
        return self.cont_points == self.space.full

    @cached_property
    def quasicontinuous(self) -> bool:
        return self.continuous or is_quasicontinuous(self.space, self.f)

    @cached_property
    def qc_system(self) -> bool:
        # every map on a discrete space is continuous, and so are its iterates
        if self.space_facts.discrete:
            return True
        return self.quasicontinuous and all(
            is_quasicontinuous(self.space, g) for g in self.iterates.iterates[2:]
        )

    @cached_property
    def feebly_open(self) -> bool:
        return is_feebly_open(self.space, self.f)

    @cached_property
    def delta_open(self) -> bool:
        return is_delta_open(self.space, self.f)

    @cached_property
    def c_inf_sets(self) -> Tuple[int, int]:
        return c_infinity_sets(self.space, self.f, self.iterates)

    @cached_property
    def preimage_sizes(self) -> List[int]:
        return preimage_sizes(self.f)

    @cached_property
    def trajectories(self):
        return {p: trajectory(self.system, p) for p in self.space.pi_base()}

    @cached_property
    def hitting_flags(self) -> Tuple[bool, bool, bool]:
        """(TT, TT+, TT++) over pi-base pairs"""
        tt = ttp = ttpp = True
        trajectories = self.trajectories
        for u, traj in trajectories.items():
            for v in trajectories:
                h = traj.hitting(v)
                if h.is_empty():
                    ttp = False
                    if trajectories[v].hitting(u).is_empty():
                        tt = False
                if not h.is_infinite():
                    ttpp = False
        return tt, ttp, ttpp

    @cached_property
    def self_return_infinite(self) -> bool:
        return all(traj.hitting(p).is_infinite() for p, traj in self.trajectories.items())

    @cached_property
    def IN(self) -> bool:
        return is_irreducible(self.system)

    @cached_property
    def trans_points(self) -> int:
        return transitive_points(self.system)

    @cached_property
    def omega_full(self) -> int:
        return omega_full_points(self.system)

    @cached_property
    def DO(self) -> bool:
        return has_dense_orbit_sequence(self.system)

    @cached_property
    def iso(self) -> int:
        return self.profile.iso

    @cached_property
    def isolated_sources(self) -> List[int]:
        sizes = self.preimage_sizes
        return [x for x in range(self.space.n) if (self.iso >> x) & 1 and sizes[x] == 0]

    @cached_property
    def periodic_points(self) -> int:
        result = 0
        for cycle in cycles(self.f):
            for x in cycle:
                result |= 1 << x
        return result

    def flag(self, name: str) -> bool:
        if name == "TT":
            return self.hitting_flags[0]
        if name == "TTp":
            return self.hitting_flags[1]
        if name == "TTpp":
            return self.hitting_flags[2]
        if name == "DOp":
            return self.trans_points != 0
        if name == "DOpp":
            return self.omega_full != 0
        return getattr(self, name)

    def vector(self) -> Dict[str, bool]:
        return {
            name: self.flag(name) for name in ("IN", "TT", "TTp", "TTpp", "DO", "DOp", "DOpp")
        }


def _implies(a: bool, b: bool) -> bool:
    return not a or b


def diagram_arrows(facts: Facts) -> Dict[str, bool]:
    """The implications between the seven properties that hold for every system"""
    v = facts.vector()
    return {
        "DOpp=>DOp": _implies(v["DOpp"], v["DOp"]),
        "DOp=>DO": _implies(v["DOp"], v["DO"]),
        "TTpp=>TTp": _implies(v["TTpp"], v["TTp"]),
        "TTp=>TT": _implies(v["TTp"], v["TT"]),
        "DOpp=>TTpp": _implies(v["DOpp"], v["TTpp"]),
        "DO=>TT": _implies(v["DO"], v["TT"]),
        "TT=>IN": _implies(v["TT"], v["IN"]),
    }


def _diagram(facts: Facts) -> bool:
    return all(diagram_arrows(facts).values())


def _tt_chain(facts: Facts) -> bool:
    return _implies(facts.flag("TT"), facts.flag("TTp")) and _implies(
        facts.flag("TTp"), facts.flag("TTpp")
    )


def _omega_equivalence(facts: Facts) -> bool:
    space = facts.space
    returns = all(eventual_return_dense(facts.system, p) for p in space.pi_base())
    dense_open_omega = space.is_dense(space.interior(facts.omega_full))
    return facts.flag("DOpp") == returns == dense_open_omega


def _dense_transitive(facts: Facts) -> bool:
    space = facts.space
    return facts.flag("DOp") and space.is_dense(space.interior(facts.trans_points))


def _residual_and_dense_open(space: FiniteSpace, s: int) -> bool:
    predicates = category_predicates(space, s)
    return predicates.residual and predicates.contains_dense_open


def _double_preimage_periodic(facts: Facts) -> bool:
    """
    An isolated point with several preimages is periodic, has exactly two
    preimages, and both are isolated.
    """
    sizes = facts.preimage_sizes
    for x in range(facts.space.n):
        if (facts.iso >> x) & 1 and sizes[x] > 1:
            if sizes[x] != 2 or not (facts.periodic_points >> x) & 1:
                return False
            if preimage(facts.f, 1 << x) & ~facts.iso:
                return False
    return True


def _one_double_preimage(facts: Facts) -> bool:
    sizes = facts.preimage_sizes
    return sum(1 for x in range(facts.space.n) if (facts.iso >> x) & 1 and sizes[x] == 2) <= 1


def _isolated_trichotomy(facts: Facts) -> bool:
    """
    With isolated points and TT: an isolated point without preimage is the
    unique transitive point and the plus-properties fail; if every isolated
    point has exactly one preimage the plus-properties agree; if one
    isolated point has two preimages and none has zero, all of them fail.
    """
    sizes = [facts.preimage_sizes[x] for x in range(facts.space.n) if (facts.iso >> x) & 1]
    plus = [facts.flag(name) for name in ("DOp", "TTp", "TTpp", "DOpp")]
    sources = facts.isolated_sources
    if sources:
        return (
            facts.trans_points == 1 << sources[0]
            and facts.flag("DOp")
            and not facts.flag("TTp")
            and not facts.flag("TTpp")
            and not facts.flag("DOpp")
        )
    if all(size == 1 for size in sizes):
        return all(plus) or not any(plus)
    if 2 in sizes:
        return not any(plus)
    return True


def _plus_equivalence(facts: Facts) -> bool:
    plus = [facts.flag(name) for name in ("DOp", "TTp", "DOpp", "TTpp")]
    return all(plus) or not any(plus)


def _all_equivalent(facts: Facts) -> bool:
    values = [facts.flag(name) for name in ("TT", "TTp", "TTpp", "DO", "DOp", "DOpp")]
    return all(values) or not any(values)


class Predicate(NamedTuple):
    name: str
    level: str
    func: Callable


def _space(name: str, func: Callable[[SpaceFacts], bool]) -> Predicate:
    return Predicate(name, "space", func)


def _system(name: str, func: Callable[[Facts], bool]) -> Predicate:
    return Predicate(name, "system", func)


_PREDICATE_LIST = [
    _space("T0", lambda s: s.profile.T0),
    _space("T1", lambda s: s.profile.T1),
    _space("T2", lambda s: s.profile.T2),
    _space("perfect", lambda s: s.profile.perfect),
    _space("fragmentable", lambda s: s.profile.fragmentable),
    _space("baire", lambda s: s.profile.baire),
    _space("second_category", lambda s: s.profile.second_category),
    _space("has_isolated", lambda s: s.profile.iso != 0),
    _space("discrete", lambda s: s.discrete),
    _system("continuous", lambda f: f.continuous),
    _system("quasicontinuous", lambda f: f.quasicontinuous),
    _system("feebly_open", lambda f: f.feebly_open),
    _system("delta_open", lambda f: f.delta_open),
    _system("qc_system", lambda f: f.qc_system),
    _system("no_isolated_source", lambda f: not f.isolated_sources),
    _system("IN", lambda f: f.flag("IN")),
    _system("TT", lambda f: f.flag("TT")),
    _system("TTp", lambda f: f.flag("TTp")),
    _system("TTpp", lambda f: f.flag("TTpp")),
    _system("DO", lambda f: f.flag("DO")),
    _system("DOp", lambda f: f.flag("DOp")),
    _system("DOpp", lambda f: f.flag("DOpp")),
    _system("diagram", _diagram),
    _system("tt_iff_in", lambda f: f.flag("TT") == f.flag("IN")),
    _system("self_return_infinite", lambda f: f.self_return_infinite),
    _system("tt_chain", _tt_chain),
    _system("c_inf_residual", lambda f: _residual_and_dense_open(f.space, f.c_inf_sets[0])),
    _system(
        "c_inf_orbit_residual", lambda f: _residual_and_dense_open(f.space, f.c_inf_sets[1])
    ),
    _system("omega_equivalence", _omega_equivalence),
    _system("dense_transitive", _dense_transitive),
    _system("dop_iff_dopp", lambda f: f.flag("DOp") == f.flag("DOpp")),
    _system("all_equivalent", _all_equivalent),
    _system("at_most_one_isolated_source", lambda f: len(f.isolated_sources) <= 1),
    _system("double_preimage_periodic", _double_preimage_periodic),
    _system("at_most_one_double_preimage", _one_double_preimage),
    _system("trans_in_iso", lambda f: f.trans_points & ~f.iso == 0),
    _system("isolated_trichotomy", _isolated_trichotomy),
    _system("plus_equivalence", _plus_equivalence),
    _system("tt_iff_do", lambda f: f.flag("TT") == f.flag("DO")),
]

PREDICATES: Dict[str, Predicate] = {p.name: p for p in _PREDICATE_LIST}


class Literal(NamedTuple):
    predicate: Predicate
    negated: bool

    def __str__(self):
        return ("!" if self.negated else "") + self.predicate.name


def parse_literal(text: str) -> Literal:
    """
    >>> str(parse_literal("!TTp"))
    '!TTp'
    """
    negated = text.startswith("!")
    name = text[1:] if negated else text
    if name not in PREDICATES:
        raise UnknownPredicateError(f"Unknown predicate {name!r}")
    return Literal(PREDICATES[name], negated)


def parse_literals(texts: Sequence[str]) -> List[Literal]:
    """Parse and order literals so that space-level ones come first"""
    literals = [parse_literal(text) for text in texts]
    return sorted(literals, key=lambda lit: lit.predicate.level != "space")


def evaluate(literal: Literal, space_facts: SpaceFacts, facts: Optional[Facts]) -> bool:
    if literal.predicate.level == "space":
        value = literal.predicate.func(space_facts)
    else:
        assert facts is not None
        value = literal.predicate.func(facts)
    return value != literal.negated


def space_literals_hold(literals: Sequence[Literal], space_facts: SpaceFacts) -> bool:
    return all(
        evaluate(lit, space_facts, None) for lit in literals if lit.predicate.level == "space"
    )


def system_literals_hold(
    literals: Sequence[Literal], space_facts: SpaceFacts, facts: Facts
) -> bool:
    return all(
        evaluate(lit, space_facts, facts) for lit in literals if lit.predicate.level == "system"
    )
