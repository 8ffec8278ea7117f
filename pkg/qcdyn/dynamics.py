"""
Dynamics of a self-map on a finite space: orbits, omega-limit sets,
hitting-time sets and the transitivity and dense-orbit properties.

Every sequence that is generated by repeatedly applying a map to a point or a
subset of a finite set is eventually periodic. All decisions below are exact:
they detect the preperiod t and the period p of the relevant sequence and
read the answer off the finitely many distinct states.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .bitset import format_mask, full_mask, iter_members
from .maps import MapError, SelfMap, image_of, preimage, preimage_sizes
from .topology import FiniteSpace

logger = logging.getLogger(__name__)

FLAG_NAMES = ("IN", "TT", "TTp", "TTpp", "DO", "DOp", "DOpp")

QUANTIFIERS = ("pi-base", "open")


class EmptyArgumentError(Exception):
    pass


@dataclass(frozen=True)
class System:
    space: FiniteSpace
    f: SelfMap

    def __post_init__(self):
        if len(self.f) != self.space.n:
            raise MapError(
                f"map has {len(self.f)} images, but the space has {self.space.n} points"
            )

    @property
    def n(self) -> int:
        return self.space.n


@dataclass(frozen=True)
class OrbitSummary:
    start: int
    path: Tuple[int, ...]
    preperiod: int
    period: int

    @property
    def cycle(self) -> Tuple[int, ...]:
        return self.path[self.preperiod :]

    def mask(self) -> int:
        result = 0
        for x in self.path:
            result |= 1 << x
        return result

    def cycle_mask(self) -> int:
        result = 0
        for x in self.cycle:
            result |= 1 << x
        return result


def forward_orbit(system: System, x: int) -> OrbitSummary:
    """
    >>> from qcdyn.topology import discrete_space
    >>> forward_orbit(System(discrete_space(2), (1, 1)), 0)
    OrbitSummary(start=0, path=(0, 1), preperiod=1, period=1)
    """
    f = system.f
    index: Dict[int, int] = {}
    path: List[int] = []
    while x not in index:
        index[x] = len(path)
        path.append(x)
        x = f[x]
    t = index[x]
    return OrbitSummary(path[0], tuple(path), t, len(path) - t)


def omega_limit(system: System, x: int) -> int:
    """The closure of the cycle that the orbit of x runs into"""
    return system.space.closure(forward_orbit(system, x).cycle_mask())


@dataclass(frozen=True)
class HittingSet:
    """
    An eventually periodic set of natural numbers: k < offset is a member iff
    k is in transient, and k >= offset is a member iff (k - offset) mod period
    is in residues.
    """

    transient: FrozenSet[int]
    offset: int
    period: int
    residues: FrozenSet[int]

    def __contains__(self, k: int) -> bool:
        if k < 0:
            return False
        if k < self.offset:
            return k in self.transient
        return (k - self.offset) % self.period in self.residues

    def is_empty(self) -> bool:
        return not self.transient and not self.residues

    def is_infinite(self) -> bool:
        return bool(self.residues)

    def minimum(self) -> Optional[int]:
        if self.transient:
            return min(self.transient)
        if self.residues:
            return self.offset + min(self.residues)
        return None

    def members(self, limit: int) -> List[int]:
        """Members smaller than limit"""
        return [k for k in range(limit) if k in self]


@dataclass(frozen=True)
class Trajectory:
    """States S_0, S_1, ... of a subset under a set map, stored up to the first repetition"""

    states: Tuple[int, ...]
    preperiod: int
    period: int

    def state(self, k: int) -> int:
        if k < len(self.states):
            return self.states[k]
        return self.states[self.preperiod + (k - self.preperiod) % self.period]

    def cycle_states(self) -> Tuple[int, ...]:
        return self.states[self.preperiod :]

    def hitting(self, b: int) -> HittingSet:
        t = self.preperiod
        transient = frozenset(k for k in range(t) if self.states[k] & b)
        residues = frozenset(r for r, s in enumerate(self.cycle_states()) if s & b)
        return HittingSet(transient, t, self.period, residues)

    def union(self, start: int = 0) -> int:
        """Union of all states S_k with k >= start"""
        result = 0
        for s in self.states[min(start, self.preperiod) :]:
            result |= s
        return result


def _trajectory(step: Callable[[int], int], a: int) -> Trajectory:
    index: Dict[int, int] = {}
    states: List[int] = []
    while a not in index:
        index[a] = len(states)
        states.append(a)
        a = step(a)
    t = index[a]
    return Trajectory(tuple(states), t, len(states) - t)


def trajectory(system: System, a: int) -> Trajectory:
    """Forward images A, f(A), f^2(A), ..."""
    f = system.f
    return _trajectory(lambda s: image_of(f, s), a)


def preimage_trajectory(system: System, a: int) -> Trajectory:
    """Preimages A, f^-1(A), f^-2(A), ..."""
    f = system.f
    return _trajectory(lambda s: preimage(f, s), a)


def hitting_set(system: System, a: int, b: int) -> HittingSet:
    """
    The set of n >= 0 such that f^n(A) meets B.

    >>> from qcdyn.topology import discrete_space
    >>> h = hitting_set(System(discrete_space(3), (1, 2, 0)), 0b001, 0b010)
    >>> h.members(8)
    [1, 4, 7]
    """
    if a == 0 or b == 0:
        raise EmptyArgumentError("hitting sets are only defined for nonempty sets")
    return trajectory(system, a).hitting(b)


def two_sided_hitting_nonempty(system: System, a: int, b: int) -> bool:
    """Whether N(A, B), the union of N+(A, B) and N+(B, A), is nonempty"""
    return not hitting_set(system, a, b).is_empty() or not hitting_set(system, b, a).is_empty()


def simulate_hits(system: System, a: int, b: int, horizon: int) -> List[int]:
    """Direct simulation of f^k(A) meeting B for k = 0..horizon"""
    hits = []
    s = a
    for k in range(horizon + 1):
        if s & b:
            hits.append(k)
        s = image_of(system.f, s)
    return hits


def transitive_points(system: System) -> int:
    """Points with dense forward orbit"""
    space = system.space
    result = 0
    for x in range(space.n):
        if space.is_dense(forward_orbit(system, x).mask()):
            result |= 1 << x
    return result


def transitive_points_by_hitting(system: System) -> int:
    """Points x such that N+({x}, P) is nonempty for every P of the pi-base"""
    result = 0
    for x in range(system.n):
        traj = trajectory(system, 1 << x)
        if all(traj.union() & p for p in system.space.pi_base()):
            result |= 1 << x
    return result


def omega_full_points(system: System) -> int:
    result = 0
    for x in range(system.n):
        if omega_limit(system, x) == system.space.full:
            result |= 1 << x
    return result


def forward_image_dense(system: System, u: int) -> bool:
    """Whether the union of f^n(U) over n >= 0 is dense"""
    return system.space.is_dense(trajectory(system, u).union())


def eventual_return_dense(system: System, u: int) -> bool:
    """
    Whether the union of int(f^-n(U)) over n >= k is dense for every k. The
    union shrinks as k grows and is constant from the preperiod of the
    preimage trajectory on, so only that k needs checking.
    """
    space = system.space
    traj = preimage_trajectory(system, u)
    union = 0
    for s in traj.cycle_states():
        union |= space.interior(s)
    return space.is_dense(union)


def invariant_closed_sets(system: System) -> List[int]:
    """Proper closed sets A with f(A) contained in A"""
    space = system.space
    return [
        c
        for c in space.closed_sets()
        if c != space.full and image_of(system.f, c) & ~c == 0
    ]


def is_irreducible(system: System) -> bool:
    """X is not the union of two proper closed +invariant sets"""
    full = system.space.full
    candidates = invariant_closed_sets(system)
    return not any(a | b == full for a in candidates for b in candidates)


def greatest_backward_infinite_set(system: System) -> int:
    """
    The largest set E such that every point of E has a preimage in E. These
    are exactly the points that are the end of a backward-infinite chain.
    """
    f = system.f
    e = system.space.full
    while True:
        has_preimage = image_of(f, e)
        if e & ~has_preimage == 0:
            return e
        e &= has_preimage


def dense_orbit_sequence_exists(system: System) -> bool:
    """
    Brute-force search for an orbit sequence with dense element set: either a
    bi-infinite sequence, which lies in the backward-infinite set E, or a
    forward sequence that starts at a point without preimages.
    """
    space = system.space
    f = system.f
    sizes = preimage_sizes(f)
    for x in range(system.n):
        if sizes[x] == 0 and space.is_dense(forward_orbit(system, x).mask()):
            return True
    e = greatest_backward_infinite_set(system)
    predecessors: List[List[int]] = [[] for _ in range(system.n)]
    for x, y in enumerate(f):
        if (e >> x) & 1:
            predecessors[y].append(x)
    queue = deque((x, forward_orbit(system, x).mask()) for x in iter_members(e))
    seen: Set[Tuple[int, int]] = set(queue)
    while queue:
        x, acc = queue.popleft()
        if space.is_dense(acc):
            return True
        for y in predecessors[x]:
            state = (y, acc | 1 << y)
            if state not in seen:
                seen.add(state)
                queue.append(state)
    return False


def cycles(f: Sequence[int]) -> List[Tuple[int, ...]]:
    """All cycles of the map, each starting at its smallest point"""
    on_cycle: Set[int] = set()
    result = []
    for x in range(len(f)):
        path: Dict[int, int] = {}
        y = x
        while y not in path and y not in on_cycle:
            path[y] = len(path)
            y = f[y]
        if y in path:
            cycle = list(path)[path[y] :]
            on_cycle.update(cycle)
            start = cycle.index(min(cycle))
            result.append(tuple(cycle[start:] + cycle[:start]))
    return sorted(result)


def has_dense_orbit_sequence(system: System) -> bool:
    """
    A bi-infinite orbit sequence in a finite system has a cycle as its set of
    elements. So an orbit sequence with dense element set exists iff some
    cycle has dense closure or some point without preimages has a dense
    forward orbit.
    """
    space = system.space
    for cycle in cycles(system.f):
        mask = 0
        for x in cycle:
            mask |= 1 << x
        if space.is_dense(mask):
            return True
    sizes = preimage_sizes(system.f)
    return any(
        sizes[x] == 0 and space.is_dense(forward_orbit(system, x).mask())
        for x in range(system.n)
    )


@dataclass
class PropertyVector:
    IN: bool
    TT: bool
    TTp: bool
    TTpp: bool
    DO: bool
    DOp: bool
    DOpp: bool
    trans_points: int
    witnesses: Dict[str, str] = field(default_factory=dict)

    def flags(self) -> Dict[str, bool]:
        return {name: getattr(self, name) for name in FLAG_NAMES}


def _pair_family(space: FiniteSpace, quantifier: str) -> List[int]:
    if quantifier == "pi-base":
        return space.pi_base()
    if quantifier == "open":
        return space.nonempty_open_sets()
    raise ValueError(f"Unknown quantifier {quantifier!r}")


def property_vector(system: System, quantifier: str = "pi-base") -> PropertyVector:
    """
    Decide all seven transitivity and dense-orbit properties.

    The transitivity family quantifies over pairs of pi-base elements: if P
    lies in U and Q in V then N+(P, Q) is contained in N+(U, V). With
    quantifier="open" all pairs of nonempty open sets are used instead.
    """
    space = system.space
    family = _pair_family(space, quantifier)
    trajectories = {u: trajectory(system, u) for u in family}
    witnesses: Dict[str, str] = {}

    tt = ttp = ttpp = True
    for u in family:
        for v in family:
            h = trajectories[u].hitting(v)
            if h.is_empty():
                if ttp:
                    ttp = False
                    witnesses["TTp"] = f"N+({format_mask(u)}, {format_mask(v)}) is empty"
                if tt and trajectories[v].hitting(u).is_empty():
                    tt = False
                    witnesses["TT"] = f"N({format_mask(u)}, {format_mask(v)}) is empty"
            if ttpp and not h.is_infinite():
                ttpp = False
                witnesses["TTpp"] = f"N+({format_mask(u)}, {format_mask(v)}) is finite"

    irreducible = True
    candidates = invariant_closed_sets(system)
    for a in candidates:
        for b in candidates:
            if irreducible and a | b == space.full:
                irreducible = False
                witnesses["IN"] = (
                    f"X is the union of closed +invariant sets {format_mask(a)} and {format_mask(b)}"
                )

    trans = transitive_points(system)
    omega_full = omega_full_points(system)
    do = has_dense_orbit_sequence(system)
    if trans:
        witnesses["DOp"] = f"orbit of {min(iter_members(trans))} is dense"
    if omega_full:
        witnesses["DOpp"] = f"omega-limit of {min(iter_members(omega_full))} is X"
    if not do:
        witnesses["DO"] = "no cycle has dense closure and no source has a dense orbit"
    return PropertyVector(
        IN=irreducible,
        TT=tt,
        TTp=ttp,
        TTpp=ttpp,
        DO=do,
        DOp=trans != 0,
        DOpp=omega_full != 0,
        trans_points=trans,
        witnesses=witnesses,
    )


def sources(f: Sequence[int]) -> int:
    """Points without preimages"""
    result = full_mask(len(f))
    for y in f:
        result &= ~(1 << y)
    return result
