"""
Self-maps of finite spaces: continuity, quasi-continuity and related openness
properties, quasi-continuous systems and the sets of points at which all
iterates are continuous.

A map f on the points 0..n-1 is the tuple of images (f(0), ..., f(n-1)).
All quantifiers over open sets reduce to quantifiers over minimal
neighbourhoods, since every open set is a union of them. Where a literal
evaluation over the full open family exists it is available via literal=True
and used as a reference in the tests.
"""
import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .bitset import full_mask, is_subset, iter_members
from .topology import FiniteSpace

logger = logging.getLogger(__name__)

SelfMap = Tuple[int, ...]

QC_METHODS = ("pointwise", "hitting", "preimage")


class MapError(Exception):
    pass


def build_map(image: Iterable[int], n: int) -> SelfMap:
    """
    >>> build_map([1, 1], 2)
    (1, 1)
    """
    f = tuple(image)
    if len(f) != n:
        raise MapError(f"map has {len(f)} images, but the space has {n} points")
    for x, y in enumerate(f):
        if not 0 <= y < n:
            raise MapError(f"image {y} of point {x} is outside 0..{n - 1}")
    return f


def identity_map(n: int) -> SelfMap:
    return tuple(range(n))


def all_maps(n: int) -> Iterator[SelfMap]:
    """All n**n self-maps, lexicographically by image tuple"""
    return product(range(n), repeat=n)


def compose(outer: SelfMap, inner: SelfMap) -> SelfMap:
    """The map x -> outer(inner(x))"""
    return tuple(outer[y] for y in inner)


def iterate(f: SelfMap, k: int) -> SelfMap:
    g = identity_map(len(f))
    for _ in range(k):
        g = compose(f, g)
    return g


def image_of(f: Sequence[int], s: int) -> int:
    result = 0
    for x in iter_members(s):
        result |= 1 << f[x]
    return result


def preimage(f: Sequence[int], s: int) -> int:
    result = 0
    for x, y in enumerate(f):
        if (s >> y) & 1:
            result |= 1 << x
    return result


def preimage_sizes(f: Sequence[int]) -> List[int]:
    sizes = [0] * len(f)
    for y in f:
        sizes[y] += 1
    return sizes


def continuity_points(
    space: FiniteSpace, f: Sequence[int], codomain: Optional[FiniteSpace] = None
) -> int:
    """
    f is continuous at x iff f maps the minimal neighbourhood of x into the
    minimal neighbourhood of f(x).
    """
    target = codomain or space
    result = 0
    for x, nbhd in enumerate(space.min_nbhd):
        if is_subset(image_of(f, nbhd), target.min_nbhd[f[x]]):
            result |= 1 << x
    return result


def is_continuous(space: FiniteSpace, f: Sequence[int], codomain: Optional[FiniteSpace] = None):
    return continuity_points(space, f, codomain) == space.full


def quasicontinuity_points(
    space: FiniteSpace,
    f: Sequence[int],
    codomain: Optional[FiniteSpace] = None,
    literal: bool = False,
) -> int:
    """
    Points x such that for every open U containing x and every open W
    containing f(x) there is a nonempty open V within U with f(V) within W.

    It suffices to take U and W minimal and V the minimal neighbourhood of a
    point of U. literal=True quantifies over all open sets instead.
    """
    target = codomain or space
    result = 0
    for x in range(space.n):
        if literal:
            ok = _quasicontinuous_at_literal(space, target, f, x)
        else:
            w = target.min_nbhd[f[x]]
            ok = any(
                is_subset(image_of(f, space.min_nbhd[y]), w)
                for y in iter_members(space.min_nbhd[x])
            )
        if ok:
            result |= 1 << x
    return result


def _quasicontinuous_at_literal(
    space: FiniteSpace, target: FiniteSpace, f: Sequence[int], x: int
) -> bool:
    nonempty_opens = space.nonempty_open_sets()
    for u in nonempty_opens:
        if not (u >> x) & 1:
            continue
        for w in target.nonempty_open_sets():
            if not (w >> f[x]) & 1:
                continue
            if not any(
                is_subset(v, u) and is_subset(image_of(f, v), w) for v in nonempty_opens
            ):
                return False
    return True


def is_quasicontinuous(
    space: FiniteSpace,
    f: Sequence[int],
    method: str = "pointwise",
    codomain: Optional[FiniteSpace] = None,
    literal: bool = False,
) -> bool:
    """
    Decide quasi-continuity of f: space -> codomain (default: space itself)
    by one of three equivalent characterizations:

    pointwise: f is quasi-continuous at every point.
    hitting: for open U, V either U and f^-1(V) are disjoint or their
        intersection contains a nonempty open set.
    preimage: for every open V, f^-1(V) lies in the closure of the interior
        of f^-1(V).
    """
    target = codomain or space
    if method == "pointwise":
        return quasicontinuity_points(space, f, codomain, literal) == space.full
    if literal:
        domain_opens: Sequence[int] = space.nonempty_open_sets()
        target_opens: Sequence[int] = target.nonempty_open_sets()
    else:
        domain_opens = space.pi_base()
        target_opens = target.pi_base()
    if method == "hitting":
        for v in target_opens:
            pre = preimage(f, v)
            for u in domain_opens:
                if u & pre and space.interior(u & pre) == 0:
                    return False
        return True
    if method == "preimage":
        for v in target_opens:
            pre = preimage(f, v)
            if not is_subset(pre, space.closure(space.interior(pre))):
                return False
        return True
    raise ValueError(f"Unknown quasi-continuity method {method!r}")


def is_feebly_open(space: FiniteSpace, f: Sequence[int]) -> bool:
    """The image of every nonempty open set has nonempty interior"""
    return all(space.interior(image_of(f, u)) != 0 for u in space.nonempty_open_sets())


def is_delta_open(space: FiniteSpace, f: Sequence[int], method: str = "preimage") -> bool:
    """
    preimage: the preimage of every nowhere-dense set is nowhere dense.
    image: the image of every somewhere-dense set is somewhere dense.
    """
    if method == "preimage":
        return all(space.is_nowhere_dense(preimage(f, s)) for s in space.nowhere_dense_sets())
    if method == "image":
        nowhere_dense = set(space.nowhere_dense_sets())
        return all(
            image_of(f, s) not in nowhere_dense
            for s in range(1 << space.n)
            if s not in nowhere_dense
        )
    raise ValueError(f"Unknown delta-open method {method!r}")


class IterateCycle(NamedTuple):
    iterates: List[SelfMap]
    preperiod: int
    period: int


def iterate_cycle(f: SelfMap) -> IterateCycle:
    """
    Distinct iterates f^0, f^1, ..., f^(t+p-1) where f^(t+p) = f^t is the
    first repetition. Every iterate f^k equals one of the listed ones.

    >>> iterate_cycle((1, 2, 3, 0))[1:]
    (0, 4)
    >>> iterate_cycle((1, 1, 1))[1:]
    (1, 1)
    """
    g = identity_map(len(f))
    seen: Dict[SelfMap, int] = {}
    iterates: List[SelfMap] = []
    while g not in seen:
        seen[g] = len(iterates)
        iterates.append(g)
        g = compose(f, g)
    t = seen[g]
    return IterateCycle(iterates, t, len(iterates) - t)


class QcSystemResult(NamedTuple):
    holds: bool
    preperiod: int
    period: int
    failing_iterate: Optional[int]


def is_qc_system(space: FiniteSpace, f: SelfMap) -> QcSystemResult:
    """
    Decide whether every iterate of f is quasi-continuous. Since f has only
    finitely many distinct iterates, checking f^0 .. f^(t+p-1) is exact.
    """
    cycle = iterate_cycle(f)
    failing = None
    for k, g in enumerate(cycle.iterates):
        if not is_quasicontinuous(space, g):
            failing = k
            break
    return QcSystemResult(failing is None, cycle.preperiod, cycle.period, failing)


def c_infinity_sets(
    space: FiniteSpace, f: SelfMap, cycle: Optional[IterateCycle] = None
) -> Tuple[int, int]:
    """
    Return (c_inf, c_inf_orbit) where c_inf is the set of points at which
    every iterate of f is continuous and c_inf_orbit is the set of points
    whose whole forward orbit consists of continuity points of f.
    """
    if cycle is None:
        cycle = iterate_cycle(f)
    c_inf = full_mask(space.n)
    for g in cycle.iterates:
        c_inf &= continuity_points(space, g)
    cont = continuity_points(space, f)
    c_inf_orbit = full_mask(space.n)
    for g in cycle.iterates:
        c_inf_orbit &= preimage(g, cont)
    return c_inf, c_inf_orbit


@dataclass(frozen=True)
class MapProfile:
    continuous: bool
    quasicontinuous: bool
    feebly_open: bool
    delta_open: bool
    qc_system: bool
    cont_points: int
    c_inf: int
    c_inf_orbit: int
    iterate_preperiod: int
    iterate_period: int


def map_profile(space: FiniteSpace, f: SelfMap) -> MapProfile:
    cycle = iterate_cycle(f)
    qc_system = all(is_quasicontinuous(space, g) for g in cycle.iterates)
    cont = continuity_points(space, f)
    c_inf, c_inf_orbit = c_infinity_sets(space, f, cycle)
    return MapProfile(
        continuous=cont == space.full,
        quasicontinuous=is_quasicontinuous(space, f),
        feebly_open=is_feebly_open(space, f),
        delta_open=is_delta_open(space, f),
        qc_system=qc_system,
        cont_points=cont,
        c_inf=c_inf,
        c_inf_orbit=c_inf_orbit,
        iterate_preperiod=cycle.preperiod,
        iterate_period=cycle.period,
    )
