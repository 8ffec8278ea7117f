"""
Finite topological spaces in minimal-neighbourhood form

Every topology on a finite set is an Alexandrov topology: each point x has a
smallest open set containing it, min_nbhd[x], and the open sets are exactly the
unions of these. Equivalently, the topology is the family of up-sets of the
specialisation preorder x <= y iff y in min_nbhd[x]. A FiniteSpace stores the n
minimal neighbourhoods as bitmasks (see bitset.py).
"""
import logging
from dataclasses import dataclass
from itertools import permutations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple, Union

from .bitset import all_subsets, contains, full_mask, is_subset, iter_members, mask_of

logger = logging.getLogger(__name__)

DEFAULT_CAP = 6


class SpaceError(Exception):
    pass


class ReflexivityViolation(SpaceError):
    pass


class TransitivityViolation(SpaceError):
    pass


class CapExceeded(SpaceError):
    pass


class FiniteSpace:
    """
    A topology on the points 0..n-1, given by the minimal open neighbourhood of
    each point. Use build_space() to construct a validated instance; the
    constructor itself trusts its argument.

    Instances are immutable. Derived families (open sets, closed sets,
    nowhere-dense sets) are computed on first use and cached.
    """

    __slots__ = ("n", "min_nbhd", "full", "_cache")

    def __init__(self, min_nbhd: Sequence[int]):
        self.min_nbhd: Tuple[int, ...] = tuple(min_nbhd)
        self.n = len(self.min_nbhd)
        self.full = full_mask(self.n)
        self._cache: Dict[str, object] = {}

    def __reduce__(self):
        return (FiniteSpace, (self.min_nbhd,))

    def __eq__(self, other):
        return isinstance(other, FiniteSpace) and self.min_nbhd == other.min_nbhd

    def __hash__(self):
        return hash(self.min_nbhd)

    def __repr__(self):
        nbhds = [list(iter_members(m)) for m in self.min_nbhd]
        return f"FiniteSpace({nbhds})"

    def interior(self, s: int) -> int:
        """Points whose minimal neighbourhood lies inside s"""
        result = 0
        for x, nbhd in enumerate(self.min_nbhd):
            if nbhd & ~s == 0:
                result |= 1 << x
        return result

    def closure(self, s: int) -> int:
        """
        Points whose minimal neighbourhood meets s. This equals the
        complement of the interior of the complement of s.
        """
        result = 0
        for x, nbhd in enumerate(self.min_nbhd):
            if nbhd & s:
                result |= 1 << x
        return result

    def is_open(self, s: int) -> bool:
        return all(is_subset(self.min_nbhd[x], s) for x in iter_members(s))

    def is_dense(self, s: int) -> bool:
        return self.closure(s) == self.full

    def is_nowhere_dense(self, s: int) -> bool:
        return self.interior(self.closure(s)) == 0

    def isolated_points(self) -> int:
        result = 0
        for x, nbhd in enumerate(self.min_nbhd):
            if nbhd == 1 << x:
                result |= 1 << x
        return result

    def open_sets(self) -> List[int]:
        """All open sets in increasing mask order, including the empty set and X"""
        if "open" not in self._cache:
            opens: Set[int] = {0}
            for nbhd in set(self.min_nbhd):
                opens |= {u | nbhd for u in opens}
            self._cache["open"] = sorted(opens)
        return self._cache["open"]  # type: ignore

    def nonempty_open_sets(self) -> List[int]:
        return self.open_sets()[1:]

    def closed_sets(self) -> List[int]:
        if "closed" not in self._cache:
            self._cache["closed"] = sorted(self.full & ~u for u in self.open_sets())
        return self._cache["closed"]  # type: ignore

    def nowhere_dense_sets(self) -> List[int]:
        """All subsets whose closure has empty interior"""
        if "nowhere_dense" not in self._cache:
            self._cache["nowhere_dense"] = [
                s for s in all_subsets(self.n) if self.is_nowhere_dense(s)
            ]
        return self._cache["nowhere_dense"]  # type: ignore

    def pi_base(self) -> List[int]:
        """Distinct minimal neighbourhoods in order of their first point"""
        if "pi_base" not in self._cache:
            seen: List[int] = []
            for nbhd in self.min_nbhd:
                if nbhd not in seen:
                    seen.append(nbhd)
            self._cache["pi_base"] = seen
        return self._cache["pi_base"]  # type: ignore

    def is_discrete(self) -> bool:
        return self.isolated_points() == self.full


def build_space(min_nbhd: Sequence[Union[int, Iterable[int]]]) -> FiniteSpace:
    """
    Validate minimal neighbourhoods and return the space. Each entry is either
    a bitmask or an iterable of point indices.

    >>> build_space([[0], [0, 1]])
    FiniteSpace([[0], [0, 1]])
    >>> build_space([[1], [1]])
    Traceback (most recent call last):
    ...
    qcdyn.topology.ReflexivityViolation: point 0 is not in its own minimal neighbourhood
    """
    if len(min_nbhd) == 0:
        raise SpaceError("a space needs at least one point")
    n = len(min_nbhd)
    masks = [m if isinstance(m, int) else mask_of(m) for m in min_nbhd]
    for x, nbhd in enumerate(masks):
        if nbhd < 0 or nbhd >> n:
            raise SpaceError(f"minimal neighbourhood of point {x} refers to points outside 0..{n - 1}")
        if not contains(nbhd, x):
            raise ReflexivityViolation(f"point {x} is not in its own minimal neighbourhood")
    for x, nbhd in enumerate(masks):
        for y in iter_members(nbhd):
            if not is_subset(masks[y], nbhd):
                raise TransitivityViolation(
                    f"point {y} lies in the minimal neighbourhood of {x}, "
                    f"but its own minimal neighbourhood is not contained in it"
                )
    return FiniteSpace(masks)


def discrete_space(n: int) -> FiniteSpace:
    return FiniteSpace([1 << x for x in range(n)])


def indiscrete_space(n: int) -> FiniteSpace:
    return FiniteSpace([full_mask(n)] * n)


def sierpinski_space() -> FiniteSpace:
    """Two points, the point 0 is open"""
    return FiniteSpace([0b01, 0b11])


@dataclass(frozen=True)
class SpaceProfile:
    T0: bool
    T1: bool
    T2: bool
    perfect: bool
    fragmentable: bool
    baire: bool
    second_category: bool
    iso: int


def is_fragmentable(space: FiniteSpace) -> bool:
    """
    Every nonempty subset A has a point x whose minimal neighbourhood meets A
    only in x, that is, A has a relatively open singleton.
    """
    for a in range(1, 1 << space.n):
        if not any(space.min_nbhd[x] & a == 1 << x for x in iter_members(a)):
            return False
    return True


def residual_sets_are_dense(space: FiniteSpace) -> bool:
    """Brute-force Baire check: every set with nowhere-dense complement is dense"""
    return all(space.is_dense(space.full & ~nd) for nd in space.nowhere_dense_sets())


def space_profile(space: FiniteSpace, verify_baire: bool = False) -> SpaceProfile:
    n = space.n
    nbhd = space.min_nbhd
    t0 = len(set(nbhd)) == n
    t1 = all(
        not contains(nbhd[x], y) and not contains(nbhd[y], x)
        for x in range(n)
        for y in range(x + 1, n)
    )
    t2 = all(nbhd[x] & nbhd[y] == 0 for x in range(n) for y in range(x + 1, n))
    iso = space.isolated_points()
    baire = True
    if verify_baire:
        baire = residual_sets_are_dense(space)
        if not baire:
            logger.warning("Space %r failed the brute-force Baire check", space)
    return SpaceProfile(
        T0=t0,
        T1=t1,
        T2=t2,
        perfect=iso == 0,
        fragmentable=is_fragmentable(space),
        baire=baire,
        second_category=baire,
        iso=iso,
    )


@dataclass(frozen=True)
class CategoryPredicates:
    dense: bool
    nowhere_dense: bool
    residual: bool
    contains_dense_open: bool


def category_predicates(space: FiniteSpace, s: int) -> CategoryPredicates:
    """
    In a finite space a countable union of nowhere-dense sets is a finite
    union and thus nowhere dense, and every G-delta set is open. Hence s is
    residual iff its complement is nowhere dense, and s contains a dense
    G-delta set iff its interior is dense.
    """
    return CategoryPredicates(
        dense=space.is_dense(s),
        nowhere_dense=space.is_nowhere_dense(s),
        residual=space.is_nowhere_dense(space.full & ~s),
        contains_dense_open=space.is_dense(space.interior(s)),
    )


def canonical_pi_base(space: FiniteSpace) -> List[int]:
    return list(space.pi_base())


def _relabel(min_nbhd: Sequence[int], perm: Sequence[int]) -> Tuple[int, ...]:
    relabelled = [0] * len(min_nbhd)
    for x, nbhd in enumerate(min_nbhd):
        image = 0
        for y in iter_members(nbhd):
            image |= 1 << perm[y]
        relabelled[perm[x]] = image
    return tuple(relabelled)


def canonical_form(space: FiniteSpace) -> Tuple[int, ...]:
    """Smallest relabelled min_nbhd tuple over all point permutations"""
    return min(_relabel(space.min_nbhd, perm) for perm in permutations(range(space.n)))


def _preorders(n: int) -> Iterator[Tuple[int, ...]]:
    """
    Yield every preorder on n points as a min_nbhd tuple. A preorder on n
    points restricts to a unique preorder on the first n-1 points; the new
    point z is attached by choosing its strict up-set U (an open set of the
    smaller space) and its strict down-set D (a closed set) such that every
    point of D lies below every point of U.
    """
    if n == 1:
        yield (1,)
        return
    z_bit = 1 << (n - 1)
    for base in _preorders(n - 1):
        smaller = FiniteSpace(base)
        closed = smaller.closed_sets()
        for up in smaller.open_sets():
            for down in closed:
                if any(up & ~base[d] for d in iter_members(down)):
                    continue
                yield tuple(
                    nbhd | z_bit if contains(down, x) else nbhd for x, nbhd in enumerate(base)
                ) + (up | z_bit,)


def enumerate_spaces(
    n: int, cap: int = DEFAULT_CAP, dedup: bool = False
) -> Iterator[FiniteSpace]:
    """
    Yield every topology on n labelled points exactly once. With dedup=True,
    only the first space of each homeomorphism class is yielded.
    """
    if n < 1:
        raise SpaceError("a space needs at least one point")
    if n > cap:
        raise CapExceeded(f"ground set size {n} exceeds the enumeration cap {cap}")
    seen: Set[Tuple[int, ...]] = set()
    count = 0
    for min_nbhd in _preorders(n):
        space = FiniteSpace(min_nbhd)
        if dedup:
            form = canonical_form(space)
            if form in seen:
                continue
            seen.add(form)
        count += 1
        yield space
    logger.debug("Enumerated %d topologies on %d points", count, n)


def count_topologies_by_families(n: int) -> int:
    """
    Count families of subsets of an n-point set that contain the empty set and
    the whole set and are closed under union and intersection. Exponential in
    2**n, only meant as an independent oracle for small n.
    """
    full = full_mask(n)
    inner = [s for s in all_subsets(n) if s not in (0, full)]
    count = 0
    for selection in range(1 << len(inner)):
        family = {0, full}
        family.update(s for i, s in enumerate(inner) if selection >> i & 1)
        if all(a | b in family and a & b in family for a in family for b in family):
            count += 1
    return count


def space_from_points(min_nbhd: Sequence[Iterable[int]], cap: Optional[int] = None) -> FiniteSpace:
    """Convenience wrapper used by tests and the file readers"""
    space = build_space([mask_of(points) for points in min_nbhd])
    if cap is not None and space.n > cap:
        raise CapExceeded(f"ground set size {space.n} exceeds the cap {cap}")
    return space
