"""
Exact piecewise-affine self-maps of the unit interval

A PWLMap is given by breakpoints 0 = b_0 < b_1 < ... < b_m = 1, an affine
piece (slope, intercept) for each open interval (b_i, b_(i+1)) and an explicit
value at each breakpoint. All arithmetic uses fractions.Fraction, so nothing
is ever rounded. Subsets of [0, 1] are finite unions of intervals with
rational endpoints, represented as portion intervals, which are kept disjoint,
sorted and merged by the library.
"""
import logging
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from multiprocessing import Pool
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

import portion as P
from portion.interval import Interval

logger = logging.getLogger(__name__)

Number = Union[int, Fraction, str]
RatIntervalSet = Interval

UNIT = P.closed(Fraction(0), Fraction(1))


class PWLError(Exception):
    pass


class OutOfDomainError(PWLError):
    pass


class EmptyArgumentError(PWLError):
    pass


def rational(value: Number) -> Fraction:
    """
    >>> rational("3/8")
    Fraction(3, 8)
    """
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as e:
        raise PWLError(f"{value!r} is not a rational number") from e


class Piece(NamedTuple):
    slope: Fraction
    intercept: Fraction

    def __call__(self, x: Fraction) -> Fraction:
        return self.slope * x + self.intercept


class PWLMap:
    """
    >>> f = example31()
    >>> f(Fraction(1, 2)), f(Fraction(3, 4))
    (Fraction(0, 1), Fraction(1, 1))
    """

    __slots__ = ("breakpoints", "pieces", "values")

    def __init__(
        self,
        breakpoints: Sequence[Number],
        pieces: Sequence[Tuple[Number, Number]],
        values: Sequence[Number],
    ):
        bps = [rational(b) for b in breakpoints]
        if len(bps) < 2 or bps[0] != 0 or bps[-1] != 1:
            raise PWLError("breakpoints must start at 0 and end at 1")
        if any(a >= b for a, b in zip(bps, bps[1:])):
            raise PWLError("breakpoints must be strictly increasing")
        if len(pieces) != len(bps) - 1:
            raise PWLError(f"expected {len(bps) - 1} pieces, got {len(pieces)}")
        if len(values) != len(bps):
            raise PWLError(f"expected {len(bps)} breakpoint values, got {len(values)}")
        affine = [Piece(rational(s), rational(c)) for s, c in pieces]
        vals = [rational(v) for v in values]
        for i, piece in enumerate(affine):
            for end in (piece(bps[i]), piece(bps[i + 1])):
                if not 0 <= end <= 1:
                    raise PWLError(f"piece {i} leaves [0, 1]")
        if any(not 0 <= v <= 1 for v in vals):
            raise PWLError("breakpoint values must lie in [0, 1]")
        self.breakpoints, self.pieces, self.values = _merge_redundant(bps, affine, vals)

    def __eq__(self, other):
        return (
            isinstance(other, PWLMap)
            and self.breakpoints == other.breakpoints
            and self.pieces == other.pieces
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.breakpoints, self.pieces, self.values))

    def __repr__(self):
        bps = ", ".join(str(b) for b in self.breakpoints)
        return f"PWLMap(breakpoints=[{bps}], pieces={len(self.pieces)})"

    @property
    def m(self) -> int:
        return len(self.pieces)

    def locate(self, x: Fraction) -> Tuple[int, bool]:
        """
        Return (i, True) if x is breakpoint b_i, else (i, False) if x lies in
        the open interval of piece i.
        """
        i = bisect_left(self.breakpoints, x)
        if i < len(self.breakpoints) and self.breakpoints[i] == x:
            return i, True
        return i - 1, False

    def __call__(self, x: Number) -> Fraction:
        x = rational(x)
        if not 0 <= x <= 1:
            raise OutOfDomainError(f"{x} is outside [0, 1]")
        i, at_breakpoint = self.locate(x)
        if at_breakpoint:
            return self.values[i]
        return self.pieces[i](x)

    eval = __call__

    def left_limit(self, i: int) -> Fraction:
        return self.pieces[i - 1](self.breakpoints[i])

    def right_limit(self, i: int) -> Fraction:
        return self.pieces[i](self.breakpoints[i])

    def piece_interval(self, i: int) -> Interval:
        return P.open(self.breakpoints[i], self.breakpoints[i + 1])


def _merge_redundant(
    bps: List[Fraction], pieces: List[Piece], values: List[Fraction]
) -> Tuple[Tuple[Fraction, ...], Tuple[Piece, ...], Tuple[Fraction, ...]]:
    """Drop interior breakpoints where the map is affine across and takes the affine value"""
    new_bps = [bps[0]]
    new_pieces = [pieces[0]]
    new_values = [values[0]]
    for i in range(1, len(bps) - 1):
        if pieces[i] == new_pieces[-1] and values[i] == pieces[i](bps[i]):
            continue
        new_bps.append(bps[i])
        new_values.append(values[i])
        new_pieces.append(pieces[i])
    new_bps.append(bps[-1])
    new_values.append(values[-1])
    return tuple(new_bps), tuple(new_pieces), tuple(new_values)


def identity() -> PWLMap:
    return PWLMap([0, 1], [(1, 0)], [0, 1])


def example31() -> PWLMap:
    """0 on [0, 1/2], 1 on (1/2, 1]"""
    return PWLMap([0, "1/2", 1], [(0, 0), (0, 1)], [0, 0, 1])


def doubling() -> PWLMap:
    """x -> 2x mod 1, with value 0 at 1"""
    return PWLMap([0, "1/2", 1], [(2, 0), (2, -1)], [0, 0, 0])


def tent() -> PWLMap:
    return PWLMap([0, "1/2", 1], [(2, 0), (-2, 2)], [0, 1, 0])


BUILTIN_MAPS: Dict[str, Callable[[], PWLMap]] = {
    "example31": example31,
    "doubling": doubling,
    "tent": tent,
    "identity": identity,
}


def compose(f: PWLMap, g: PWLMap) -> PWLMap:
    """
    The map x -> g(f(x)). The breakpoints of the result are those of f
    together with the preimages of interior breakpoints of g under the
    non-constant pieces of f.
    """
    bps = set(f.breakpoints)
    for i, piece in enumerate(f.pieces):
        if piece.slope == 0:
            continue
        lo, hi = f.breakpoints[i], f.breakpoints[i + 1]
        for c in g.breakpoints[1:-1]:
            x = (c - piece.intercept) / piece.slope
            if lo < x < hi:
                bps.add(x)
    breakpoints = sorted(bps)
    pieces = []
    for a, b in zip(breakpoints, breakpoints[1:]):
        fi, _ = f.locate((a + b) / 2)
        outer = f.pieces[fi]
        if outer.slope == 0:
            pieces.append((Fraction(0), g(outer.intercept)))
            continue
        gi, at_breakpoint = g.locate(outer((a + b) / 2))
        assert not at_breakpoint
        inner = g.pieces[gi]
        pieces.append((inner.slope * outer.slope, inner.slope * outer.intercept + inner.intercept))
    values = [g(f(x)) for x in breakpoints]
    return PWLMap(breakpoints, pieces, values)


def orbit_prefix(f: PWLMap, x: Number, steps: int) -> List[Fraction]:
    """x, f(x), ..., f^steps(x)"""
    orbit = [rational(x)]
    for _ in range(steps):
        orbit.append(f(orbit[-1]))
    return orbit


@dataclass(frozen=True)
class BreakpointAnalysis:
    discontinuities: Tuple[Fraction, ...]
    non_qc_points: Tuple[Fraction, ...]

    @property
    def continuous(self) -> bool:
        return not self.discontinuities

    @property
    def qc_everywhere(self) -> bool:
        return not self.non_qc_points

    def is_continuous_at(self, x: Fraction) -> bool:
        return x not in self.discontinuities


def qc_points_pwl(f: PWLMap) -> BreakpointAnalysis:
    """
    f is continuous off its breakpoints. At an interior breakpoint with
    one-sided limits L and R, f is continuous iff f(c) = L = R, and
    quasi-continuous iff f(c) is L or R. At 0 and 1 only the one existing
    side counts, so both notions reduce to f(c) equal to that limit.
    """
    discontinuities = []
    non_qc = []
    for i, (c, value) in enumerate(zip(f.breakpoints, f.values)):
        sides = []
        if i > 0:
            sides.append(f.left_limit(i))
        if i < f.m:
            sides.append(f.right_limit(i))
        if any(side != value for side in sides):
            discontinuities.append(c)
        if value not in sides:
            non_qc.append(c)
    return BreakpointAnalysis(tuple(discontinuities), tuple(non_qc))


def quasicontinuous_at_by_neighbourhoods(f: PWLMap, c: Number) -> bool:
    """
    Check quasi-continuity at c from the definition: every epsilon-ball
    around f(c) must meet the image of every punctured neighbourhood of c,
    since f is affine off its breakpoints and an open set V near c maps into
    the ball as soon as one of its points does.

    A single pair of radii decides this. Epsilon is half the smallest nonzero
    gap between f(c) and a one-sided limit. Delta is small enough that each
    side whose limit differs from f(c) stays within half its gap of that
    limit, so such a side misses the ball, while a side whose limit equals
    f(c) meets every ball.

    >>> f = PWLMap([0, "1/2", 1], [(0, 0), (2, -1)], [0, "1/1000", 1])
    >>> quasicontinuous_at_by_neighbourhoods(f, "1/2")
    False
    """
    c = rational(c)
    value = f(c)
    i, at_breakpoint = f.locate(c)
    if not at_breakpoint:
        return True
    sides = []
    if i > 0:
        sides.append((f.left_limit(i), f.pieces[i - 1].slope))
    if i < f.m:
        sides.append((f.right_limit(i), f.pieces[i].slope))
    gaps = [abs(limit - value) for limit, _ in sides if limit != value]
    eps = min(gaps) / 2 if gaps else Fraction(1)
    delta = min(b - a for a, b in zip(f.breakpoints, f.breakpoints[1:])) / 2
    for limit, slope in sides:
        if limit != value and slope != 0:
            delta = min(delta, abs(limit - value) / (2 * abs(slope)))
    punctured = (P.open(c - delta, c) | P.open(c, c + delta)) & P.open(Fraction(0), Fraction(1))
    image = _image_without_breakpoints(f, punctured)
    return not (image & P.open(value - eps, value + eps)).empty


def _affine_image(piece: Piece, atom: Interval) -> Interval:
    lo, hi = piece(atom.lower), piece(atom.upper)
    if piece.slope > 0:
        return Interval.from_atomic(atom.left, lo, hi, atom.right)
    if piece.slope < 0:
        return Interval.from_atomic(atom.right, hi, lo, atom.left)
    return P.singleton(piece.intercept)


def _image_without_breakpoints(f: PWLMap, u: Interval) -> Interval:
    result = P.empty()
    for i, piece in enumerate(f.pieces):
        part = u & f.piece_interval(i)
        for atom in part:
            if not atom.empty:
                result |= _affine_image(piece, atom)
    return result


def image_set(f: PWLMap, u: Interval) -> Interval:
    """
    f(U) for a finite union of intervals U, with the values at breakpoints
    inside U added as degenerate intervals.

    >>> image_set(doubling(), P.open(Fraction(1, 4), Fraction(1, 2))) == P.open(Fraction(1, 2), 1)
    True
    """
    u = u & UNIT
    result = _image_without_breakpoints(f, u)
    for b, value in zip(f.breakpoints, f.values):
        if b in u:
            result |= P.singleton(value)
    return result


def hitting_check(f: PWLMap, u: Interval, v: Interval, horizon: int) -> List[int]:
    """All n <= horizon with f^n(U) meeting V"""
    u = u & UNIT
    v = v & UNIT
    if u.empty or v.empty:
        raise EmptyArgumentError("hitting checks need nonempty sets within [0, 1]")
    hits = []
    current = u
    for n in range(horizon + 1):
        if not (current & v).empty:
            hits.append(n)
        if n < horizon:
            current = image_set(f, current)
    return hits


def mesh_intervals(mesh: int) -> List[Interval]:
    """The open intervals (i/mesh, (i+1)/mesh)"""
    return [P.open(Fraction(i, mesh), Fraction(i + 1, mesh)) for i in range(mesh)]


def first_hits(
    f: PWLMap, source: Interval, targets: Sequence[Interval], horizon: int
) -> List[Optional[int]]:
    """For each target, the smallest n <= horizon with f^n(source) meeting it"""
    result: List[Optional[int]] = [None] * len(targets)
    current = source
    for n in range(horizon + 1):
        for j, target in enumerate(targets):
            if result[j] is None and not (current & target).empty:
                result[j] = n
        if all(hit is not None for hit in result) or n == horizon:
            break
        current = image_set(f, current)
    return result


def _first_hit_row(f: PWLMap, i: int, mesh: int, horizon: int) -> Tuple[int, List[Optional[int]]]:
    intervals = mesh_intervals(mesh)
    return i, first_hits(f, intervals[i], intervals, horizon)


@dataclass
class MeshCertificate:
    """
    Semi-decision evidence for TT+: for each ordered pair (i, j) of mesh
    intervals the first n <= horizon with f^n(P_i) meeting P_j. This is
    hitting on a finite family of small intervals, not the property itself.
    """

    mesh: int
    horizon: int
    table: Dict[Tuple[int, int], int] = field(default_factory=dict)
    failing: Optional[Tuple[int, int]] = None

    @property
    def certified(self) -> bool:
        return self.failing is None

    @property
    def pairs_witnessed(self) -> int:
        return len(self.table)


def certify_ttplus_on_mesh(f: PWLMap, mesh: int, horizon: int, threads: int = 1) -> MeshCertificate:
    if mesh < 2:
        raise PWLError("mesh must be at least 2")
    certificate = MeshCertificate(mesh, horizon)
    if threads > 1:
        with Pool(processes=threads) as pool:
            jobs = [pool.apply_async(_first_hit_row, (f, i, mesh, horizon)) for i in range(mesh)]
            rows = [job.get() for job in jobs]
    else:
        rows = [_first_hit_row(f, i, mesh, horizon) for i in range(mesh)]
    for i, hits in sorted(rows):
        for j, n in enumerate(hits):
            if n is None:
                if certificate.failing is None:
                    certificate.failing = (i, j)
            else:
                certificate.table[(i, j)] = n
    logger.debug(
        "Mesh %d, horizon %d: %d of %d pairs witnessed",
        mesh,
        horizon,
        certificate.pairs_witnessed,
        mesh * mesh,
    )
    return certificate


def return_times_on_mesh(f: PWLMap, mesh: int, horizon: int) -> Dict[int, List[int]]:
    """For each mesh interval P, the n in 1..horizon with f^n(P) meeting P"""
    result = {}
    for i, interval in enumerate(mesh_intervals(mesh)):
        result[i] = [n for n in hitting_check(f, interval, interval, horizon) if n > 0]
    return result


def hitting_table_tsv(certificate: MeshCertificate) -> str:
    lines = ["source\ttarget\tfirst_hit"]
    for i in range(certificate.mesh):
        for j in range(certificate.mesh):
            n = certificate.table.get((i, j))
            lines.append(f"{i}\t{j}\t{'NA' if n is None else n}")
    return "\n".join(lines) + "\n"


class QcSystemVerdict(NamedTuple):
    status: str
    iterates_checked: int
    preperiod: Optional[int] = None
    period: Optional[int] = None
    failing_iterate: Optional[int] = None
    failing_point: Optional[Fraction] = None


def is_qc_system_pwl(f: PWLMap, max_iterates: int) -> QcSystemVerdict:
    """
    Check f, f^2, ..., f^max_iterates for quasi-continuity. The verdict is
    "true" if f is continuous or the iterates repeat within the horizon,
    "false" if some iterate fails the breakpoint rule, and "unknown" if the
    horizon runs out first.
    """
    if max_iterates < 1:
        raise PWLError("max_iterates must be at least 1")
    if qc_points_pwl(f).continuous:
        return QcSystemVerdict("true", 1)
    seen: Dict[PWLMap, int] = {identity(): 0}
    g = f
    for k in range(1, max_iterates + 1):
        if g in seen:
            t = seen[g]
            return QcSystemVerdict("true", k - 1, t, k - t)
        analysis = qc_points_pwl(g)
        if not analysis.qc_everywhere:
            return QcSystemVerdict(
                "false", k, failing_iterate=k, failing_point=analysis.non_qc_points[0]
            )
        seen[g] = k
        g = compose(g, f)
    if g in seen:
        t = seen[g]
        return QcSystemVerdict("true", max_iterates, t, max_iterates + 1 - t)
    return QcSystemVerdict("unknown", max_iterates)
