"""
Plain-text and JSON formats for spaces, systems and PWL maps.

Space: line 1 is n, then n lines; line x lists the members of min_nbhd[x].
System: a space block followed by one line with the n images f(0) .. f(n-1).
PWL map: m, then the m+1 breakpoints as p/q, then m lines "slope intercept",
then the m+1 breakpoint values. Numbers of a PWL block may be spread over
lines arbitrarily.

Empty lines and lines starting with "#" are ignored everywhere.
"""
import json
from contextlib import nullcontext
from pathlib import Path
from typing import IO, Any, Dict, Iterator, List, Optional, Tuple, Union

from xopen import xopen

from .bitset import iter_members
from .dynamics import System
from .interval import PWLError, PWLMap, rational
from .maps import MapError, build_map
from .topology import FiniteSpace, SpaceError, build_space


class ParseError(Exception):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        location = ""
        if line is not None:
            location = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(location + message)


Token = Tuple[str, int, int]


def _content_lines(file: IO) -> Iterator[Tuple[int, List[Token]]]:
    """Yield (line number, tokens) of non-comment lines; tokens carry their 1-based column"""
    for line_number, line in enumerate(file, 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = []
        column = 0
        for field in line.split():
            column = line.index(field, column)
            tokens.append((field, line_number, column + 1))
            column += len(field)
        yield line_number, tokens


def _int(token: Token) -> int:
    text, line, column = token
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"expected an integer, found {text!r}", line, column) from None


def _open(source: Union[str, Path, IO]):
    if isinstance(source, (str, Path)):
        return xopen(source)
    return nullcontext(source)


def _parse_space_block(lines: Iterator[Tuple[int, List[Token]]]) -> FiniteSpace:
    try:
        line_number, tokens = next(lines)
    except StopIteration:
        raise ParseError("empty input, expected the number of points") from None
    if len(tokens) != 1:
        raise ParseError("first line must contain only the number of points", line_number, 1)
    n = _int(tokens[0])
    if n < 1:
        raise ParseError("a space needs at least one point", line_number, 1)
    nbhds = []
    last_line = line_number
    for x in range(n):
        try:
            last_line, tokens = next(lines)
        except StopIteration:
            raise ParseError(
                f"expected {n} neighbourhood lines, found {x}", last_line + 1, 1
            ) from None
        points = []
        for token in tokens:
            y = _int(token)
            if not 0 <= y < n:
                raise ParseError(f"point {y} is outside 0..{n - 1}", token[1], token[2])
            points.append(y)
        nbhds.append(points)
    try:
        return build_space(nbhds)
    except SpaceError as e:
        raise ParseError(str(e), last_line) from e


def read_space(source: Union[str, Path, IO]) -> FiniteSpace:
    with _open(source) as file:
        lines = _content_lines(file)
        space = _parse_space_block(lines)
        _expect_end(lines)
    return space


def read_system(source: Union[str, Path, IO]) -> System:
    with _open(source) as file:
        lines = _content_lines(file)
        space = _parse_space_block(lines)
        try:
            line_number, tokens = next(lines)
        except StopIteration:
            raise ParseError("missing map line after the space block") from None
        try:
            f = build_map([_int(t) for t in tokens], space.n)
        except MapError as e:
            raise ParseError(str(e), line_number) from e
        _expect_end(lines)
    return System(space, f)


def _expect_end(lines: Iterator[Tuple[int, List[Token]]]) -> None:
    for line_number, tokens in lines:
        raise ParseError("unexpected trailing content", line_number, tokens[0][2])


def read_pwl(source: Union[str, Path, IO]) -> PWLMap:
    with _open(source) as file:
        tokens = [token for _, line_tokens in _content_lines(file) for token in line_tokens]
    if not tokens:
        raise ParseError("empty input, expected the number of pieces")
    m = _int(tokens[0])
    if m < 1:
        raise ParseError("a PWL map needs at least one piece", tokens[0][1], tokens[0][2])
    expected = 1 + (m + 1) + 2 * m + (m + 1)
    if len(tokens) != expected:
        last = tokens[-1]
        raise ParseError(f"expected {expected} numbers, found {len(tokens)}", last[1], last[2])
    numbers = []
    for token in tokens[1:]:
        try:
            numbers.append(rational(token[0]))
        except PWLError as e:
            raise ParseError(str(e), token[1], token[2]) from None
    breakpoints = numbers[: m + 1]
    flat = numbers[m + 1 : 3 * m + 1]
    pieces = list(zip(flat[0::2], flat[1::2]))
    values = numbers[3 * m + 1 :]
    try:
        return PWLMap(breakpoints, pieces, values)
    except PWLError as e:
        raise ParseError(str(e)) from e


def format_space(space: FiniteSpace) -> str:
    lines = [str(space.n)]
    for nbhd in space.min_nbhd:
        lines.append(" ".join(str(y) for y in iter_members(nbhd)))
    return "\n".join(lines) + "\n"


def format_system(system: System) -> str:
    return format_space(system.space) + " ".join(str(y) for y in system.f) + "\n"


def format_pwl(f: PWLMap) -> str:
    lines = [str(f.m), " ".join(str(b) for b in f.breakpoints)]
    lines.extend(f"{piece.slope} {piece.intercept}" for piece in f.pieces)
    lines.append(" ".join(str(v) for v in f.values))
    return "\n".join(lines) + "\n"


def space_to_json(space: FiniteSpace) -> Dict[str, Any]:
    return {"n": space.n, "min_nbhd": [list(iter_members(m)) for m in space.min_nbhd]}


def system_to_json(system: System) -> Dict[str, Any]:
    return {"space": space_to_json(system.space), "map": {"image": list(system.f)}}


def system_from_json(data: Dict[str, Any]) -> System:
    try:
        space = build_space(data["space"]["min_nbhd"])
        if data["space"].get("n", space.n) != space.n:
            raise ParseError("field n does not match the number of neighbourhoods")
        return System(space, build_map(data["map"]["image"], space.n))
    except (KeyError, TypeError) as e:
        raise ParseError(f"malformed system JSON: {e}") from e
    except (SpaceError, MapError) as e:
        raise ParseError(str(e)) from e


def write_json(data: Any, path: Union[str, Path]) -> None:
    with xopen(path, "w") as f:
        json.dump(data, f, indent=2, sort_keys=False)
        print(file=f)
