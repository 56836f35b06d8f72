"""Addition and subtraction as moves on the nine-palace grid."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import grid
from .grid import BORDER, CORNERS, MIDPOINTS, GridNumber, Orientation, rotate
from .trace import Event, StepTrace, TraceStep, note, path_trace

FORWARD = "forward"
BACKWARD = "backward"
STAY = "stay"


@dataclass(frozen=True, slots=True)
class SignedDigit:
    magnitude: int
    sign: int = 1

    def __post_init__(self) -> None:
        if not 0 <= self.magnitude <= 9:
            raise ValueError(f"magnitude must be a digit, got {self.magnitude}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @classmethod
    def of(cls, v: int) -> SignedDigit:
        return cls(abs(v), -1 if v < 0 else 1)

    @property
    def value(self) -> int:
        return self.sign * self.magnitude

    def __str__(self) -> str:
        return f"{'+' if self.sign > 0 else '-'}{self.magnitude}"


@dataclass(frozen=True, slots=True)
class StepRecord:
    start: GridNumber
    delta: SignedDigit
    end: GridNumber
    direction: str
    family_delta: int

    @property
    def annotation(self) -> str:
        d = self.delta
        if self.family_delta > 0:
            return f"{d}: carry, i.e. -{10 - d.magnitude} in family {self.end.family}"
        if self.family_delta < 0:
            return f"{d}: borrow, i.e. +{10 - d.magnitude} in family {self.end.family}"
        return str(d)

    def as_step(self, kind: str = "add", panel: int = 0,
                extra: Iterable[Event] = ()) -> TraceStep:
        events = []
        if self.family_delta > 0:
            events.append(Event("carry", 1))
        elif self.family_delta < 0:
            events.append(Event("borrow", 1))
        events.extend(extra)
        events.append(note(self.annotation))
        return TraceStep.move(kind, self.start, self.end, events, panel)


def step_add(state: GridNumber, d: SignedDigit) -> tuple[GridNumber, StepRecord]:
    """Move from ``state`` by the arrow of ``d``.

    ``direction`` is relative to the operation: a backward addition carries
    into the next family and a backward subtraction borrows from it.
    """
    end = GridNumber.from_int(state.value + d.value)
    family_delta = end.family - state.family
    if d.magnitude == 0:
        direction = STAY
    elif family_delta:
        direction = BACKWARD
    else:
        direction = FORWARD
    return end, StepRecord(state, d, end, direction, family_delta)


def _panel_sizes(n: int) -> list[int]:
    # at most three moves per picture; the larger pictures go in the middle
    if n == 0:
        return []
    panels = -(-n // 3)
    base, extra = divmod(n, panels)
    sizes = [base] * panels
    lo = (panels - extra) // 2
    for i in range(lo, lo + extra):
        sizes[i] += 1
    return sizes


def eval_walk(start: int, deltas: Sequence[SignedDigit],
              traced: bool = True) -> tuple[GridNumber, StepTrace]:
    """Add and subtract digit by digit, marking the family after each move.

    >>> eval_walk(0, [SignedDigit.of(v) for v in (1, -2, -9)])[0]
    GridNumber(family=-1, position=0)
    """
    state = GridNumber.from_int(start)
    trace = StepTrace()
    if not traced:
        for d in deltas:
            state, _ = step_add(state, d)
        return state, trace
    idx = 0
    for panel, size in enumerate(_panel_sizes(len(deltas))):
        chunk = deltas[idx:idx + size]
        head = str(start) if panel == 0 else "..."
        trace.titles.append(head + "".join(str(d) for d in chunk))
        for d in chunk:
            state, rec = step_add(state, d)
            trace.steps.append(rec.as_step("add", panel,
                                           [Event("family", state.family)]))
        idx += size
    return state, trace


def add_by_rotation(a: int, b: int) -> tuple[int, bool, Orientation]:
    """Units digit of ``a + b`` read as adding 1 or 2 in a turned frame.

    A corner ``b`` is read as the point 1 of the frame in which 1 turns onto
    ``b``; a midpoint ``b`` is read as 2 likewise.  Whether a carry happened
    is read off the motion: the units point moved backward.
    """
    grid._check_digit(a)
    grid._check_digit(b)
    if b in CORNERS:
        frame = Orientation(next(j for j in range(4) if rotate(1, j) == b))
        base = 1
    elif b in MIDPOINTS:
        frame = Orientation(next(j for j in range(4) if rotate(2, j) == b))
        base = 2
    else:
        return (a + b) % 10, b != 0 and (a + b) % 10 < a, Orientation(0)
    units = frame.apply((frame.unapply(a) + base) % 10)
    return units, units < a, frame


def sum_by_rotation(values: Sequence[int], traced: bool = True) -> tuple[int, int, StepTrace]:
    """Sum digits left to right, counting one carry per backward step."""
    if not values:
        raise ValueError("cannot sum an empty list")
    units = values[0]
    grid._check_digit(units)
    carries = 0
    trace = StepTrace(titles=["".join(map(str, values))])
    for b in values[1:]:
        start = GridNumber(carries, units)
        new_units, carried, frame = add_by_rotation(units, b)
        if carried:
            carries += 1
        if not traced:
            units = new_units
            continue
        end = GridNumber(carries, new_units)
        if b in CORNERS:
            how = f"+{b} is +1 {frame}"
        elif b in MIDPOINTS:
            how = f"+{b} is +2 {frame}"
        else:
            how = f"+{b} directly"
        events = [note(how)]
        if carried:
            events.insert(0, Event("carry", 1))
        trace.steps.append(TraceStep.move("rotate-add", start, end, events))
        units = new_units
    if len(values) == 1 and traced:
        trace.steps.append(TraceStep.move("rotate-add", GridNumber(0, units),
                                          GridNumber(0, units)))
    return 10 * carries + units, carries, trace


def _symmetry_plan(counts: Sequence[int], c: int,
                   limit: int | None = None) -> list[tuple[int, int]] | None:
    """Points to move onto 5 so the multiset becomes symmetric about c/2.

    ``counts[d]`` is the multiplicity of digit ``d``.  Returns the moves as
    ``(value, times)`` pairs, or None when no such plan exists or it would
    move more than ``limit`` points.
    """
    t = c - 5
    moved: list[tuple[int, int]] = []
    size = 0
    kept_self = 0
    for x in range(10):
        y = c - x
        if x == 5 or x == t or not counts[x] and not 0 <= y <= 9:
            continue
        if y == x:
            kept_self = counts[x]
            continue
        if 0 <= y <= 9:
            if x < y and y not in (5, t):
                extra = counts[x] - counts[y]
                if extra > 0:
                    moved.append((x, extra))
                elif extra < 0:
                    moved.append((y, -extra))
                size += abs(extra)
        else:
            moved.append((x, counts[x]))
            size += counts[x]
        if limit is not None and size > limit:
            return None
    if c == 10:
        # 5 pairs with itself, so anything can be parked there
        return moved
    if not 0 <= t <= 9:
        # a moved point would have no partner
        return moved if not size and counts[5] == 0 else None
    surplus = counts[t] - counts[5] - size
    if surplus < 0:
        return None
    if surplus % 2:
        if c % 2 or kept_self == 0:
            return None
        moved.append((c // 2, 1))
        surplus -= 1
    if surplus:
        moved.append((t, surplus // 2))
    return moved


def symmetrized_sum(values: Sequence[int],
                    traced: bool = True) -> tuple[int, int, list[SignedDigit], StepTrace]:
    """Sum a lattice by first making it point-symmetric.

    A few points are moved onto the center 5; the rest of the lattice is
    symmetric about some center ``c/2`` and sums to ``n*c/2``.  Each moved
    point is recorded as the arrow from 5 back to where it was.  The center
    with fewest moves wins, ties going to the one nearest the mean.
    """
    if not values:
        raise ValueError("cannot sum an empty list")
    for v in values:
        grid._check_digit(v)
    counts = [0] * 10
    for v in values:
        counts[v] += 1
    n = len(values)
    twice_mean = Fraction(2 * sum(values), n)
    best = None
    # 10 always works, so try it first and use it to cut the others short
    for c in (10, *range(10), *range(11, 19)):
        plan = _symmetry_plan(counts, c, None if best is None else best[0][0])
        if plan is None:
            continue
        key = (sum(k for _, k in plan), abs(c - twice_mean), c)
        if best is None or key < best[0]:
            best = (key, c, plan)
    assert best is not None  # c = 10 always works
    _, c, plan = best
    corrections = [SignedDigit.of(v - 5) for v, k in sorted(plan) for _ in range(k)]
    shift = sum(d.value for d in corrections)
    total = n * c // 2 + shift
    if not traced:
        return total, c, corrections, StepTrace()

    trace = StepTrace(titles=["lattice " + "".join(map(str, values)),
                              "sum " + str(total)])
    for d in corrections:
        trace.steps.append(TraceStep.move(
            "correction", GridNumber(0, 5), GridNumber(0, 5 + d.value),
            [note(f"{5 + d.value} moved to 5, arrow {d}")]))
    half = Fraction(c, 2)
    trace.steps.extend(path_trace(
        grid.encode_path(total).points, panel=1,
        events=[[note(f"{n} points about {half}, arrows {shift:+d}")]]))
    return total, c, corrections, trace


# -- long numbers ---------------------------------------------------------

def _digits(v: int) -> list[int]:
    return [int(ch) for ch in str(v)]


def add_long(x: int, y: int, panel: int = 0, traced: bool = True) -> tuple[int, StepTrace]:
    """Column-by-column sum of two nonnegative numbers, lowest column first.

    Each column starts on the point of ``x``'s digit and walks by ``y``'s
    digit and the incoming carry; the family reached is the outgoing carry.
    """
    if x < 0 or y < 0:
        raise ValueError("add_long takes nonnegative numbers")
    xs, ys = _digits(x)[::-1], _digits(y)[::-1]
    width = max(len(xs), len(ys))
    xs += [0] * (width - len(xs))
    ys += [0] * (width - len(ys))
    trace = StepTrace()
    out: list[int] = []
    carry = 0
    for i in range(width):
        state = GridNumber(0, xs[i])
        for d in (ys[i], carry):
            if d == 0:
                continue
            state, rec = step_add(state, SignedDigit(d))
            if traced:
                trace.steps.append(rec.as_step("column", panel, [Event("column", i)]))
        out.append(state.position)
        carry = state.family
    if carry:
        out.append(carry)
    total = int("".join(map(str, reversed(out))))
    return total, trace


def sub_long(x: int, y: int, panel: int = 0) -> tuple[int, StepTrace]:
    """Column-by-column difference ``x - y`` for ``x >= y >= 0``."""
    if not x >= y >= 0:
        raise ValueError("sub_long needs x >= y >= 0")
    xs, ys = _digits(x)[::-1], _digits(y)[::-1]
    ys += [0] * (len(xs) - len(ys))
    trace = StepTrace()
    out: list[int] = []
    borrow = 0
    for i in range(len(xs)):
        state = GridNumber(0, xs[i])
        for d in (ys[i], borrow):
            if d == 0:
                continue
            state, rec = step_add(state, SignedDigit(d, -1))
            trace.steps.append(rec.as_step("column", panel, [Event("column", i)]))
        out.append(state.position)
        borrow = -state.family
    assert borrow == 0
    return int("".join(map(str, reversed(out)))), trace


def add_signed(x: int, y: int) -> tuple[int, StepTrace]:
    """``x + y`` for any integers via the column walks."""
    trace = StepTrace()
    if y == 0:
        total = x
    elif (x >= 0) == (y >= 0) or x == 0:
        mag, part = add_long(abs(x), abs(y))
        trace.extend(part)
        total = mag if y > 0 else -mag
    elif abs(x) >= abs(y):
        mag, part = sub_long(abs(x), abs(y))
        trace.extend(part)
        total = mag if x > 0 else -mag
    else:
        mag, part = sub_long(abs(y), abs(x))
        trace.extend(part)
        total = mag if y > 0 else -mag
    trace.titles = [f"{x} {'+' if y >= 0 else '-'} {abs(y)}"]
    return total, trace


# -- dot matrices ---------------------------------------------------------

@dataclass(frozen=True, slots=True)
class PatternResult:
    pattern_name: str
    units: int
    carry: int

    @property
    def total(self) -> int:
        return 10 * self.carry + self.units


OPPOSITE = "opposite-pair"
CORNER_MID = "corner-middle-corner"
MID_CORNER = "middle-corner-center"
MID_MID = "middle-middle-middle"
EDGE = "edge-triple"
PERM3 = "permutation-triple"
PERM6 = "permutation-sextet"
SEVEN = "1234-type"
BORDER8 = "border-octet"

PATTERNS = (OPPOSITE, CORNER_MID, MID_CORNER, MID_MID, EDGE, PERM3, PERM6, SEVEN, BORDER8)

# carry of an edge triple, keyed by its midpoint
EDGE_CARRY = {2: 0, 4: 1, 6: 1, 8: 2}
# carry of a "7"-shaped quadruple, keyed by its turning corner
SEVEN_CARRY = {1: 1, 3: 2, 9: 3, 7: 2}


def _cw(p: int, steps: int = 1) -> int:
    return BORDER[(BORDER.index(p) + steps) % 8]


def _is_permutation(points: Iterable[int]) -> bool:
    pts = list(points)
    rows = {grid.coords(p)[0] for p in pts}
    cols = {grid.coords(p)[1] for p in pts}
    return 0 not in pts and len(rows) == len(cols) == len(pts)


def match_dot_pattern(values: Iterable[int]) -> PatternResult | None:
    """Recognise one of the memorised dot matrices and read off its sum.

    Units and carry come from the geometric rule of the pattern, never from
    adding the values up.
    """
    pts = sorted(values)
    for p in pts:
        if not 1 <= p <= 9:
            raise ValueError(f"dot matrices use points 1..9, got {p}")
    ms = Counter(pts)
    n = len(pts)
    if n == 2:
        a, b = pts
        if a + b == 10:
            return PatternResult(OPPOSITE, 0, 1)
        for first, second in ((a, b), (b, a)):
            if first not in BORDER or second != _cw(first):
                continue
            if first in CORNERS:
                units = _cw(first, 2)
                return PatternResult(CORNER_MID, units, int(units < first))
            if first in MIDPOINTS and second in CORNERS:
                return PatternResult(MID_CORNER, 5, int(5 < first))
        for first, second in ((a, b), (b, a)):
            if first in MIDPOINTS and second == rotate(first, 1):
                units = rotate(first, 2)
                return PatternResult(MID_MID, units, int(units < first))
        return None
    if len(ms) != n:
        return None
    if n == 3:
        for m in MIDPOINTS:
            if set(pts) == {_cw(m, -1), m, _cw(m)}:
                return PatternResult(EDGE, rotate(m, 1), EDGE_CARRY[m])
        if _is_permutation(pts):
            return PatternResult(PERM3, 5, 1)
        return None
    if n == 4:
        for c in CORNERS:
            if set(pts) == {_cw(c, -1), c, _cw(c), _cw(c, 2)}:
                return PatternResult(SEVEN, 0, SEVEN_CARRY[c])
        return None
    if n == 6:
        rest = set(range(1, 10)) - set(pts)
        if _is_permutation(rest):
            return PatternResult(PERM6, 0, 3)
        return None
    if n == 8 and set(pts) == set(BORDER):
        return PatternResult(BORDER8, 0, 4)
    return None
