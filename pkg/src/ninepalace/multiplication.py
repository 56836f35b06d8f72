"""The counting method: multiples, carry points, and long x one-digit products.

The units digit of ``k*b`` is the point reached when counting ``k`` in the
frame set by ``b``; the carry is the number of backward moves made on the
way, which is what the carry diagram of ``b`` records.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .addition import SignedDigit, add_long, step_add
from .grid import CORNERS, MIDPOINTS, GridNumber, Orientation, encode_path, rotate
from .trace import Event, StepTrace, TraceStep, note, path_trace


@dataclass(frozen=True, slots=True)
class DigitSequence:
    """A signed integer as its decimal digits, most significant first."""

    sign: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if not self.digits:
            raise ValueError("a number needs at least one digit")
        if any(not 0 <= d <= 9 for d in self.digits):
            raise ValueError("digits must be in 0..9")
        if len(self.digits) > 1 and self.digits[0] == 0:
            raise ValueError("leading zero")

    @classmethod
    def from_int(cls, v: int) -> DigitSequence:
        return cls(-1 if v < 0 else 1, tuple(int(c) for c in str(abs(v))))

    @classmethod
    def from_digits(cls, digits: Sequence[int], sign: int = 1) -> DigitSequence:
        """Build from digits that may carry leading zeros."""
        ds = list(digits)
        while len(ds) > 1 and ds[0] == 0:
            ds.pop(0)
        return cls(sign, tuple(ds or [0]))

    def __int__(self) -> int:
        v = 0
        for d in self.digits:
            v = 10 * v + d
        return self.sign * v if v else 0

    def __len__(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        return ("-" if self.sign < 0 and int(self) else "") + "".join(map(str, self.digits))


def _check(b: int, k: int) -> None:
    if not (0 <= b <= 9 and 0 <= k <= 9):
        raise ValueError(f"counting works on digits, got {b} and {k}")


def _turned_frame(b: int) -> Orientation:
    if b in CORNERS:
        return Orientation(next(j for j in range(4) if rotate(1, j) == b))
    if b in MIDPOINTS:
        return Orientation(next(j for j in range(4) if rotate(2, j) == b))
    return Orientation(0)


_FRAMES = tuple(_turned_frame(b) for b in range(10))


def frame_for(b: int) -> Orientation:
    """The frame to face when counting multiples of ``b``.

    Corners count facing the point 1 turns onto; midpoints face themselves.
    """
    _check(b, 0)
    return _FRAMES[b]


def count_point(b: int, k: int) -> tuple[int, int]:
    """Point reached when counting ``k`` for multiplier ``b``, with its lap.

    Corner: the point labelled ``k`` in the turned frame.  Midpoint: the
    slanted midpoint square, front-left-right-back, twice round with 5 at
    zero.  Center: corners fall on 5 and midpoints back to 0.  The lap is 2
    only on the second trip round the midpoint square.
    """
    _check(b, k)
    if k == 0 or b == 0:
        return 0, 0
    if b in CORNERS:
        return frame_for(b).apply(k), 0
    if b in MIDPOINTS:
        if k == 5:
            return 0, 0
        square = [frame_for(b).apply(m) for m in (2, 4, 6, 8)]  # front, left, right, back
        return square[k % 5 - 1], 1 if k < 5 else 2
    return (5 if k % 2 else 0), 0


def count_walk(b: int, k: int, panel: int = 0) -> tuple[GridNumber, StepTrace]:
    """Count ``k`` for multiplier ``b`` as ``k`` successive moves of ``+b``.

    Each move must land on the counted point; backward moves are carries.
    """
    _check(b, k)
    state = GridNumber(0, 0)
    trace = StepTrace(titles=[f"{k} x {b}"])
    frame = frame_for(b)
    for j in range(1, k + 1):
        state, rec = step_add(state, SignedDigit(b))
        point, lap = count_point(b, j)
        assert point == state.position, (b, j)
        events = [note(f"count {j} facing {frame.name}")]
        if lap:
            events.append(Event("lap", lap))
        trace.steps.append(rec.as_step("count", panel, events))
    return state, trace


# Memorised tables: what the counting walk gives for every digit pair.
_UNITS = [[0] * 10 for _ in range(10)]
_CARRY = [[0] * 10 for _ in range(10)]
for _b in range(10):
    for _k in range(10):
        _end, _ = count_walk(_b, _k)
        _UNITS[_b][_k] = _end.position
        _CARRY[_b][_k] = _end.family
del _b, _k, _end


def units_of_multiple(b: int, k: int) -> int:
    _check(b, k)
    return _UNITS[b][k]


def carry_of_multiple(b: int, k: int) -> int:
    """Backward moves met while counting ``k`` multiples of ``b``."""
    _check(b, k)
    return _CARRY[b][k]


def carry_points_met(b: int, k: int) -> list[int]:
    """The carry points passed on the way to ``k``, in counting order."""
    _check(b, k)
    return [_UNITS[b][j] for j in range(1, k + 1) if _UNITS[b][j] < b]


@dataclass(frozen=True, slots=True)
class CarryDiagram:
    """Black points of the simplified carry diagram of ``multiplier``.

    ``carry_points`` are the units points where a count adds a carry, with
    multiplicity.  ``carry_counts`` are the counts ``k`` at which that
    happens; for 5 these are the four midpoints, as when counting facing 1.
    """

    multiplier: int
    carry_points: tuple[int, ...]
    carry_counts: tuple[int, ...]


def carry_diagram(b: int) -> CarryDiagram:
    if not 1 <= b <= 9:
        raise ValueError("carry diagrams exist for multipliers 1..9")
    counts = tuple(k for k in range(1, 10) if _CARRY[b][k] > _CARRY[b][k - 1])
    points = tuple(sorted(_UNITS[b][k] for k in counts))
    return CarryDiagram(b, points, counts)


def units_sequence(a: DigitSequence, b: int) -> tuple[int, ...]:
    """``0, g_1, ..., g_n`` with ``g_i`` the units digit of ``a_i * b``."""
    return (0,) + tuple(units_of_multiple(b, ai) for ai in a.digits)


def carry_sequence(a: DigitSequence, b: int) -> tuple[int, ...]:
    """``J_1, ..., J_n, 0`` with ``J_i`` the carry of ``a_i * b``."""
    return tuple(carry_of_multiple(b, ai) for ai in a.digits) + (0,)


def bit_products(a: DigitSequence, b: int) -> tuple[int, ...]:
    """``p_i = g_i + J_{i+1}`` before any secondary carry."""
    return tuple(g + j for g, j in zip(units_sequence(a, b), carry_sequence(a, b)))


def _seq_value(ds: Sequence[int]) -> int:
    v = 0
    for d in ds:
        v = 10 * v + d
    return v


def mul_long_by_digit(a: DigitSequence, b: int,
                      traced: bool = True) -> tuple[DigitSequence, StepTrace]:
    """Long number times a digit as units sequence plus carry sequence.

    The two sequences are read by counting in ``b``'s frame and then added
    column by column on the primitive grid.
    """
    if not 0 <= b <= 9:
        raise ValueError("multiplier must be a single digit")
    g = units_sequence(a, b)
    j = carry_sequence(a, b)
    if not traced:
        total, _ = add_long(_seq_value(g), _seq_value(j), traced=False)
        return DigitSequence.from_int(a.sign * total), StepTrace()
    frame = frame_for(b)
    trace = StepTrace(titles=["units digit sequence", "carry sequence", "product"])

    unit_events = [[note(f"0 x {b}")]]
    carry_events = []
    for ai in a.digits:
        lap = count_point(b, ai)[1]
        ev = [note(f"count {ai} facing {frame.name}: {ai} x {b} -> {units_of_multiple(b, ai)}")]
        if lap:
            ev.append(Event("lap", lap))
        unit_events.append(ev)
        met = carry_points_met(b, ai)
        carry_events.append([note(f"{ai} x {b}: {len(met)} backward move(s) at {met}")])
    carry_events.append([note("no back carry past the last digit")])
    trace.steps += path_trace([GridNumber(0, d) for d in g], panel=0, events=unit_events)
    trace.steps += path_trace([GridNumber(0, d) for d in j], panel=1, events=carry_events)

    total, walk = add_long(_seq_value(g), _seq_value(j), panel=2)
    trace.steps += walk.steps
    product = DigitSequence.from_int(a.sign * total)
    trace.steps += path_trace(encode_path(int(product)).points, panel=2)
    return product, trace


def mul_long(a: int, b: int) -> tuple[int, StepTrace]:
    """Many-digit product as shifted long x digit products added up."""
    trace = StepTrace()
    sign = -1 if (a < 0) != (b < 0) else 1
    acc = 0
    for shift, bd in enumerate(reversed(str(abs(b)))):
        part, t = mul_long_by_digit(DigitSequence.from_int(abs(a)), int(bd))
        t.titles = [f"{title} ({abs(a)} x {bd}{'0' * shift})" for title in t.titles]
        trace.extend(t)
        acc, t = add_long(acc, int(part) * 10 ** shift)
        t.titles = [f"running total {acc}"]
        trace.extend(t)
    result = sign * acc
    tail = StepTrace(path_trace(encode_path(result).points), ["product"])
    trace.extend(tail)
    return result, trace
