"""Division by a single digit with the counting method."""
from __future__ import annotations

from dataclasses import dataclass

from .addition import SignedDigit, step_add
from .grid import GridNumber
from .multiplication import (
    DigitSequence, carry_of_multiple, frame_for, units_of_multiple,
)
from .trace import Event, StepTrace, note, path_trace

EXACT_DIVISORS = (1, 3, 7, 9)


class NotDivisibleError(ArithmeticError):
    """The exact method met a digit it cannot clear."""

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


@dataclass(slots=True)
class DivisionState:
    remaining: DigitSequence
    quotient_digits: list[int]
    temp_remainder: int


def _hits(b: int, g: int) -> list[int]:
    return [q for q in range(10) if units_of_multiple(b, q) == g]


# counts that land on each point, for every divisor
_REVERSE = [[_hits(b, g) for g in range(10)] for b in range(10)]


def reverse_count(b: int, g: int) -> int:
    """The count ``q`` at which multiples of ``b`` reach the point ``g``.

    Only unique for divisors prime to 10.
    """
    hits = _REVERSE[b][g]
    if len(hits) != 1:
        raise ValueError(f"point {g} is reached {len(hits)} times counting by {b}")
    return hits[0]


def _pick(b: int, x: int, y: int) -> tuple[int, bool]:
    q = next((c for c in range(9, -1, -1)
              if carry_of_multiple(b, c) == x and units_of_multiple(b, c) <= y), None)
    if q is not None:
        return q, False
    return next(c for c in range(9, -1, -1) if carry_of_multiple(b, c) == x - 1), True


# quotient point choice for every divisor, temporary remainder and next digit
_PICKS = {(b, x, y): _pick(b, x, y) for b in range(1, 10) for x in range(b) for y in range(10)}


def quotient_point(b: int, x: int, y: int) -> tuple[int, bool]:
    """Count ``q`` for the pair ``XY`` and whether the one-fewer fallback was used."""
    return _PICKS[b, x, y]


def div_exact_low_to_high(p: DigitSequence, b: int,
                          traced: bool = True) -> tuple[DigitSequence, StepTrace]:
    """Exact quotient, recovered from the lowest digit upward.

    Working from the last bit product, each units digit of the quotient's
    product is the bit product minus the back carry, borrowing from the
    next bit up when that goes negative.  Counting backward in ``b``'s frame
    turns each units digit into a quotient digit.
    """
    if b not in EXACT_DIVISORS:
        raise ValueError(
            f"the exact method needs a divisor in {EXACT_DIVISORS}, got {b}: "
            "multiples of an even digit or 5 share points")
    if p.sign < 0:
        raise ValueError("dividend must be nonnegative")
    bits = [0] + list(p.digits)  # p_0 .. p_n, with p_0 = 0 above the top digit
    n = len(bits) - 1
    frame = frame_for(b)
    trace = StepTrace(titles=["dividend", "units digit sequence", "quotient"] if traced else [])
    if traced:
        trace.steps += path_trace([GridNumber(0, d) for d in p.digits], panel=0)

    units = [0] * (n + 1)
    quotient = [0] * (n + 1)
    back_carry = 0
    for i in range(n, 0, -1):
        start = GridNumber.from_int(bits[i])
        borrowed = bits[i] - back_carry < 0
        if borrowed:
            bits[i - 1] -= 1
            bits[i] += 10
            start = GridNumber.from_int(bits[i])
        end, rec = step_add(start, SignedDigit(back_carry, -1))
        g = end.value
        assert 0 <= g <= 9
        units[i] = g
        q = reverse_count(b, g)
        quotient[i] = q
        incoming, back_carry = back_carry, carry_of_multiple(b, q)
        if not traced:
            continue
        extra = [Event("bit", i), note(f"g{i} = p{i} - J{i + 1} = {bits[i]} - {incoming} = {g}")]
        if borrowed:
            extra.insert(0, Event("borrow", 1))
        trace.steps.append(rec.as_step("back-carry", 1, extra))
    if bits[0] < 0:
        raise NotDivisibleError(f"{p} is not a multiple of {b}: borrow past the top digit", 0)
    if bits[0] - back_carry != 0:
        raise NotDivisibleError(
            f"{p} is not a multiple of {b}: g0 = {bits[0]} - {back_carry} is not 0", 0)

    if not traced:
        return DigitSequence.from_digits(quotient[1:]), trace
    # read the units sequence facing b; leading zeros kept in the trace
    read = [[note(f"{units[i]} read facing {frame.name} is {quotient[i]}")]
            for i in range(1, n + 1)]
    trace.steps += path_trace([GridNumber(0, q) for q in quotient[1:]], panel=2, events=read)
    return DigitSequence.from_digits(quotient[1:]), trace


def div_general(p: DigitSequence, b: int,
                traced: bool = True) -> tuple[DigitSequence, int, StepTrace]:
    """Quotient and remainder, working from the top digit down.

    At each pair ``XY`` (temporary remainder, next digit) the quotient point
    is the count whose backward moves equal ``X`` and whose point is as far
    along as possible without passing ``Y``.  If no count fits, one fewer
    backward move is allowed and ten is added back after subtracting.
    """
    if b == 0:
        raise ZeroDivisionError("division by zero")
    if not 1 <= b <= 9:
        raise ValueError("divisor must be a single digit")
    if p.sign < 0:
        raise ValueError("dividend must be nonnegative")
    digits = list(p.digits)
    if digits[0] >= b:
        digits.insert(0, 0)
    frame = frame_for(b)
    trace = StepTrace(titles=["dividend", "quotient points", "quotient"] if traced else [])
    if traced:
        trace.steps += path_trace([GridNumber(0, d) for d in p.digits], panel=0)

    state = DivisionState(DigitSequence.from_digits(digits), [], digits[0])
    for idx, y in enumerate(digits[1:], start=1):
        x = state.temp_remainder
        q, fallback = quotient_point(b, x, y)
        point = units_of_multiple(b, q)
        end, rec = step_add(GridNumber(0, y), SignedDigit(point, -1))
        r = end.position
        if not 0 <= r < b:
            raise AssertionError(f"temporary remainder {r} out of range for {b}")
        state.quotient_digits.append(q)
        state.temp_remainder = r
        if not traced:
            continue
        state.remaining = DigitSequence.from_digits([r] + digits[idx + 1:])
        extra = [
            note(f"XY = {x}{y}: quotient point {point} (count {q} facing {frame.name}), "
                 f"{carry_of_multiple(b, q)} backward move(s)"),
            note(f"temporary remainder {y} - {point}{' + 10' if fallback else ''} = {r}"),
        ]
        trace.steps.append(rec.as_step("quotient-point", 1, extra))

    qdigits = state.quotient_digits or [0]
    if not traced:
        return DigitSequence.from_digits(qdigits), state.temp_remainder, trace
    read = [[note(f"quotient point {units_of_multiple(b, q)} read facing {frame.name} is {q}")]
            for q in qdigits]
    read[-1].append(Event("remainder", state.temp_remainder))
    trace.steps += path_trace([GridNumber(0, q) for q in qdigits], panel=2, events=read)
    return DigitSequence.from_digits(qdigits), state.temp_remainder, trace
