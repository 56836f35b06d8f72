"""Summing digits through their exact center of mass on a refined grid.

One small step right on the ``n``-refined grid adds ``1/n``; one small step
down adds ``3/n``.  The mean of a multiset of points is therefore read
straight off its center of mass, and the sum is the mean times the count.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .grid import GridNumber, coords, encode_path
from .trace import StepTrace, TraceStep, note, path_trace


@dataclass(frozen=True, slots=True)
class RefinedBarycenter:
    mean_col: Fraction
    mean_row: Fraction
    count: int

    @property
    def value(self) -> Fraction:
        return 1 + self.mean_col + 3 * self.mean_row


def weighted(values: Iterable[int]) -> Counter:
    """Multiplicity table of a list of digits."""
    freq = Counter()
    for v in values:
        if not 0 <= v <= 9:
            raise ValueError(f"not a digit: {v}")
        freq[v] += 1
    return freq


def _totals(freq: Mapping[int, int]) -> tuple[int, int, int]:
    count = col_sum = row_sum = 0
    for d, k in freq.items():
        if k < 0:
            raise ValueError("negative multiplicity")
        if not 0 <= d <= 9:
            raise ValueError(f"not a digit: {d}")
        row, col = coords(d)
        count += k
        col_sum += k * col
        row_sum += k * row
    return count, col_sum, row_sum


def barycenter(freq: Mapping[int, int]) -> RefinedBarycenter:
    count, col_sum, row_sum = _totals(freq)
    if count == 0:
        raise ValueError("barycenter of an empty multiset")
    return RefinedBarycenter(Fraction(col_sum, count), Fraction(row_sum, count), count)


def sum_by_barycenter(freq: Mapping[int, int]) -> int:
    b = barycenter(freq)
    total = b.count * b.value
    assert total.denominator == 1
    return int(total)


def sum_of_products(pairs: Iterable[tuple[int, int]]) -> int:
    """``sum(a*b)`` as ``a`` copies of the point ``b`` each."""
    return sum_by_barycenter(product_weights(pairs))


def product_weights(pairs: Iterable[tuple[int, int]]) -> Counter:
    freq = Counter()
    for a, b in pairs:
        if not (0 <= a <= 9 and 0 <= b <= 9):
            raise ValueError(f"factors must be digits, got {a} x {b}")
        freq[b] += a
    return freq


def refine_value(col_steps: int, row_steps: int, n: int, anchor: int) -> Fraction:
    """Number at ``col_steps`` small steps right and ``row_steps`` down of ``anchor``."""
    if n < 1:
        raise ValueError("refinement must be at least 1")
    return anchor + Fraction(col_steps, n) + Fraction(3 * row_steps, n)


def _nearest(x: Fraction) -> int:
    # nearest whole line, halves going toward the middle line 1
    lo = x.numerator // x.denominator
    frac = x - lo
    if frac < Fraction(1, 2):
        return lo
    if frac > Fraction(1, 2):
        return lo + 1
    return lo if abs(lo - 1) <= abs(lo) else lo + 1


def advance_retreat(counts: tuple[int, int, int]) -> tuple[int, int, int]:
    """Pull the two ends of a three-point line together in pairs.

    ``77899999`` on the bottom line becomes ``88888999``.
    """
    a, m, c = counts
    k = min(a, c)
    return a - k, m + 2 * k, c - k


def line_counts(freq: Mapping[int, int]) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
    """Point counts per column (left, middle, right) and per row (up, middle, down).

    The zero point is left out; it sits off the 3x3 square.
    """
    cols = [0, 0, 0]
    rows = [0, 0, 0]
    for d, k in freq.items():
        if d == 0:
            continue
        row, col = coords(d)
        cols[col] += k
        rows[row] += k
    return tuple(cols), tuple(rows)


def barycenter_trace(freq: Mapping[int, int]) -> tuple[int, StepTrace]:
    """Sum with the concentration narrative attached to the trace."""
    b = barycenter(freq)
    total = sum_by_barycenter(freq)
    cols, rows = line_counts(freq)
    acol, arow = _nearest(b.mean_col), _nearest(b.mean_row)
    acol = min(max(acol, 0), 2)
    arow = min(max(arow, 0), 2)
    anchor = 1 + acol + 3 * arow
    dcol = b.mean_col - acol
    drow = b.mean_row - arow
    events = [
        note(f"columns left/middle/right: {cols[0]} {cols[1]} {cols[2]}"
             + (f" (after pairing {advance_retreat(cols)})" if cols != advance_retreat(cols) else "")),
        note(f"rows up/middle/down: {rows[0]} {rows[1]} {rows[2]}"
             + (f" (after pairing {advance_retreat(rows)})" if rows != advance_retreat(rows) else "")),
        note(f"center of mass: {anchor} moved {dcol} right and {drow} down"),
        note(f"mean {anchor} + {dcol} + 3 x {drow} = {b.value}; sum {b.count} x {b.value} = {total}"),
    ]
    if freq.get(0):
        events.insert(0, note(f"{freq[0]} point(s) at 0, left of 1"))
    trace = StepTrace(titles=["center of mass", "sum"])
    trace.steps.append(TraceStep.move("barycenter", GridNumber(0, anchor),
                                      GridNumber(0, anchor), events))
    trace.steps.extend(path_trace(encode_path(total).points, panel=1))
    return total, trace
