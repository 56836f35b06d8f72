"""Positional encoding of integers on the nine-palace grid.

Cells 1..9 are laid out in keypad order::

        0   1   2   3
            4   5   6
            7   8   9   10

Position 0 sits one space left of 1 and position 10 one space right of 9.
A number ``10*k + n`` is the point ``n`` of the ``k``-family diagram.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

DIGITS = range(10)
CORNERS = (1, 3, 9, 7)  # clockwise from top-left
MIDPOINTS = (2, 6, 8, 4)  # clockwise from top
CENTER = 5
# clockwise walk around the border square, starting at the top-left corner
BORDER = (1, 2, 3, 6, 9, 8, 7, 4)


class PointClass(enum.Enum):
    CORNER = "corner"
    MIDPOINT = "midpoint"
    CENTER = "center"
    ZERO = "zero"
    TEN = "ten"


def _check_position(index: int) -> None:
    if not 0 <= index <= 10:
        raise ValueError(f"position must be in 0..10, got {index}")


def _check_digit(d: int) -> None:
    if not 0 <= d <= 9:
        raise ValueError(f"digit must be in 0..9, got {d}")


def coords(index: int) -> tuple[int, int]:
    """Return ``(row, col)`` of a position; 0 is at (0, -1) and 10 at (2, 3)."""
    _check_position(index)
    return _COORDS[index]


_COORDS = ((0, -1),) + tuple(divmod(i, 3) for i in range(9)) + ((2, 3),)


def position_at(row: int, col: int) -> int:
    """Inverse of :func:`coords`."""
    if (row, col) == (0, -1):
        return 0
    if (row, col) == (2, 3):
        return 10
    if not (0 <= row <= 2 and 0 <= col <= 2):
        raise ValueError(f"no grid point at row={row}, col={col}")
    return 1 + col + 3 * row


def classify(index: int) -> PointClass:
    _check_position(index)
    if index == 0:
        return PointClass.ZERO
    if index == 10:
        return PointClass.TEN
    if index == CENTER:
        return PointClass.CENTER
    if index in CORNERS:
        return PointClass.CORNER
    return PointClass.MIDPOINT


@dataclass(frozen=True, order=True, slots=True)
class GridNumber:
    """An integer read as point ``position`` of the ``family`` diagram."""

    family: int
    position: int

    def __post_init__(self) -> None:
        _check_digit(self.position)

    @classmethod
    def from_int(cls, value: int) -> GridNumber:
        family, position = divmod(value, 10)
        return cls(family, position)

    @property
    def value(self) -> int:
        return 10 * self.family + self.position

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return f"({self.family},{self.position})"


def value_of(g: GridNumber) -> int:
    return g.value


def negative_reading(g: GridNumber) -> tuple[GridNumber, int]:
    """Read a negative-family point as ``-(−k−1, 10−n)``.

    (-3, 3) is -27, i.e. the positive reading (2, 7) with sign -1.
    """
    if g.family >= 0:
        raise ValueError("negative reading needs a negative family")
    if g.position == 0:
        raise ValueError("position 0 has no complement reading; use value_of")
    return GridNumber(-g.family - 1, 10 - g.position), -1


@dataclass(frozen=True, slots=True)
class Orientation:
    """A frame turned ``quarter_turns`` x 90 degrees clockwise about 5."""

    quarter_turns: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.quarter_turns <= 3:
            raise ValueError("quarter_turns must be in 0..3")

    @property
    def facing(self) -> int:
        """The midpoint straight ahead of someone standing on 5."""
        return rotate(2, self.quarter_turns)

    @property
    def name(self) -> str:
        return {2: "up", 6: "right", 8: "down", 4: "left"}[self.facing]

    def apply(self, d: int) -> int:
        return rotate(d, self.quarter_turns)

    def unapply(self, d: int) -> int:
        return rotate(d, -self.quarter_turns % 4)

    def __str__(self) -> str:
        return f"facing {self.name}"


def rotate(d: int, j: int) -> int:
    """Digit reached by turning the grid ``j`` quarter turns clockwise.

    Algebraically one clockwise quarter turn multiplies by 3 modulo 10; the
    exhaustive check against the coordinate rotation lives in the tests.
    """
    _check_digit(d)
    return d * _TURNS[j % 4] % 10


_TURNS = (1, 3, 9, 7)


def rotate_coords(row: int, col: int) -> tuple[int, int]:
    """Clockwise quarter turn of grid coordinates about the center cell."""
    return col, 2 - row


def complement(d: int) -> int:
    if not 1 <= d <= 9:
        raise ValueError(f"complement is defined for digits 1..9, got {d}")
    return 10 - d


@dataclass(frozen=True, slots=True)
class NumberPath:
    """A long number drawn as a sequence of points, most significant first.

    Positive digits ``d`` sit at ``(0, d)``.  For negative numbers each
    nonzero digit sits at ``(-1, 10 - d)`` in the -1 family; a zero digit is
    the point ``(0, 0)`` and only carries the -1 family tag when drawn.
    """

    sign: int
    points: tuple[GridNumber, ...]

    @property
    def family_tags(self) -> tuple[int, ...]:
        tag = 0 if self.sign > 0 else -1
        return (tag,) * len(self.points)

    @property
    def digits(self) -> tuple[int, ...]:
        return tuple(abs(p.value) for p in self.points)


def encode_path(v: int) -> NumberPath:
    sign = -1 if v < 0 else 1
    points = []
    for ch in str(abs(v)):
        d = int(ch)
        if sign < 0 and d:
            points.append(GridNumber(-1, 10 - d))
        else:
            points.append(GridNumber(0, d))
    return NumberPath(sign, tuple(points))


def decode_path(path: NumberPath) -> int:
    magnitude = 0
    for d in path.digits:
        magnitude = 10 * magnitude + d
    return path.sign * magnitude
