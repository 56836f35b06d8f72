import itertools
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from ninepalace import addition
from ninepalace.addition import (
    BACKWARD, FORWARD, STAY, SignedDigit, add_by_rotation, add_long, add_signed,
    eval_walk, match_dot_pattern, step_add, sub_long, sum_by_rotation, symmetrized_sum,
)
from ninepalace.grid import GridNumber, Orientation
from ninepalace.trace import readout, replay_ok

digits = st.integers(min_value=0, max_value=9)
signed = st.integers(min_value=-9, max_value=9)

WALK = (1, -2, -9, -8, -7, -6, 8, -3, 5, -6)


def walk(values, start=0):
    return eval_walk(start, [SignedDigit.of(v) for v in values])


def test_signed_digit():
    assert SignedDigit.of(-7) == SignedDigit(7, -1)
    assert SignedDigit.of(-7).value == -7
    assert str(SignedDigit(3)) == "+3"
    with pytest.raises(ValueError):
        SignedDigit(10)
    with pytest.raises(ValueError):
        SignedDigit(1, 0)


@pytest.mark.parametrize("start, d, end, direction, fd", [
    ((0, 7), 1, (0, 8), FORWARD, 0),
    ((0, 3), 1, (0, 4), FORWARD, 0),
    ((0, 8), 9, (1, 7), BACKWARD, 1),
    ((0, 1), -2, (-1, 9), BACKWARD, -1),
    ((0, 4), -3, (0, 1), FORWARD, 0),
    ((0, 4), 0, (0, 4), STAY, 0),
])
def test_step_add(start, d, end, direction, fd):
    got, rec = step_add(GridNumber(*start), SignedDigit.of(d))
    assert got == GridNumber(*end)
    assert rec.direction == direction
    assert rec.family_delta == fd


@given(st.integers(min_value=-10**6, max_value=10**6), signed)
def test_step_add_direction_law(v, d):
    start = GridNumber.from_int(v)
    end, rec = step_add(start, SignedDigit.of(d))
    assert end.value == v + d
    if d > 0:
        assert (rec.direction == BACKWARD) == (end.position < start.position)
        assert rec.family_delta == (1 if rec.direction == BACKWARD else 0)
    elif d < 0:
        assert (rec.direction == BACKWARD) == (end.position > start.position)
        assert rec.family_delta == (-1 if rec.direction == BACKWARD else 0)


@given(st.integers(min_value=-1000, max_value=1000), signed, signed)
def test_triangle_rule(v, m, n):
    a, _ = step_add(GridNumber.from_int(v), SignedDigit.of(m))
    b, _ = step_add(a, SignedDigit.of(n))
    assert b.value == v + m + n


def test_complement_aided_steps():
    for a, d in itertools.product(range(1, 10), range(1, 10)):
        up, _ = step_add(GridNumber(0, a), SignedDigit(d))
        alt, _ = step_add(GridNumber(1, a), SignedDigit(10 - d, -1))
        assert up == alt


def test_walk_example():
    end, trace = walk(WALK)
    assert end == GridNumber(-3, 3)
    assert end.value == -27
    assert trace.panel_count == 4
    assert trace.titles == ["0+1-2", "...-9-8-7", "...-6+8-3", "...+5-6"]
    assert [s.end.family for s in trace.steps] == [0, -1, -1, -2, -3, -4, -3, -3, -3, -3]
    assert replay_ok(trace)
    assert readout(trace) == -27


def test_walk_trivial_and_derived():
    assert walk([])[0] == GridNumber(0, 0)
    assert walk([9, 9, 9])[0] == GridNumber(2, 7)


@given(st.integers(min_value=-10**9, max_value=10**9), st.lists(signed, max_size=30))
def test_walk_matches_sum(start, ds):
    end, trace = walk(ds, start)
    assert end.value == start + sum(ds)
    assert len(trace.steps) == len(ds)
    assert all(len(trace.panel(i)) <= 3 for i in range(trace.panel_count))
    assert replay_ok(trace)


@pytest.mark.parametrize("n, sizes", [(0, []), (1, [1]), (3, [3]), (4, [2, 2]),
                                      (7, [2, 3, 2]), (10, [2, 3, 3, 2])])
def test_panel_sizes(n, sizes):
    assert addition._panel_sizes(n) == sizes


def test_add_by_rotation_examples():
    units, carried, frame = add_by_rotation(6, 3)
    assert (units, carried) == (9, False)
    assert frame == Orientation(1) and frame.name == "right"
    assert add_by_rotation(4, 0) == (4, False, Orientation(0))
    assert add_by_rotation(8, 9)[:2] == (7, True)


def test_add_by_rotation_exhaustive():
    for a, b in itertools.product(range(10), range(10)):
        units, carried, frame = add_by_rotation(a, b)
        assert units == (a + b) % 10
        assert carried == (a + b >= 10)
        if b in (1, 3, 7, 9):
            assert frame.apply(1) == b
        elif b in (2, 4, 6, 8):
            assert frame.apply(2) == b
        else:
            assert frame == Orientation(0)


def test_sum_by_rotation():
    total, carries, trace = sum_by_rotation([5, 3, 9, 4, 8])
    assert (total, carries) == (29, 2)
    assert sum(1 for s in trace.steps for e in s.events if e.type == "carry") == 2
    assert replay_ok(trace)
    assert sum_by_rotation([5])[:2] == (5, 0)
    assert sum_by_rotation([9, 9, 9, 9])[:2] == (36, 3)
    with pytest.raises(ValueError):
        sum_by_rotation([])


@given(st.lists(digits, min_size=1, max_size=40))
def test_sum_by_rotation_property(vs):
    total, carries, trace = sum_by_rotation(vs)
    assert total == sum(vs)
    assert carries == sum(vs) // 10
    assert replay_ok(trace)


def test_symmetrized_example():
    total, c2, corr, trace = symmetrized_sum([8, 3, 4, 4, 9, 6, 8, 7, 9, 1])
    assert (total, c2) == (59, 13)
    assert sum(d.value for d in corr) == -6
    assert [d.value for d in corr] == [-4, -2]
    assert readout(trace) == 59
    assert replay_ok(trace)


def test_symmetrized_trivial():
    assert symmetrized_sum([5, 5])[:3] == (10, 10, [])
    assert symmetrized_sum([1, 9, 2, 8, 3])[0] == 23
    with pytest.raises(ValueError):
        symmetrized_sum([])


@given(st.lists(digits, min_size=1, max_size=30))
def test_symmetrized_property(vs):
    total, c2, corr, trace = symmetrized_sum(vs)
    assert total == sum(vs)
    assert 2 * total == len(vs) * c2 + 2 * sum(d.value for d in corr)
    # with the moved points parked on 5 the lattice really is symmetric
    moved = Counter(5 + d.value for d in corr)
    rest = Counter(vs) - moved
    rest[5] += len(corr)
    assert all(rest[x] == rest[c2 - x] for x in rest)
    assert readout(trace) == total


def test_long_walks():
    assert add_long(4789, 0)[0] == 4789
    assert add_long(999, 1)[0] == 1000
    assert sub_long(1000, 1)[0] == 999
    with pytest.raises(ValueError):
        sub_long(1, 2)
    with pytest.raises(ValueError):
        add_long(-1, 2)


@given(st.integers(min_value=-10**12, max_value=10**12),
       st.integers(min_value=-10**12, max_value=10**12))
def test_add_signed(x, y):
    total, trace = add_signed(x, y)
    assert total == x + y
    assert replay_ok(trace)


PATTERN_CASES = [
    ((1, 9), addition.OPPOSITE, 10),
    ((5, 5), addition.OPPOSITE, 10),
    ((1, 2), addition.CORNER_MID, 3),
    ((9, 8), addition.CORNER_MID, 17),
    ((2, 3), addition.MID_CORNER, 5),
    ((8, 7), addition.MID_CORNER, 15),
    ((2, 6), addition.MID_MID, 8),
    ((8, 4), addition.MID_MID, 12),
    ((1, 2, 3), addition.EDGE, 6),
    ((3, 6, 9), addition.EDGE, 18),
    ((7, 8, 9), addition.EDGE, 24),
    ((1, 5, 9), addition.PERM3, 15),
    ((2, 6, 7), addition.PERM3, 15),
    ((2, 3, 4, 6, 7, 8), addition.PERM6, 30),
    ((4, 1, 2, 3), addition.SEVEN, 10),
    ((6, 9, 8, 7), addition.SEVEN, 30),
    ((1, 2, 3, 4, 6, 7, 8, 9), addition.BORDER8, 40),
]


@pytest.mark.parametrize("points, name, total", PATTERN_CASES)
def test_dot_patterns(points, name, total):
    res = match_dot_pattern(points)
    assert res is not None
    assert res.pattern_name == name
    assert res.total == total == sum(points)


@pytest.mark.parametrize("points", [(1, 3), (1, 1, 2), (1, 2, 4), (1, 2, 3, 5), (1, 2, 3, 4, 5, 6, 7, 8)])
def test_non_patterns(points):
    assert match_dot_pattern(points) is None


def test_pattern_rejects_zero():
    with pytest.raises(ValueError):
        match_dot_pattern([0, 1])
