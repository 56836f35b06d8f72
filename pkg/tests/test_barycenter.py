from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ninepalace.barycenter import (
    RefinedBarycenter, advance_retreat, barycenter, barycenter_trace, line_counts,
    product_weights, refine_value, sum_by_barycenter, sum_of_products, weighted,
)
from ninepalace.trace import readout, replay_ok

EXAMPLE = [1, 4, 4, 7, 7, 7, 2, 5, 8, 8]
PRODUCTS = [(2, 6), (4, 9), (3, 8), (4, 3), (7, 5)]


def test_example_barycenter():
    b = barycenter(weighted(EXAMPLE))
    assert b == RefinedBarycenter(Fraction(4, 10), Fraction(13, 10), 10)
    assert b.value == Fraction(53, 10)
    assert sum_by_barycenter(weighted(EXAMPLE)) == 53


def test_small_examples():
    assert barycenter(weighted([5, 5])) == RefinedBarycenter(Fraction(1), Fraction(1), 2)
    assert barycenter(weighted([6, 7])).value == Fraction(13, 2)
    assert sum_by_barycenter(weighted([6, 7])) == 13
    assert sum_by_barycenter(weighted([4, 7, 8, 9])) == 28


def test_zero_sits_left_of_one():
    assert barycenter(weighted([0])).value == 0
    assert sum_by_barycenter(weighted([0, 0, 9])) == 9


def test_sum_of_products():
    assert sum_of_products(PRODUCTS) == 119
    assert product_weights(PRODUCTS)[5] == 7
    assert barycenter(product_weights(PRODUCTS)).value == Fraction(119, 20)
    assert sum_of_products([(1, 6)]) == 6
    assert sum_of_products([(3, 3), (3, 7)]) == 30


def test_errors():
    with pytest.raises(ValueError):
        barycenter(Counter())
    with pytest.raises(ValueError):
        weighted([10])
    with pytest.raises(ValueError):
        sum_of_products([(10, 1)])
    with pytest.raises(ValueError):
        refine_value(1, 0, 0, 3)


def test_refine_value():
    assert refine_value(1, 0, 3, 3) == 3 + Fraction(1, 3)
    assert refine_value(0, 0, 7, 8) == 8
    assert refine_value(2, 1, 4, 1) == 1 + Fraction(2, 4) + Fraction(3, 4)
    # three small steps down on the 3-refined grid is one whole row
    assert refine_value(0, 3, 3, 2) == 5


def test_advance_retreat():
    # 77899999 on the bottom line: two 7s, one 8, five 9s
    assert advance_retreat((2, 1, 5)) == (0, 5, 3)
    assert advance_retreat((0, 4, 0)) == (0, 4, 0)


@given(st.tuples(*[st.integers(min_value=0, max_value=20)] * 3))
def test_advance_retreat_keeps_sum(counts):
    a, m, c = counts
    a2, m2, c2 = advance_retreat(counts)
    assert a + m + c == a2 + m2 + c2
    # column index sum 0*a + 1*m + 2*c is unchanged
    assert m + 2 * c == m2 + 2 * c2


def test_line_counts():
    cols, rows = line_counts(weighted(EXAMPLE))
    assert cols == (6, 4, 0)
    assert rows == (2, 3, 5)


@given(st.lists(st.integers(min_value=0, max_value=9), min_size=1, max_size=10))
def test_barycenter_sum_is_exact(vs):
    w = weighted(vs)
    b = barycenter(w)
    assert b.value == 1 + b.mean_col + 3 * b.mean_row
    assert sum_by_barycenter(w) == sum(vs)


@given(st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9)), min_size=1, max_size=10)
       .filter(lambda ps: any(a for a, _ in ps)))
def test_sum_of_products_property(pairs):
    assert sum_of_products(pairs) == sum(a * b for a, b in pairs)


def test_trace():
    total, trace = barycenter_trace(weighted(EXAMPLE))
    assert total == 53
    assert readout(trace) == 53
    assert replay_ok(trace)
    texts = [e.text for s in trace.steps for e in s.events if e.text]
    assert any("columns left/middle/right: 6 4 0" in t for t in texts)
