import pytest

from ninepalace.addition import SignedDigit, eval_walk
from ninepalace.grid import GridNumber
from ninepalace.multiplication import DigitSequence, mul_long_by_digit
from ninepalace.render import RenderSpec, glyph, render
from ninepalace.trace import Arrow, StepTrace, TraceStep


def walk_trace():
    _, t = eval_walk(0, [SignedDigit.of(v) for v in (1, -2, -9, -8, -7, -6, 8, -3, 5, -6)])
    return t


def test_glyphs():
    assert glyph(Arrow(1, 0)) == "→"
    assert glyph(Arrow(-2, -2)) == "↖"
    assert glyph(Arrow(0, 2)) == "↓"
    assert glyph(Arrow(-1, 0, True)) == "←~"
    assert glyph(Arrow(0, 0)) == "·"


def test_walk_has_four_panels():
    text = render(walk_trace())
    heads = [ln for ln in text.splitlines() if ln.startswith("panel ")]
    assert heads == ["panel 1/4: 0+1-2", "panel 2/4: ...-9-8-7",
                     "panel 3/4: ...-6+8-3", "panel 4/4: ...+5-6"]
    # the final point is 3 in family -3
    assert "[3]-3" in text


def test_empty_trace_is_bare_grid():
    text = render(StepTrace())
    assert text.splitlines()[:4] == [
        "panel 1/1",
        " 0      1      2      3",
        "        4      5      6",
        "        7      8      9      10",
    ]


def test_families_can_be_hidden():
    text = render(walk_trace(), RenderSpec(show_families=False))
    assert "[3]-3" not in text and "[3]" in text


def test_multiplication_panels():
    _, t = mul_long_by_digit(DigitSequence.from_int(4789), 3)
    text = render(t)
    assert "panel 1/3: units digit sequence" in text
    assert "panel 2/3: carry sequence" in text
    assert "panel 3/3: product" in text


def test_svg():
    svg = render(walk_trace(), RenderSpec("svg", refinement=3))
    assert svg.startswith("<svg ") and svg.endswith("</svg>\n")
    assert svg.count('<g class="panel">') == 4
    assert 'class="fine"' in svg
    assert "stroke-dasharray" in svg
    assert "&lt;" not in svg
    bare = render(StepTrace(), RenderSpec("svg"))
    assert bare.count("<circle") == 11
    assert 'class="fine"' not in bare


def test_svg_escapes_titles():
    t = StepTrace([TraceStep.move("add", GridNumber(0, 1), GridNumber(0, 2))], ["a<b"])
    assert "a&lt;b" in render(t, RenderSpec("svg"))


def test_deterministic():
    for spec in (RenderSpec(), RenderSpec("svg", 4), RenderSpec("ascii", 2, False)):
        assert render(walk_trace(), spec) == render(walk_trace(), spec)


def test_bad_spec():
    with pytest.raises(ValueError):
        RenderSpec(refinement=0)
    with pytest.raises(ValueError):
        RenderSpec(format="png")
