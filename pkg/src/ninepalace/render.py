"""ASCII and SVG pictures of step traces, one grid per panel."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .grid import coords
from .trace import Arrow, Event, StepTrace, TraceStep

# (drow sign, dcol sign) -> compass glyph
GLYPHS = {
    (-1, -1): "↖", (-1, 0): "↑", (-1, 1): "↗",
    (0, -1): "←", (0, 0): "·", (0, 1): "→",
    (1, -1): "↙", (1, 0): "↓", (1, 1): "↘",
}
WRAP = "~"

# grid rows as drawn: the 0 point hangs left of 1 and 10 right of 9
_LAYOUT = ((0, 1, 2, 3, None), (None, 4, 5, 6, None), (None, 7, 8, 9, 10))


@dataclass(frozen=True)
class RenderSpec:
    format: str = "ascii"
    refinement: int = 1
    show_families: bool = True

    def __post_init__(self) -> None:
        if self.format not in ("ascii", "svg"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.refinement < 1:
            raise ValueError("refinement must be at least 1")


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def glyph(arrow: Arrow) -> str:
    g = GLYPHS[_sign(arrow.drow), _sign(arrow.dcol)]
    return g + WRAP if arrow.wrap else g


def _event_text(e: Event) -> str:
    if e.type == "annotation":
        return e.text or ""
    if e.text:
        return f"{e.type}: {e.text}"
    return e.type if e.value is None else f"{e.type} {e.value}"


def _panels(trace: StepTrace) -> list[list[TraceStep]]:
    return [trace.panel(i) for i in range(trace.panel_count)]


def _marks(steps: Iterable[TraceStep]) -> tuple[set[int], dict[int, int]]:
    """Points touched in a panel and the last family seen at each end point."""
    touched: set[int] = set()
    family: dict[int, int] = {}
    for s in steps:
        touched.add(s.start.position)
        touched.add(s.end.position)
        family[s.end.position] = s.end.family
    return touched, family


# -- ascii ----------------------------------------------------------------

def _ascii_grid(steps: list[TraceStep], show_families: bool) -> list[str]:
    touched, family = _marks(steps)
    starts = {steps[0].start.position} if steps else set()
    lines = []
    for row in _LAYOUT:
        cells = []
        for p in row:
            if p is None:
                cell, fam = "   ", ""
            else:
                label = "10" if p == 10 else str(p)
                if p in starts:
                    cell = f"({label})" if len(label) == 1 else f"({label}"
                elif p in touched:
                    cell = f"[{label}]" if len(label) == 1 else f"[{label}"
                else:
                    cell = f" {label} " if len(label) == 1 else f" {label}"
                fam = f"{family[p]:+d}" if show_families and p in family else ""
            cells.append(cell + fam.ljust(3) if show_families else cell)
        lines.append(" ".join(cells).rstrip())
    return lines


def _ascii_steps(steps: list[TraceStep]) -> list[str]:
    out = []
    for i, s in enumerate(steps, 1):
        line = f"  {i:>2}. {s.start} {glyph(s.arrow):<2} {s.end}  {s.kind}"
        notes = [_event_text(e) for e in s.events]
        if notes:
            line += ": " + "; ".join(n for n in notes if n)
        out.append(line.rstrip())
    return out


def render_ascii(trace: StepTrace, spec: RenderSpec = RenderSpec()) -> str:
    panels = _panels(trace)
    out: list[str] = []
    if spec.refinement > 1:
        out.append(f"refinement {spec.refinement}: a small step right is 1/{spec.refinement}, "
                   f"down is 3/{spec.refinement}")
    for i, steps in enumerate(panels):
        head = f"panel {i + 1}/{len(panels)}"
        if trace.title(i):
            head += f": {trace.title(i)}"
        out.append(head)
        out += _ascii_grid(steps, spec.show_families)
        out += _ascii_steps(steps)
        out.append("")
    return "\n".join(out)


# -- svg ------------------------------------------------------------------

CELL = 60
MARGIN = 30
TITLE_H = 30
PANEL_W = 5 * CELL + 2 * MARGIN
PANEL_H = 3 * CELL + 2 * MARGIN + TITLE_H


def _xy(p: int, ox: int) -> tuple[int, int]:
    row, col = coords(p)
    return ox + MARGIN + (col + 1) * CELL + CELL // 2, TITLE_H + MARGIN + row * CELL


def _num(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{float(v):.2f}"


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _svg_panel(steps: list[TraceStep], title: str, ox: int, spec: RenderSpec) -> list[str]:
    out = ['<g class="panel">']
    if title:
        out.append(f'<text x="{ox + MARGIN}" y="20" class="title">{_esc(title)}</text>')
    x1, y1 = _xy(1, ox)
    x9, y9 = _xy(9, ox)
    n = spec.refinement
    # refinement lines first so the main grid sits on top
    if n > 1:
        for k in range(2 * n + 1):
            if k % n:
                x = _num(x1 + Fraction(k * CELL, n))
                y = _num(y1 + Fraction(k * CELL, n))
                out.append(f'<line x1="{x}" y1="{y1}" x2="{x}" y2="{y9}" class="fine"/>')
                out.append(f'<line x1="{x1}" y1="{y}" x2="{x9}" y2="{y}" class="fine"/>')
    for k in range(3):
        out.append(f'<line x1="{x1 + k * CELL}" y1="{y1}" x2="{x1 + k * CELL}" y2="{y9}" class="grid"/>')
        out.append(f'<line x1="{x1}" y1="{y1 + k * CELL}" x2="{x9}" y2="{y1 + k * CELL}" class="grid"/>')
    touched, family = _marks(steps)
    for p in range(11):
        x, y = _xy(p, ox)
        cls = "dot hit" if p in touched else "dot"
        out.append(f'<circle cx="{x}" cy="{y}" r="5" class="{cls}"/>')
        out.append(f'<text x="{x - 12}" y="{y - 8}" class="label">{p}</text>')
        if spec.show_families and p in family:
            out.append(f'<text x="{x + 8}" y="{y + 16}" class="family">{family[p]:+d}</text>')
    for s in steps:
        xa, ya = _xy(s.start.position, ox)
        xb, yb = _xy(s.end.position, ox)
        if (xa, ya) == (xb, yb):
            out.append(f'<circle cx="{xa}" cy="{ya}" r="10" class="stay"/>')
            continue
        cls = "arrow wrap" if s.arrow.wrap else "arrow"
        out.append(f'<line x1="{xa}" y1="{ya}" x2="{xb}" y2="{yb}" class="{cls}" '
                   f'marker-end="url(#head)"/>')
    out.append("</g>")
    return out


def render_svg(trace: StepTrace, spec: RenderSpec = RenderSpec(format="svg")) -> str:
    panels = _panels(trace)
    width = PANEL_W * len(panels)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{PANEL_H}" '
        f'viewBox="0 0 {width} {PANEL_H}">',
        "<defs>",
        '<marker id="head" markerWidth="8" markerHeight="8" refX="7" refY="4" orient="auto">'
        '<path d="M0,0 L8,4 L0,8 z"/></marker>',
        "<style>"
        ".grid{stroke:#333;stroke-width:1.5}"
        ".fine{stroke:#bbb;stroke-width:0.5}"
        ".dot{fill:#fff;stroke:#333}"
        ".hit{fill:#333}"
        ".stay{fill:none;stroke:#c00}"
        ".arrow{stroke:#c00;stroke-width:2}"
        ".wrap{stroke-dasharray:5,3}"
        ".label{font:11px sans-serif;fill:#555}"
        ".family{font:11px sans-serif;fill:#c00}"
        ".title{font:13px sans-serif}"
        "</style>",
        "</defs>",
    ]
    for i, steps in enumerate(panels):
        out += _svg_panel(steps, trace.title(i), i * PANEL_W, spec)
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(trace: StepTrace, spec: RenderSpec = RenderSpec()) -> str:
    if spec.format == "svg":
        return render_svg(trace, spec)
    return render_ascii(trace, spec)
