"""Step traces shared by every engine.

Every step is a move between two grid numbers.  The arrow stores the grid
displacement of the units point plus a wrap flag for a family change, so a
step can be replayed from its start without knowing which engine made it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

from .grid import GridNumber, coords

# steps of this kind spell out a number, one point per digit
PATH = "path"
# event type used to carry panel titles through serialization
TITLE = "title"


@dataclass(frozen=True, slots=True)
class Arrow:
    dcol: int
    drow: int
    wrap: bool = False

    @property
    def units_delta(self) -> int:
        return self.dcol + 3 * self.drow

    @property
    def value_delta(self) -> int:
        u = self.units_delta
        if not self.wrap:
            return u
        # a wrapped move crosses exactly one decade against the units motion
        if u == 0:
            raise ValueError("wrapped arrow with no units motion")
        return u - 10 if u > 0 else u + 10


def arrow_between(start: GridNumber, end: GridNumber) -> Arrow:
    """Canonical arrow: plain grid displacement, flagged when the family moves."""
    r0, c0 = coords(start.position)
    r1, c1 = coords(end.position)
    family_delta = end.family - start.family
    if abs(family_delta) > 1:
        raise ValueError(f"move {start} -> {end} crosses more than one family")
    return Arrow(c1 - c0, r1 - r0, family_delta != 0)


@dataclass(frozen=True, slots=True)
class Event:
    """One trace event: ``carry``, ``borrow``, ``lap`` or ``annotation``."""

    type: str
    value: int | None = None
    text: str | None = None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"type": self.type}
        if self.value is not None:
            out["value"] = self.value
        if self.text is not None:
            out["text"] = self.text
        return out

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> Event:
        return cls(d["type"], d.get("value"), d.get("text"))


def note(text: str) -> Event:
    return Event("annotation", text=text)


@dataclass(frozen=True, slots=True)
class TraceStep:
    kind: str
    start: GridNumber
    end: GridNumber
    arrow: Arrow
    events: tuple[Event, ...] = ()
    panel: int = 0

    @classmethod
    def move(cls, kind: str, start: GridNumber, end: GridNumber,
             events: Iterable[Event] = (), panel: int = 0) -> TraceStep:
        return cls(kind, start, end, arrow_between(start, end), tuple(events), panel)

    @property
    def delta(self) -> int:
        return self.end.value - self.start.value

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "start": [self.start.family, self.start.position],
            "end": [self.end.family, self.end.position],
            "arrow": [self.arrow.dcol, self.arrow.drow, self.arrow.wrap],
            "events": [e.to_dict() for e in self.events],
            "panel": self.panel,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> TraceStep:
        dcol, drow, wrap = d["arrow"]
        return cls(
            d["kind"],
            GridNumber(*d["start"]),
            GridNumber(*d["end"]),
            Arrow(dcol, drow, bool(wrap)),
            tuple(Event.from_dict(e) for e in d.get("events", ())),
            d.get("panel", 0),
        )


@dataclass(slots=True)
class StepTrace:
    steps: list[TraceStep] = field(default_factory=list)
    titles: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    @property
    def panel_count(self) -> int:
        n = max((s.panel for s in self.steps), default=-1) + 1
        return max(n, len(self.titles), 1)

    def panel(self, i: int) -> list[TraceStep]:
        return [s for s in self.steps if s.panel == i]

    def title(self, i: int) -> str:
        return self.titles[i] if i < len(self.titles) else ""

    def extend(self, other: StepTrace, shift: bool = True) -> None:
        """Append ``other`` after this trace, renumbering its panels."""
        offset = self.panel_count if shift and self.steps else 0
        if shift and self.steps:
            self.titles += [""] * (offset - len(self.titles))
        for s in other.steps:
            self.steps.append(TraceStep(s.kind, s.start, s.end, s.arrow, s.events,
                                        s.panel + offset))
        for i in range(other.panel_count):
            idx = offset + i
            while len(self.titles) <= idx:
                self.titles.append("")
            if other.title(i):
                self.titles[idx] = other.title(i)

    def to_list(self) -> list[dict[str, Any]]:
        """Steps as plain dicts; each panel title rides on its first step."""
        out = []
        seen: set[int] = set()
        for s in self.steps:
            d = s.to_dict()
            if s.panel not in seen:
                seen.add(s.panel)
                if self.title(s.panel):
                    d["events"].insert(0, {"type": TITLE, "text": self.title(s.panel)})
            out.append(d)
        return out

    @classmethod
    def from_list(cls, steps: list[dict[str, Any]]) -> StepTrace:
        trace = cls()
        for d in steps:
            step = TraceStep.from_dict(d)
            kept = []
            for e in step.events:
                if e.type == TITLE:
                    while len(trace.titles) <= step.panel:
                        trace.titles.append("")
                    trace.titles[step.panel] = e.text or ""
                else:
                    kept.append(e)
            trace.steps.append(TraceStep(step.kind, step.start, step.end, step.arrow,
                                         tuple(kept), step.panel))
        return trace


def path_trace(points: Iterable[GridNumber], panel: int = 0,
               events: Iterable[Iterable[Event]] | None = None) -> list[TraceStep]:
    """Steps spelling a long number: a stay on the first digit, then one move per digit.

    ``events`` holds one event list per point.
    """
    pts = list(points)
    evs = list(events) if events is not None else []
    evs += [()] * (len(pts) - len(evs))
    steps = [TraceStep.move(PATH, pts[0], pts[0], evs[0], panel)]
    steps += [TraceStep.move(PATH, a, b, evs[i + 1], panel)
              for i, (a, b) in enumerate(zip(pts, pts[1:]))]
    return steps


def replay_step(step: TraceStep) -> GridNumber:
    return GridNumber.from_int(step.start.value + step.arrow.value_delta)


def replay_ok(trace: StepTrace) -> bool:
    """True when every arrow, applied to its start, lands on its end."""
    return all(replay_step(s) == s.end for s in trace.steps)


def readout(trace: StepTrace) -> int | None:
    """The number a trace ends on.

    A trailing run of path steps is decoded digit by digit; otherwise the
    end of the last step is the answer.
    """
    if not trace.steps:
        return None
    tail: list[TraceStep] = []
    for s in reversed(trace.steps):
        if s.kind != PATH or (tail and s.panel != tail[-1].panel):
            break
        tail.append(s)
    if not tail:
        return replay_step(trace.steps[-1]).value
    tail.reverse()
    points = [replay_step(s) for s in tail]
    negative = any(p.family < 0 for p in points)
    magnitude = 0
    for p in points:
        magnitude = 10 * magnitude + abs(p.value)
    return -magnitude if negative else magnitude
