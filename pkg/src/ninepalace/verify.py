"""Exhaustive and randomized checks of the grid rules against plain integers."""
from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from . import addition, barycenter, division, grid, multiplication, trace
from .addition import SignedDigit
from .multiplication import DigitSequence
from .trace import StepTrace

DEFAULT_SEED = 1729
DEFAULT_SAMPLES = 100_000


@dataclass
class ConformanceReport:
    claim_id: str
    total_cases: int = 0
    failures: list[tuple[Any, Any, Any]] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, inputs: Any, expected: Any, actual: Any) -> None:
        self.total_cases += 1
        if expected != actual:
            self.failures.append((inputs, expected, actual))

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        line = f"{status} {self.claim_id}: {self.total_cases} cases, {len(self.failures)} failures"
        if self.counts:
            line += " [" + ", ".join(f"{k}={v}" for k, v in self.counts.items()) + "]"
        return line

    def to_dict(self) -> dict[str, Any]:
        return {
            "claim_id": self.claim_id,
            "total_cases": self.total_cases,
            "failures": [[repr(i), repr(e), repr(a)] for i, e, a in self.failures],
            "counts": dict(self.counts),
        }


def oracle_eval(operands: Sequence[int], op: str) -> int:
    """Ground truth with Python integers.

    ``sum`` adds signed terms, ``mul`` multiplies, ``div`` and ``mod`` are
    floor division and remainder of the first operand by the second.
    """
    if op == "sum":
        return sum(operands)
    if op == "mul":
        out = 1
        for v in operands:
            out *= v
        return out
    a, b = operands
    if op == "div":
        return a // b
    if op == "mod":
        return a % b
    raise ValueError(f"unknown operation {op!r}")


# -- theorems -------------------------------------------------------------

def verify_rotation_invariance() -> list[ConformanceReport]:
    add = ConformanceReport("rotation.addition")
    sub = ConformanceReport("rotation.subtraction")
    mul = ConformanceReport("rotation.multiples")
    for a, b, j in itertools.product(range(10), range(10), range(4)):
        r = grid.rotate
        add.check((a, b, j), r((a + b) % 10, j), (r(a, j) + r(b, j)) % 10)
        sub.check((a, b, j), r((a - b) % 10, j), (r(a, j) - r(b, j)) % 10)
    for a, k, j in itertools.product(range(10), range(10), range(4)):
        r = grid.rotate
        mul.check((a, k, j), (k * r(a, j)) % 10,
                  r(multiplication.units_of_multiple(a, k), j))
    return [add, sub, mul]


def verify_rotation_geometry() -> ConformanceReport:
    """A clockwise quarter turn of the coordinates agrees with ``rotate``."""
    rep = ConformanceReport("rotation.geometry")
    for d in range(1, 10):
        row, col = grid.coords(d)
        rep.check(d, grid.position_at(*grid.rotate_coords(row, col)), grid.rotate(d, 1))
    return rep


def verify_carry_theorem() -> list[ConformanceReport]:
    points = ConformanceReport("carry.points")
    totals = ConformanceReport("carry.totals")
    for n, k in itertools.product(range(1, 10), range(1, 10)):
        closed = sum(1 for j in range(1, k + 1) if (j * n) % 10 < n)
        points.check((n, k), (k * n) // 10, multiplication.carry_of_multiple(n, k))
        points.counts["closed-form-agrees"] = points.counts.get("closed-form-agrees", 0) + (closed == (k * n) // 10)
    for n in range(1, 10):
        diagram = multiplication.carry_diagram(n)
        totals.check(n, n - 1, len(diagram.carry_points))
    return [points, totals]


def verify_complement_and_triangle() -> list[ConformanceReport]:
    tri = ConformanceReport("addition.triangle-rule")
    comp = ConformanceReport("addition.complement")
    for a, m, n in itertools.product(range(10), range(-9, 10), range(-9, 10)):
        start = grid.GridNumber(0, a)
        mid, _ = addition.step_add(start, SignedDigit.of(m))
        two, _ = addition.step_add(mid, SignedDigit.of(n))
        tri.check((a, m, n), a + m + n, two.value)
    for a, d in itertools.product(range(1, 10), range(1, 10)):
        direct, _ = addition.step_add(grid.GridNumber(0, a), SignedDigit(d))
        aided, _ = addition.step_add(grid.GridNumber(1, a), SignedDigit(grid.complement(d), -1))
        comp.check((a, d), direct.value, aided.value)
        down, _ = addition.step_add(grid.GridNumber(0, a), SignedDigit(d, -1))
        aided, _ = addition.step_add(grid.GridNumber(-1, a), SignedDigit(grid.complement(d)))
        comp.check((a, -d), down.value, aided.value)
    return [tri, comp]


def _border_cw() -> list[int]:
    # walk the square from the top-left: along the top, down the right, back
    # along the bottom and up the left
    cells = [(0, 0), (0, 1), (0, 2), (1, 2), (2, 2), (2, 1), (2, 0), (1, 0)]
    return [grid.position_at(r, c) for r, c in cells]


def dot_pattern_instances() -> dict[str, list[tuple[int, ...]]]:
    """Every instance of every dot matrix, built from grid coordinates alone."""
    ring = _border_cw()
    corner = {p for p in ring if grid.coords(p)[0] != 1 and grid.coords(p)[1] != 1}
    mids = [p for p in ring if p not in corner]
    center = (1, 1)

    def opposite(p: int) -> int:
        r, c = grid.coords(p)
        return grid.position_at(2 * center[0] - r, 2 * center[1] - c)

    out: dict[str, list[tuple[int, ...]]] = {name: [] for name in addition.PATTERNS}
    out[addition.OPPOSITE] = sorted({tuple(sorted((p, opposite(p)))) for p in range(1, 10)})
    for i, p in enumerate(ring):
        q = ring[(i + 1) % 8]
        if p in corner:
            out[addition.CORNER_MID].append((p, q))
        else:
            out[addition.MID_CORNER].append((p, q))
    for i, m in enumerate(mids):
        out[addition.MID_MID].append((m, mids[(i + 1) % 4]))
    for m in mids:
        i = ring.index(m)
        out[addition.EDGE].append((ring[i - 1], m, ring[(i + 1) % 8]))
    for combo in itertools.combinations(range(1, 10), 3):
        rows = {grid.coords(p)[0] for p in combo}
        cols = {grid.coords(p)[1] for p in combo}
        if len(rows) == len(cols) == 3:
            out[addition.PERM3].append(combo)
            out[addition.PERM6].append(tuple(p for p in range(1, 10) if p not in combo))
    for i, c in enumerate(ring):
        if c in corner:
            out[addition.SEVEN].append((ring[i - 1], c, ring[(i + 1) % 8], ring[(i + 2) % 8]))
    out[addition.BORDER8].append(tuple(ring))
    return out


def verify_dot_matrix_lemmas() -> list[ConformanceReport]:
    lemmas = ConformanceReport("dot.lemmas")
    instances = dot_pattern_instances()
    known: dict[tuple[int, ...], str] = {}
    for name, group in instances.items():
        lemmas.counts[name] = len(group)
        for inst in group:
            known[tuple(sorted(inst))] = name
            res = addition.match_dot_pattern(inst)
            got = None if res is None else (res.pattern_name, res.total)
            lemmas.check(inst, (name, sum(inst)), got)
            if res is not None:
                lemmas.check((inst, "units"), sum(inst) % 10, res.units)
    # nothing outside the enumerated instances may be recognised
    exclusive = ConformanceReport("dot.exclusive")
    candidates: Iterable[tuple[int, ...]] = itertools.chain(
        *(itertools.combinations_with_replacement(range(1, 10), k) for k in (1, 2, 3, 4)),
        itertools.combinations(range(1, 10), 6),
        itertools.combinations(range(1, 10), 8),
    )
    for ms in candidates:
        res = addition.match_dot_pattern(ms)
        expected = known.get(tuple(sorted(ms)))
        exclusive.check(ms, expected, None if res is None else res.pattern_name)
    return [lemmas, exclusive]


LUOSHU = ((4, 9, 2), (3, 5, 7), (8, 1, 6))


def _det(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i, j in itertools.combinations(range(n), 2) if perm[i] > perm[j])
        term = (-1) ** inversions
        for i, p in enumerate(perm):
            term *= m[i][p]
        total += term
    return total


def _lines(square: Sequence[Sequence[int]]) -> list[list[tuple[int, int]]]:
    n = len(square)
    rows = [[(i, j) for j in range(n)] for i in range(n)]
    cols = [[(i, j) for i in range(n)] for j in range(n)]
    diags = [[(i, i) for i in range(n)], [(i, n - 1 - i) for i in range(n)]]
    return rows + cols + diags


def verify_luoshu_fixtures() -> ConformanceReport:
    rep = ConformanceReport("luoshu.fixtures")
    rep.check("determinant", 360, _det(LUOSHU))
    lines = _lines(LUOSHU)
    for line in lines:
        rep.check(("line", tuple(line)), 15, sum(LUOSHU[i][j] for i, j in line))
    rep.check("4+9+2+5+1", 21, 20 + grid.complement(9))
    # every pair of crossing lines: five numbers sum to 20 plus the complement
    crossings = 0
    for a, b in itertools.combinations(lines, 2):
        common = set(a) & set(b)
        if len(common) != 1:
            continue
        (ci, cj), = common
        union = set(a) | set(b)
        crossings += 1
        rep.check(("crossing", tuple(a), tuple(b)),
                  sum(LUOSHU[i][j] for i, j in union),
                  20 + grid.complement(LUOSHU[ci][cj]))
    rep.counts["crossings"] = crossings
    return rep


# -- engines against the oracle -------------------------------------------

def _engine_cases() -> dict[str, Callable[[random.Random, bool], tuple]]:
    # each case returns (inputs, expected, actual, trace or None)
    def walk(rng, traced):
        start = rng.randint(-10**6, 10**6)
        ds = [rng.randint(-9, 9) for _ in range(rng.randint(0, 12))]
        end, t = addition.eval_walk(start, [SignedDigit.of(d) for d in ds], traced)
        return (start, ds), oracle_eval([start, *ds], "sum"), end.value, t

    def rotation(rng, traced):
        vs = [rng.randint(0, 9) for _ in range(rng.randint(1, 20))]
        total, _, t = addition.sum_by_rotation(vs, traced)
        return vs, oracle_eval(vs, "sum"), total, t

    def symmetry(rng, traced):
        vs = [rng.randint(0, 9) for _ in range(rng.randint(1, 20))]
        total, _, _, t = addition.symmetrized_sum(vs, traced)
        return vs, oracle_eval(vs, "sum"), total, t

    def bary(rng, traced):
        vs = [rng.randint(0, 9) for _ in range(rng.randint(1, 20))]
        freq = barycenter.weighted(vs)
        if traced:
            total, t = barycenter.barycenter_trace(freq)
            return vs, oracle_eval(vs, "sum"), total, t
        return vs, oracle_eval(vs, "sum"), barycenter.sum_by_barycenter(freq), None

    def products(rng, traced):
        pairs = [(rng.randint(0, 9), rng.randint(0, 9)) for _ in range(rng.randint(1, 8))]
        if all(a == 0 for a, _ in pairs):
            pairs.append((1, rng.randint(0, 9)))
        return pairs, sum(a * b for a, b in pairs), barycenter.sum_of_products(pairs), None

    def mul(rng, traced):
        a, b = rng.randint(0, 10**12), rng.randint(0, 9)
        p, t = multiplication.mul_long_by_digit(DigitSequence.from_int(a), b, traced)
        return (a, b), oracle_eval([a, b], "mul"), int(p), t

    def exact(rng, traced):
        q, b = rng.randint(0, 10**9), rng.choice(division.EXACT_DIVISORS)
        got, t = division.div_exact_low_to_high(DigitSequence.from_int(q * b), b, traced)
        return (q * b, b), oracle_eval([q * b, b], "div"), int(got), t

    def general(rng, traced):
        p, b = rng.randint(0, 10**12), rng.randint(1, 9)
        q, r, t = division.div_general(DigitSequence.from_int(p), b, traced)
        return (p, b), (oracle_eval([p, b], "div"), oracle_eval([p, b], "mod")), (int(q), r), t

    return {
        "engine.walk": walk,
        "engine.rotation-sum": rotation,
        "engine.symmetrized-sum": symmetry,
        "engine.barycenter-sum": bary,
        "engine.sum-of-products": products,
        "engine.long-x-digit": mul,
        "engine.exact-division": exact,
        "engine.general-division": general,
    }


_CASES = _engine_cases()
ENGINE_CLAIMS = tuple(_CASES)
# every this many cases the full trace is built, replayed and read back
TRACE_EVERY = 50


def _trace_ok(t: StepTrace, expected: Any) -> bool:
    if not trace.replay_ok(t):
        return False
    if not t.steps:
        # nothing was moved, so there is nothing to read back
        return True
    want = expected[0] if isinstance(expected, tuple) else expected
    return trace.readout(t) == want


def verify_engine(claim_id: str, seed: int = DEFAULT_SEED,
                  samples: int = DEFAULT_SAMPLES) -> ConformanceReport:
    """Seeded random cases for one engine operation; same seed, same report."""
    case = _CASES[claim_id]
    # one stream per claim so claims can be run alone or in any order
    rng = random.Random(f"{seed}:{claim_id}")
    rep = ConformanceReport(claim_id)
    traced = 0
    for i in range(samples):
        full = i % TRACE_EVERY == 0
        inputs, expected, actual, t = case(rng, full)
        rep.check(inputs, expected, actual)
        if full and t is not None:
            traced += 1
            if not _trace_ok(t, expected):
                rep.failures.append((inputs, "trace replays to the result", "trace mismatch"))
    rep.counts["traced"] = traced
    return rep


def verify_exhaustive_engines() -> list[ConformanceReport]:
    pairs = ConformanceReport("exhaustive.digit-pairs")
    for a, b in itertools.product(range(10), range(10)):
        pairs.check(("+", a, b), a + b, addition.eval_walk(a, [SignedDigit(b)])[0].value)
        pairs.check(("-", a, b), a - b, addition.eval_walk(a, [SignedDigit(b, -1)])[0].value)
        pairs.check(("rot", a, b), a + b, addition.sum_by_rotation([a, b])[0])
        pairs.check(("bary", a, b), a + b, barycenter.sum_by_barycenter(barycenter.weighted([a, b])))
        pairs.check(("sym", a, b), a + b, addition.symmetrized_sum([a, b])[0])
        pairs.check(("x", a, b), a * b,
                    int(multiplication.mul_long_by_digit(DigitSequence.from_int(a), b)[0]))
    divs = ConformanceReport("exhaustive.division")
    for p in range(10**4):
        ds = DigitSequence.from_int(p)
        for b in range(1, 10):
            full = p % TRACE_EVERY == 0
            q, r, t = division.div_general(ds, b, full)
            divs.check(("general", p, b), divmod(p, b), (int(q), r))
            if full and not _trace_ok(t, p // b):
                divs.failures.append((("general", p, b), "trace", "trace mismatch"))
            if b in division.EXACT_DIVISORS:
                try:
                    got = int(division.div_exact_low_to_high(ds, b, full)[0])
                except division.NotDivisibleError:
                    got = None
                divs.check(("exact", p, b), p // b if p % b == 0 else None, got)
    bijection = ConformanceReport("division.unique-recovery")
    for b in range(1, 10):
        image = {multiplication.units_of_multiple(b, d) for d in range(10)}
        bijection.check(b, b in division.EXACT_DIVISORS, len(image) == 10)
    return [pairs, divs, bijection]


def verify_round_trips(seed: int = DEFAULT_SEED, samples: int = 10_000) -> list[ConformanceReport]:
    rng = random.Random(f"{seed}:round-trips")
    enc = ConformanceReport("roundtrip.encode")
    for _ in range(samples):
        v = rng.randint(-10**12, 10**12)
        enc.check(v, v, grid.decode_path(grid.encode_path(v)))
        enc.check(("grid", v), v, grid.GridNumber.from_int(v).value)
    md = ConformanceReport("roundtrip.mul-div")
    for _ in range(samples):
        q, b = rng.randint(0, 10**9), rng.choice(division.EXACT_DIVISORS)
        p, _ = multiplication.mul_long_by_digit(DigitSequence.from_int(q), b, traced=False)
        back, _ = division.div_exact_low_to_high(p, b, traced=False)
        md.check((q, b), q, int(back))
    return [enc, md]


CLAIMS: dict[str, Callable[..., list[ConformanceReport]]] = {
    "rotation": lambda **kw: verify_rotation_invariance() + [verify_rotation_geometry()],
    "carry": lambda **kw: verify_carry_theorem(),
    "addition": lambda **kw: verify_complement_and_triangle(),
    "dot": lambda **kw: verify_dot_matrix_lemmas(),
    "luoshu": lambda **kw: [verify_luoshu_fixtures()],
    "exhaustive": lambda **kw: verify_exhaustive_engines(),
    "roundtrip": lambda seed=DEFAULT_SEED, **kw: verify_round_trips(seed),
    "engines": lambda seed=DEFAULT_SEED, samples=DEFAULT_SAMPLES, **kw: [
        verify_engine(c, seed, samples) for c in ENGINE_CLAIMS],
}


def run_claims(names: Iterable[str] | None = None, seed: int = DEFAULT_SEED,
               samples: int = DEFAULT_SAMPLES) -> list[ConformanceReport]:
    """Run claim groups by name (all of them by default), in a fixed order."""
    chosen = list(CLAIMS) if names is None else list(names)
    reports: list[ConformanceReport] = []
    for name in chosen:
        if name in CLAIMS:
            reports += CLAIMS[name](seed=seed, samples=samples)
        elif name in ENGINE_CLAIMS:
            reports.append(verify_engine(name, seed, samples))
        else:
            raise KeyError(name)
    return reports


def claim_names() -> list[str]:
    return list(CLAIMS) + list(ENGINE_CLAIMS)


def tally(reports: Iterable[ConformanceReport]) -> Counter:
    c = Counter()
    for r in reports:
        c["cases"] += r.total_cases
        c["failures"] += len(r.failures)
    return c
