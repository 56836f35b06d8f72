"""Command line front end: ``ninepalace eval "1-2-9-8-7-6+8-3+5-6"`` and friends.

Exit status is 0 on success, 1 when the computation itself fails (an inexact
division, say) and 2 for bad usage or a malformed expression.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Any

from . import __version__, addition, barycenter, division, multiplication, verify
from .addition import SignedDigit
from .expr import ExprError, Node, Num, digit_chain, parse
from .grid import GridNumber, encode_path
from .multiplication import DigitSequence
from .render import RenderSpec, render
from .trace import StepTrace, TraceStep, note, path_trace, readout

SUM_METHODS = ("walk", "rotation", "barycenter", "symmetry", "pattern")


class UsageError(Exception):
    pass


class _Failed(Exception):
    """A computation finished but must exit non-zero; carries the output."""

    def __init__(self, doc: dict, text: str):
        super().__init__(text)
        self.doc = doc
        self.text = text


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def _number_trace(value: int, title: str = "result") -> StepTrace:
    return StepTrace(path_trace(encode_path(value).points), [title])


def _closed(trace: StepTrace, value: int) -> StepTrace:
    """Make sure the trace reads back as ``value``, adding a result panel if needed."""
    if readout(trace) != value:
        trace.extend(_number_trace(value))
    return trace


def document(op: str, inputs: Any, result: Any, trace: StepTrace,
             report: Any = None) -> dict[str, Any]:
    doc: dict[str, Any] = {"op": op, "inputs": inputs, "result": result,
                           "trace": trace.to_list()}
    if report is not None:
        doc["report"] = report
    return doc


def _int(text: str) -> int:
    try:
        return int(text.replace("−", "-"))
    except ValueError:
        raise UsageError(f"not an integer: {text!r}") from None


def _digit_list(items: list[str]) -> list[int]:
    out = []
    for item in items:
        out += [_int(t) for t in re.split(r"[,\s]+", item.strip()) if t]
    if not out:
        raise UsageError("nothing to sum")
    return out


def _require_digits(values: list[int], method: str) -> None:
    bad = [v for v in values if not 0 <= v <= 9]
    if bad:
        raise UsageError(f"--method {method} sums digits 0..9, got {bad[0]}")


# -- eval -----------------------------------------------------------------

def _eval_node(node: Node) -> tuple[int, StepTrace]:
    if isinstance(node, Num):
        return node.value, StepTrace()
    a, ta = _eval_node(node.left)
    b, tb = _eval_node(node.right)
    trace = StepTrace()
    trace.extend(ta)
    trace.extend(tb)
    if node.op in "+-":
        value, t = addition.add_signed(a, b if node.op == "+" else -b)
    elif node.op == "×":
        value, t = multiplication.mul_long(a, b)
    else:
        value, t = _divide(a, b)
    trace.extend(t)
    return value, trace


def _divide(a: int, b: int) -> tuple[int, StepTrace]:
    if b == 0:
        raise ZeroDivisionError("division by zero")
    if abs(b) > 9:
        raise ValueError(f"division works with single-digit divisors, got {b}")
    q, r, t = division.div_general(DigitSequence.from_int(abs(a)), abs(b))
    if r:
        raise ArithmeticError(f"{a} ÷ {b} is not exact: remainder {r}")
    t.titles = [f"{title} ({abs(a)} ÷ {abs(b)})" for title in t.titles]
    value = int(q) if (a < 0) == (b < 0) else -int(q)
    return value, t


def cmd_eval(args) -> tuple[dict, str]:
    node = parse(args.expr)
    chain = digit_chain(node)
    if chain is not None:
        end, trace = addition.eval_walk(0, [SignedDigit.of(v) for v in chain])
        value = end.value
    else:
        value, trace = _eval_node(node)
        _closed(trace, value)
    return document("eval", [args.expr], value, trace), str(value)


# -- sum ------------------------------------------------------------------

def cmd_sum(args) -> tuple[dict, str]:
    values = _digit_list(args.values)
    method = args.method
    if method == "walk":
        if all(-9 <= v <= 9 for v in values):
            end, trace = addition.eval_walk(0, [SignedDigit.of(v) for v in values])
            total = end.value
        else:
            total, trace = 0, StepTrace()
            for v in values:
                total, t = addition.add_signed(total, v)
                trace.extend(t)
            _closed(trace, total)
        line = str(total)
    else:
        _require_digits(values, method)
        if method == "rotation":
            total, carries, trace = addition.sum_by_rotation(values)
            trace = _closed(trace, total)
            line = f"{total} ({carries} carr{'y' if carries == 1 else 'ies'})"
        elif method == "barycenter":
            total, trace = barycenter.barycenter_trace(barycenter.weighted(values))
            mean = barycenter.barycenter(barycenter.weighted(values)).value
            line = f"{total} (mean {mean} over {len(values)} points)"
        elif method == "symmetry":
            total, c2, corr, trace = addition.symmetrized_sum(values)
            shown = " ".join(str(d) for d in corr) or "none"
            line = f"{total} (center {Fraction(c2, 2)}, corrections {shown})"
        else:
            res = addition.match_dot_pattern(values)
            if res is None:
                raise ArithmeticError("these points form no known dot matrix")
            total = res.total
            trace = StepTrace(titles=[res.pattern_name, "sum"])
            for v in values:
                trace.steps.append(TraceStep.move("dot", GridNumber(0, v), GridNumber(0, v)))
            trace.steps += path_trace(
                encode_path(total).points, panel=1,
                events=[[note(f"units {res.units}, carry {res.carry}")]])
            line = f"{total} ({res.pattern_name}: units {res.units}, carry {res.carry})"
    return document(f"sum/{method}", values, total, trace), line


# -- mul / div / encode ---------------------------------------------------

def cmd_mul(args) -> tuple[dict, str]:
    a, b = _int(args.a), _int(args.b)
    if 0 <= b <= 9:
        prod, trace = multiplication.mul_long_by_digit(DigitSequence.from_int(a), b)
        value = int(prod)
    else:
        value, trace = multiplication.mul_long(a, b)
    return document("mul", [a, b], value, trace), str(value)


def cmd_div(args) -> tuple[dict, str]:
    a, b = _int(args.a), _int(args.b)
    if b == 0:
        raise ZeroDivisionError("division by zero")
    if not 1 <= b <= 9:
        raise ValueError(f"the divisor must be a single digit 1..9, got {b}")
    if a < 0:
        raise ValueError("the dividend must be nonnegative")
    p = DigitSequence.from_int(a)
    if args.method == "exact":
        q, trace = division.div_exact_low_to_high(p, b)
        r = 0
    else:
        q, r, trace = division.div_general(p, b)
    line = str(int(q)) if not r else f"{int(q)} remainder {r}"
    result = {"quotient": int(q), "remainder": r}
    return document(f"div/{args.method}", [a, b], result, trace), line


def cmd_encode(args) -> tuple[dict, str]:
    v = _int(args.n)
    path = encode_path(v)
    trace = StepTrace(path_trace(path.points), [f"{v}"])
    shown = " ".join(str(p) for p in path.points)
    if path.sign < 0:
        shown += "  (all points tagged -1)"
    result = {"sign": path.sign, "points": [[p.family, p.position] for p in path.points],
              "family_tags": list(path.family_tags)}
    return document("encode", [v], result, trace), shown


# -- verify / render ------------------------------------------------------

def cmd_verify(args) -> tuple[dict, str]:
    names = None if args.all or not args.claim else args.claim
    reports = verify.run_claims(names, seed=args.seed, samples=args.samples)
    totals = verify.tally(reports)
    lines = [r.summary() for r in reports]
    lines.append(f"total: {totals['cases']} cases, {totals['failures']} failures (seed {args.seed})")
    doc = document("verify", {"claims": names or "all", "seed": args.seed, "samples": args.samples},
                   {"cases": totals["cases"], "failures": totals["failures"]},
                   StepTrace(), [r.to_dict() for r in reports])
    if totals["failures"]:
        raise _Failed(doc, "\n".join(lines))
    return doc, "\n".join(lines)


def load_trace(path: str) -> StepTrace:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    steps = data["trace"] if isinstance(data, dict) else data
    return StepTrace.from_list(steps)


def cmd_render(args) -> tuple[dict | None, str]:
    try:
        trace = load_trace(args.input)
    except (OSError, ValueError, KeyError, TypeError) as e:
        raise UsageError(f"cannot read trace from {args.input}: {e}") from None
    spec = RenderSpec(args.format, args.refinement, not args.no_families)
    return None, render(trace, spec)


# -- plumbing -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--trace", action="store_true",
                        help="print the structured JSON document instead of text")
    common.add_argument("--out", metavar="FILE", help="write output to FILE")

    parser = _Parser(prog="ninepalace",
                     description="Integer arithmetic as moves on the nine-palace grid.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    p.add_argument("expr")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("sum", parents=[common], help="sum a list of numbers")
    p.add_argument("--method", choices=SUM_METHODS, default="walk")
    p.add_argument("values", nargs="+", help="numbers, space or comma separated")
    p.set_defaults(handler=cmd_sum)

    p = sub.add_parser("mul", parents=[common], help="multiply two integers")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(handler=cmd_mul)

    p = sub.add_parser("div", parents=[common], help="divide by a single digit")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--method", choices=("exact", "general"), default="general")
    p.set_defaults(handler=cmd_div)

    p = sub.add_parser("encode", parents=[common], help="draw an integer as grid points")
    p.add_argument("n")
    p.set_defaults(handler=cmd_encode)

    p = sub.add_parser("verify", parents=[common], help="check the grid rules against integers")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true", help="run every claim (default)")
    group.add_argument("--claim", action="append", choices=verify.claim_names(),
                       metavar="ID", help="run one claim; repeatable")
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=verify.DEFAULT_SAMPLES,
                   help="random cases per engine claim")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("render", help="draw a saved trace")
    p.add_argument("--in", dest="input", required=True, metavar="TRACEFILE")
    p.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    p.add_argument("--refinement", type=int, default=1)
    p.add_argument("--no-families", action="store_true")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(handler=cmd_render, trace=False)
    return parser


def _text(doc: dict | None, text: str, as_json: bool) -> str:
    if as_json and doc is not None:
        return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"
    if doc is None or doc["op"] == "verify":
        return text if text.endswith("\n") else text + "\n"
    trace = StepTrace.from_list(doc["trace"])
    return f"{text}\n\n{render(trace)}"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        return
    if hasattr(sys.stdout, "reconfigure"):
        try:
            sys.stdout.reconfigure(encoding="utf-8")
        except (ValueError, OSError):
            pass
    sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "refinement", 1) < 1:
            raise UsageError("--refinement must be at least 1")
        doc, text = args.handler(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ExprError as e:
        print(f"error: {e}\n{e.pointer()}", file=sys.stderr)
        return 2
    except _Failed as e:
        _emit(_text(e.doc, e.text, args.trace), args.out)
        return 1
    except (ArithmeticError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    _emit(_text(doc, text, args.trace), args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
