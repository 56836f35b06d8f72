"""Integer expressions with + - x / for the command line.

Multiplication and division bind tighter than addition and subtraction;
everything is left associative.  Numbers may carry a sign.  ``*`` and ``/``
are accepted for the multiplication and division signs, and the Unicode
minus sign for ``-``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

ALIASES = {"*": "×", "/": "÷", "−": "-", "x": "×"}
OPERATORS = "+-×÷"


class ExprError(ValueError):
    """Malformed expression; ``pos`` is the 0-based offset of the problem."""

    def __init__(self, message: str, pos: int, source: str = ""):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos
        self.source = source

    def pointer(self) -> str:
        """The source line with a caret under the offending character."""
        return f"{self.source}\n{' ' * self.pos}^"


@dataclass(frozen=True)
class Num:
    value: int
    pos: int = 0


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    pos: int = 0


Node = Union[Num, BinOp]


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "op" or "end"
    text: str
    pos: int


def tokenize(src: str) -> list[Token]:
    out: list[Token] = []
    i = 0
    while i < len(src):
        ch = src[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            out.append(Token("num", src[i:j], i))
            i = j
        elif ch in OPERATORS or ch in ALIASES:
            out.append(Token("op", ALIASES.get(ch, ch), i))
            i += 1
        else:
            raise ExprError(f"unexpected character {ch!r}", i, src)
    out.append(Token("end", "", len(src)))
    return out


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = tokenize(src)
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, message: str, tok: Token) -> ExprError:
        return ExprError(message, tok.pos, self.src)

    def expr(self) -> Node:
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take()
            node = BinOp(op.text, node, self.term(), op.pos)
        return node

    def term(self) -> Node:
        node = self.number()
        while self.peek().kind == "op" and self.peek().text in "×÷":
            op = self.take()
            node = BinOp(op.text, node, self.number(), op.pos)
        return node

    def number(self) -> Num:
        tok = self.peek()
        sign = 1
        if tok.kind == "op" and tok.text in "+-":
            self.take()
            sign = -1 if tok.text == "-" else 1
            nxt = self.peek()
            if nxt.kind != "num":
                raise self.fail("expected a number after the sign", nxt)
            self.take()
            return Num(sign * int(nxt.text), tok.pos)
        if tok.kind != "num":
            what = "end of input" if tok.kind == "end" else f"{tok.text!r}"
            raise self.fail(f"expected a number, found {what}", tok)
        self.take()
        return Num(int(tok.text), tok.pos)


def parse(src: str) -> Node:
    p = _Parser(src)
    if p.peek().kind == "end":
        raise ExprError("empty expression", 0, src)
    node = p.expr()
    if p.peek().kind != "end":
        raise p.fail(f"unexpected {p.peek().text!r}", p.peek())
    return node


def digit_chain(node: Node) -> list[int] | None:
    """The signed digits of a pure ``d +- d +- ...`` chain, else None.

    Such chains are walked digit by digit from 0.
    """
    terms: list[int] = []

    def walk(n: Node, sign: int) -> bool:
        if isinstance(n, Num):
            if abs(n.value) > 9:
                return False
            terms.append(sign * n.value)
            return True
        if n.op not in "+-":
            return False
        return walk(n.left, sign) and walk(n.right, sign if n.op == "+" else -sign)

    if isinstance(node, BinOp) and node.op in "+-":
        # only the left spine may nest; a right operand is always a number here
        return terms if walk(node, 1) else None
    return None


def evaluate(node: Node) -> int:
    """Plain integer value; division must be exact."""
    if isinstance(node, Num):
        return node.value
    a, b = evaluate(node.left), evaluate(node.right)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "×":
        return a * b
    if b == 0:
        raise ZeroDivisionError("division by zero")
    q, r = divmod(abs(a), abs(b))
    if r:
        raise ArithmeticError(f"{a} ÷ {b} is not exact")
    return q if (a < 0) == (b < 0) else -q
