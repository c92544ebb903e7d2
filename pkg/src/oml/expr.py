"""Lattice expressions: parsing, printing, and expansion to {negation, join, meet}.

The ASCII grammar is fully parenthesized (no precedence):

    expr  := var | const | "-" expr | "(" expr binop expr ")"
    var   := one lowercase letter
    const := "0" | "1"
    binop := "v" | "^" | ">"i | "u"i | "n"i | "="i      (i = 0..5)

``v``/``^`` are lattice join/meet (identical to ``u0``/``n0``).  The indexed
families are the six implications ``>i``, disjunctions ``ui``, conjunctions
``ni`` and identities ``=i``; index 0 is the classical operation of each
family, indices 1..5 are the quantum ones.  ``I`` is accepted as an alias
for ``>1`` (the Sasaki hook) and a bare ``=`` for ``=5``, so traditional
command lines parse unchanged.  Whitespace is ignored everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "OpCode", "Expr", "Var", "Const", "Neg", "Bin",
    "JOIN", "MEET", "imp", "join", "meet", "iden",
    "ALL_BINOPS", "DERIVED_BINOPS",
    "ParseError", "parse", "render", "expand", "variables", "neg",
]

_FAMILIES = ("join", "meet", "imp", "iden")


@dataclass(frozen=True)
class OpCode:
    """A binary operation: one of four families, indexed 0..5."""

    family: str
    index: int

    def __post_init__(self) -> None:
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown operation family {self.family!r}")
        if not 0 <= self.index <= 5:
            raise ValueError(f"operation index {self.index} out of range 0..5")

    @property
    def token(self) -> str:
        """Canonical grammar token for this operation."""
        if self == JOIN:
            return "v"
        if self == MEET:
            return "^"
        ch = {"imp": ">", "join": "u", "meet": "n", "iden": "="}[self.family]
        return f"{ch}{self.index}"

    @property
    def is_primitive(self) -> bool:
        return self.index == 0 and self.family in ("join", "meet")


JOIN = OpCode("join", 0)
MEET = OpCode("meet", 0)


def imp(i: int) -> OpCode:
    return OpCode("imp", i)


def join(i: int) -> OpCode:
    return OpCode("join", i)


def meet(i: int) -> OpCode:
    return OpCode("meet", i)


def iden(i: int) -> OpCode:
    return OpCode("iden", i)


ALL_BINOPS = tuple(
    OpCode(f, i) for f in _FAMILIES for i in range(6)
)
DERIVED_BINOPS = tuple(op for op in ALL_BINOPS if not op.is_primitive)


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    one: bool


@dataclass(frozen=True)
class Neg:
    child: "Expr"


@dataclass(frozen=True)
class Bin:
    op: OpCode
    left: "Expr"
    right: "Expr"


Expr = Var | Const | Neg | Bin


class ParseError(ValueError):
    """Syntax error; ``position`` is the 0-based offset into the input."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        if ch:
            self.pos += 1
        return ch

    def expr(self) -> Expr:
        ch = self.peek()
        if ch == "":
            raise ParseError("unexpected end of input", self.pos)
        if ch == "-":
            self.take()
            return Neg(self.expr())
        if ch in "01":
            self.take()
            return Const(ch == "1")
        if ch == "(":
            self.take()
            left = self.expr()
            op = self.binop()
            right = self.expr()
            if self.peek() != ")":
                raise ParseError("expected ')'", self.pos)
            self.take()
            return Bin(op, left, right)
        if ch.isalpha() and ch.islower():
            self.take()
            return Var(ch)
        raise ParseError(f"unexpected character {ch!r}", self.pos)

    def binop(self) -> OpCode:
        at = self.pos
        ch = self.take()
        if ch == "v":
            return JOIN
        if ch == "^":
            return MEET
        if ch == "I":
            return imp(1)
        if ch in ">un=":
            family = {">": "imp", "u": "join", "n": "meet", "=": "iden"}[ch]
            nxt = self.peek()
            if nxt.isdigit():
                self.take()
                if not 0 <= int(nxt) <= 5:
                    raise ParseError(f"operation index {nxt} out of range 0..5", self.pos - 1)
                return OpCode(family, int(nxt))
            if ch == "=":
                return iden(5)
            raise ParseError(f"operator {ch!r} needs an index 0..5", self.pos)
        if ch == "":
            raise ParseError("unexpected end of input", self.pos)
        raise ParseError(f"unknown operator {ch!r}", at)


def parse(text: str) -> Expr:
    """Parse ``text`` into an expression tree; raise ParseError on bad input."""
    p = _Parser(text)
    e = p.expr()
    p.skip_ws()
    if p.pos != len(text):
        raise ParseError("trailing input", p.pos)
    return e


def render(e: Expr) -> str:
    """Fully parenthesized ASCII form; ``parse(render(e))`` rebuilds ``e``."""
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Const):
        return "1" if e.one else "0"
    if isinstance(e, Neg):
        return "-" + render(e.child)
    return f"({render(e.left)}{e.op.token}{render(e.right)})"


def variables(e: Expr) -> tuple[str, ...]:
    """Variable names in order of first occurrence."""
    seen: list[str] = []

    def walk(x: Expr) -> None:
        if isinstance(x, Var):
            if x.name not in seen:
                seen.append(x.name)
        elif isinstance(x, Neg):
            walk(x.child)
        elif isinstance(x, Bin):
            walk(x.left)
            walk(x.right)

    walk(e)
    return tuple(seen)


def neg(e: Expr) -> Expr:
    """Negation with double negations collapsed (used when building expansions)."""
    return e.child if isinstance(e, Neg) else Neg(e)


def _jn(a: Expr, b: Expr) -> Expr:
    return Bin(JOIN, a, b)


def _mt(a: Expr, b: Expr) -> Expr:
    return Bin(MEET, a, b)


def _imp_primitive(i: int, a: Expr, b: Expr) -> Expr:
    # The six implications written over {', v, ^} only.
    na, nb = neg(a), neg(b)
    if i == 0:
        return _jn(na, b)
    if i == 1:
        return _jn(na, _mt(a, b))
    if i == 2:
        # b' ->1 a'
        return _jn(b, _mt(nb, na))
    if i == 3:
        return _jn(_jn(_mt(na, b), _mt(na, nb)), _mt(a, _jn(na, b)))
    if i == 4:
        # b' ->3 a'  (contraposition of ->3, as ->2 is of ->1)
        return _jn(_jn(_mt(b, na), _mt(b, a)), _mt(nb, _jn(b, na)))
    if i == 5:
        return _jn(_jn(_mt(a, b), _mt(na, b)), _mt(na, nb))
    raise ValueError(f"implication index {i} out of range 0..5")


def expand_binop(op: OpCode, a: Expr, b: Expr) -> Expr:
    """One application of ``op`` to already-expanded operands, in primitives."""
    if op.family == "imp":
        return _imp_primitive(op.index, a, b)
    if op.family == "join":
        if op.index == 0:
            return _jn(a, b)
        return _imp_primitive(op.index, neg(a), b)
    if op.family == "meet":
        if op.index == 0:
            return _mt(a, b)
        return neg(_imp_primitive(op.index, a, neg(b)))
    # identity family: second factor is always the classical implication
    return _mt(_imp_primitive(op.index, a, b), _imp_primitive(0, b, a))


def expand(e: Expr) -> Expr:
    """Rewrite every derived operation; output uses only Var/Const/Neg/join/meet."""
    if isinstance(e, (Var, Const)):
        return e
    if isinstance(e, Neg):
        return Neg(expand(e.child))
    left = expand(e.left)
    right = expand(e.right)
    if e.op.is_primitive:
        return Bin(e.op, left, right)
    return expand_binop(e.op, left, right)
