"""The free orthomodular lattice on two generators and canonical forms.

Every two-variable expression over an orthomodular lattice takes one of 96
values in the free OML F2, which factors as the product of the 16-element
Boolean algebra 2^4 and the six-element lattice MO2.  An element is stored
as a pair:

* ``bool_part`` -- a 4-bit mask over the atoms [a^b, a^-b, -a^b, -a^-b]
  (bit 0 is a^b, bit 3 is -a^-b);
* ``mo2_part``  -- one of 0..5 standing for bottom < x < x' < y < y' < top.

The generators are a = ({a^b, a^-b}, x) and b = ({a^b, -a^b}, y).  Both
components are evaluated independently; equality of the pairs decides
equality of expressions in every orthomodular lattice.

The canonical table numbers the 96 elements 1..96 ordered by
(bool_part, mo2_part) and assigns each a minimal printable expression over
{v, ^, -}, minimal by (variable occurrences, negations, text) with the
lexicographically smallest text used to break ties.  Where the classical
literature's table number for an element is known, it is carried along as
``beran_xref``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .expr import (
    Bin, Const, Expr, Neg, OpCode, Var,
    expand, parse, variables,
)

__all__ = [
    "MO2_NEG", "MO2_JOIN", "MO2_MEET",
    "F2Element", "CanonicalForm", "ThirdVariableError",
    "GEN_A", "GEN_B", "BOTTOM", "TOP",
    "f2_neg", "f2_join", "f2_meet", "eval_expr", "eval_f2",
    "closure_of_generators", "canonical_table", "reduce", "equal_oml",
    "classical_elements", "is_classical",
    "element_index", "element_at", "neg_table", "op_table", "generator_indices",
]

# MO2 arithmetic over indices 0..5 = bottom, x, x', y, y', top.
MO2_NEG = (5, 2, 1, 4, 3, 0)


def _mo2_join(p: int, q: int) -> int:
    if p == 0 or p == q:
        return q
    if q == 0:
        return p
    return 5


MO2_JOIN = tuple(tuple(_mo2_join(p, q) for q in range(6)) for p in range(6))
MO2_MEET = tuple(
    tuple(MO2_NEG[MO2_JOIN[MO2_NEG[p]][MO2_NEG[q]]] for q in range(6))
    for p in range(6)
)


class ThirdVariableError(ValueError):
    """Raised for expressions mentioning a variable other than a and b."""


@dataclass(frozen=True)
class F2Element:
    bool_part: int
    mo2_part: int

    def __post_init__(self) -> None:
        if not 0 <= self.bool_part <= 15:
            raise ValueError("bool_part out of range 0..15")
        if not 0 <= self.mo2_part <= 5:
            raise ValueError("mo2_part out of range 0..5")


GEN_A = F2Element(0b0011, 1)
GEN_B = F2Element(0b0101, 3)
BOTTOM = F2Element(0, 0)
TOP = F2Element(15, 5)


def f2_neg(e: F2Element) -> F2Element:
    return F2Element(e.bool_part ^ 15, MO2_NEG[e.mo2_part])


def f2_join(e: F2Element, f: F2Element) -> F2Element:
    return F2Element(e.bool_part | f.bool_part, MO2_JOIN[e.mo2_part][f.mo2_part])


def f2_meet(e: F2Element, f: F2Element) -> F2Element:
    return F2Element(e.bool_part & f.bool_part, MO2_MEET[e.mo2_part][f.mo2_part])


def eval_expr(e: Expr, env: dict[str, F2Element]) -> F2Element:
    """Evaluate ``e`` in F2 with the given variable assignment."""
    x = expand(e)

    def go(t: Expr) -> F2Element:
        if isinstance(t, Var):
            try:
                return env[t.name]
            except KeyError:
                raise ThirdVariableError(
                    f"variable {t.name!r} has no assignment; only {sorted(env)} allowed"
                ) from None
        if isinstance(t, Const):
            return TOP if t.one else BOTTOM
        if isinstance(t, Neg):
            return f2_neg(go(t.child))
        l = go(t.left)
        return {"join": f2_join, "meet": f2_meet}[t.op.family](l, go(t.right))

    return go(x)


def eval_f2(e: Expr) -> F2Element:
    """Image of a two-variable expression under the generator assignment."""
    extra = set(variables(e)) - {"a", "b"}
    if extra:
        raise ThirdVariableError(
            f"two-variable reduction only; found variable(s) {sorted(extra)}"
        )
    return eval_expr(e, {"a": GEN_A, "b": GEN_B})


def closure_of_generators() -> set[F2Element]:
    """Close {a, b} under complement and join; the result has 96 elements."""
    done: set[F2Element] = set()
    todo = [GEN_A, GEN_B]
    while todo:
        e = todo.pop()
        if e in done:
            continue
        done.add(e)
        todo.append(f2_neg(e))
        for f in list(done):
            todo.append(f2_join(e, f))
            todo.append(f2_join(f, e))
    if len(done) != 96:
        raise AssertionError(
            f"closure of the generators has {len(done)} elements, expected 96; "
            "the component arithmetic tables are wrong"
        )
    return done


# ---------------------------------------------------------------------------
# Integer-indexed arithmetic.  Element (bool_part, mo2_part) <-> index
# bool_part*6 + mo2_part in 0..95; canonical numbering is index+1.
# ---------------------------------------------------------------------------

def element_index(e: F2Element) -> int:
    return e.bool_part * 6 + e.mo2_part


def element_at(i: int) -> F2Element:
    return F2Element(i // 6, i % 6)


@lru_cache(maxsize=None)
def neg_table() -> tuple[int, ...]:
    return tuple(element_index(f2_neg(element_at(i))) for i in range(96))


def _int_join(x: int, y: int) -> int:
    return ((x // 6) | (y // 6)) * 6 + MO2_JOIN[x % 6][y % 6]


def _int_meet(x: int, y: int) -> int:
    return ((x // 6) & (y // 6)) * 6 + MO2_MEET[x % 6][y % 6]


def _int_imp(i: int, x: int, y: int) -> int:
    ng = neg_table()
    jn, mt = _int_join, _int_meet
    nx, ny = ng[x], ng[y]
    if i == 0:
        return jn(nx, y)
    if i == 1:
        return jn(nx, mt(x, y))
    if i == 2:
        return jn(y, mt(ny, nx))
    if i == 3:
        return jn(jn(mt(nx, y), mt(nx, ny)), mt(x, jn(nx, y)))
    if i == 4:
        return jn(jn(mt(y, nx), mt(y, x)), mt(ny, jn(y, nx)))
    return jn(jn(mt(x, y), mt(nx, y)), mt(nx, ny))


def _int_op(op: OpCode, x: int, y: int) -> int:
    ng = neg_table()
    if op.family == "imp":
        return _int_imp(op.index, x, y)
    if op.family == "join":
        return _int_join(x, y) if op.index == 0 else _int_imp(op.index, ng[x], y)
    if op.family == "meet":
        return _int_meet(x, y) if op.index == 0 else ng[_int_imp(op.index, x, ng[y])]
    return _int_meet(_int_imp(op.index, x, y), _int_imp(0, y, x))


@lru_cache(maxsize=None)
def op_table(op: OpCode) -> tuple[tuple[int, ...], ...]:
    """96x96 value table for ``op`` over element indices."""
    return tuple(
        tuple(_int_op(op, x, y) for y in range(96)) for x in range(96)
    )


def generator_indices() -> tuple[int, int]:
    return element_index(GEN_A), element_index(GEN_B)


# ---------------------------------------------------------------------------
# Canonical table: minimal printable expressions.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CanonicalForm:
    index: int                     # 1..96, stable internal numbering
    element: F2Element
    text: str                      # minimal expression over {v, ^, -}
    beran_xref: int | None = None  # literature table number where known


# Table numbers that the source material pins to individual elements.
_XREF_EXPRS: dict[int, str] = {
    1: "0",
    96: "1",
    22: "a",
    39: "b",
    58: "-b",
    75: "-a",
    6: "((a^b)v(a^-b))",
    9: "((a^b)v(-a^-b))",
    88: "-((a^b)v(-a^-b))",
    30: "(a>3b)",
}


def _minimal_texts() -> list[str]:
    """Minimal text per element index, by levels (occurrences, negations).

    Within a level every rendered text has the same length, so ties are
    broken by plain string comparison.  Constants are handled up front:
    bottom and top print as "0" and "1", never as e.g. "(a^-a)".
    """
    jn, mt = _int_join, _int_meet
    best: list[str | None] = [None] * 96
    best[element_index(BOTTOM)] = "0"
    best[element_index(TOP)] = "1"
    remaining = 94

    # level -> (any-root texts, non-negation-root texts), each element -> text
    levels: dict[tuple[int, int], tuple[list[str | None], list[str | None]]] = {}
    ia, ib = generator_indices()

    for v in range(1, 11):
        for n in range(0, 2 * v):
            full: list[str | None] = [None] * 96
            bare: list[str | None] = [None] * 96

            def offer(idx: int, text: str) -> None:
                if full[idx] is None or text < full[idx]:
                    full[idx] = text
                if not text.startswith("-") and (bare[idx] is None or text < bare[idx]):
                    bare[idx] = text

            if v == 1:
                if n == 0:
                    offer(ia, "a")
                    offer(ib, "b")
                elif n == 1:
                    offer(neg_table()[ia], "-a")
                    offer(neg_table()[ib], "-b")
            else:
                if n >= 1 and (v, n - 1) in levels:
                    _, sub = levels[(v, n - 1)]
                    ng = neg_table()
                    for idx in range(96):
                        t = sub[idx]
                        if t is not None:
                            offer(ng[idx], "-" + t)
                for v1 in range(1, v):
                    v2 = v - v1
                    for n1 in range(0, n + 1):
                        n2 = n - n1
                        if n1 > 2 * v1 - 1 or n2 > 2 * v2 - 1:
                            continue
                        lt = levels.get((v1, n1))
                        rt = levels.get((v2, n2))
                        if lt is None or rt is None:
                            continue
                        lfull, rfull = lt[0], rt[0]
                        for i1 in range(96):
                            t1 = lfull[i1]
                            if t1 is None:
                                continue
                            for i2 in range(96):
                                t2 = rfull[i2]
                                if t2 is None:
                                    continue
                                offer(jn(i1, i2), f"({t1}v{t2})")
                                offer(mt(i1, i2), f"({t1}^{t2})")
            levels[(v, n)] = (full, bare)
            for idx in range(96):
                if full[idx] is not None and best[idx] is None:
                    best[idx] = full[idx]
                    remaining -= 1
            if remaining == 0:
                return [t for t in best if t is not None]
    raise AssertionError("minimal-expression search did not cover all 96 elements")


@lru_cache(maxsize=None)
def canonical_table() -> tuple[CanonicalForm, ...]:
    """The 96 canonical forms, ordered by (bool_part, mo2_part)."""
    closure_of_generators()  # sanity: arithmetic really generates all 96
    texts = _minimal_texts()
    xref: dict[int, int] = {}
    for number, src in _XREF_EXPRS.items():
        xref[element_index(eval_f2(parse(src)))] = number
    forms = []
    for i in range(96):
        forms.append(
            CanonicalForm(
                index=i + 1,
                element=element_at(i),
                text=texts[i],
                beran_xref=xref.get(i),
            )
        )
    return tuple(forms)


def reduce(e: Expr) -> CanonicalForm:
    """Canonical form of a two-variable expression."""
    return canonical_table()[element_index(eval_f2(e))]


def equal_oml(e1: Expr, e2: Expr) -> bool:
    """True iff e1 = e2 holds in every orthomodular lattice."""
    return eval_f2(e1) == eval_f2(e2)


# The sixteen classical two-variable operations; everything else is quantum
# and collapses onto one of these when the variables commute.
_CLASSICAL_TEXTS = (
    "0", "1", "a", "b", "-a", "-b",
    "(avb)", "(av-b)", "(-avb)", "(-av-b)",
    "(a^b)", "(a^-b)", "(-a^b)", "(-a^-b)",
    "((a^b)v(-a^-b))", "-((a^b)v(-a^-b))",
)


@lru_cache(maxsize=None)
def classical_elements() -> frozenset[F2Element]:
    els = frozenset(eval_f2(parse(t)) for t in _CLASSICAL_TEXTS)
    if len(els) != 16:
        raise AssertionError("classical operations do not give 16 distinct elements")
    return els


def is_classical(e: F2Element) -> bool:
    return e in classical_elements()
