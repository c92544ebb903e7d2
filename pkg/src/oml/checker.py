"""Exhaustive equation / Horn-condition checking over finite models.

A condition is ``hyp & hyp & ... => conclusion`` where each atom is an
equation ``lhs = rhs``, an order claim ``lhs < rhs`` (meaning <=), or a
commutation claim ``xCy``.  Checking enumerates every valuation of the
declared variables into the model, in lexicographic order (variables in
declaration order, elements in model index order), and reports the first
valuation that satisfies all hypotheses but not the conclusion.

``xCy`` is evaluated as x = (x^y) v (x^y'); the other two textbook forms
of the commutation relation are available through :func:`commutes` in
debug mode, which insists that all three agree on orthomodular models.

Valuation spaces may be partitioned across worker processes; workers
report their first local counterexample and the reducer keeps the
globally first one, so results do not depend on the worker count.
"""

from __future__ import annotations

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .expr import Bin, Const, Expr, Neg, OpCode, Var, parse, variables
from .models import OrthoModel

__all__ = [
    "Equal", "Leq", "Commutes", "Condition", "Counterexample",
    "parse_condition", "commutes", "check_equation", "check_horn",
    "scan_mixed_distributivity", "model_op_table",
]


@dataclass(frozen=True)
class Equal:
    lhs: Expr
    rhs: Expr


@dataclass(frozen=True)
class Leq:
    lhs: Expr
    rhs: Expr


@dataclass(frozen=True)
class Commutes:
    x: str
    y: str


Atom = Equal | Leq | Commutes


@dataclass(frozen=True)
class Condition:
    variables: tuple[str, ...]
    hypotheses: tuple[Atom, ...]
    conclusion: Atom

    def __post_init__(self) -> None:
        declared = set(self.variables)
        for atom in (*self.hypotheses, self.conclusion):
            if isinstance(atom, Commutes):
                used = {atom.x, atom.y}
            else:
                used = set(variables(atom.lhs)) | set(variables(atom.rhs))
            if not used <= declared:
                raise ValueError(
                    f"undeclared variable(s) {sorted(used - declared)} in condition"
                )


@dataclass(frozen=True)
class Counterexample:
    assignment: tuple[tuple[str, str], ...]   # (variable, element label)

    def __str__(self) -> str:
        return ", ".join(f"{v}={x}" for v, x in self.assignment)


_COMMUTES_RE = re.compile(r"^\s*([a-z])\s*C\s*([a-z])\s*$")


def _split_top(text: str, seps: str) -> tuple[str, str, str] | None:
    depth = 0
    for pos, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in seps:
            return text[:pos], ch, text[pos + 1:]
    return None


def _parse_atom(text: str) -> Atom:
    m = _COMMUTES_RE.match(text)
    if m:
        return Commutes(m.group(1), m.group(2))
    split = _split_top(text, "=<")
    if split is None:
        raise ValueError(f"atom {text!r} has no top-level '=', '<' or 'C'")
    lhs, sep, rhs = split
    if sep == "=":
        return Equal(parse(lhs.strip()), parse(rhs.strip()))
    return Leq(parse(lhs.strip()), parse(rhs.strip()))


def parse_condition(text: str) -> Condition:
    """Parse ``hyp & ... => concl`` (or a bare conclusion); variables are
    declared in order of first appearance."""
    if "=>" in text:
        hyp_text, concl_text = text.split("=>", 1)
        if "=>" in concl_text:
            raise ValueError("more than one '=>' in condition")
        hyps = tuple(_parse_atom(h) for h in hyp_text.split("&") if h.strip())
    else:
        concl_text = text
        hyps = ()
    concl = _parse_atom(concl_text)
    order: list[str] = []
    for atom in (*hyps, concl):
        names = (
            (atom.x, atom.y) if isinstance(atom, Commutes)
            else variables(atom.lhs) + variables(atom.rhs)
        )
        for nm in names:
            if nm not in order:
                order.append(nm)
    return Condition(tuple(order), hyps, concl)


# ---------------------------------------------------------------------------
# Per-model operation tables and expression compilation
# ---------------------------------------------------------------------------

def _imp_on(m: OrthoModel, i: int, x: int, y: int) -> int:
    jn, mt, ng = m.join, m.meet, m.complement
    nx, ny = ng[x], ng[y]
    if i == 0:
        return jn[nx][y]
    if i == 1:
        return jn[nx][mt[x][y]]
    if i == 2:
        return jn[y][mt[ny][nx]]
    if i == 3:
        return jn[jn[mt[nx][y]][mt[nx][ny]]][mt[x][jn[nx][y]]]
    if i == 4:
        return jn[jn[mt[y][nx]][mt[y][x]]][mt[ny][jn[y][nx]]]
    return jn[jn[mt[x][y]][mt[nx][y]]][mt[nx][ny]]


def _op_on(m: OrthoModel, op: OpCode, x: int, y: int) -> int:
    if op.family == "imp":
        return _imp_on(m, op.index, x, y)
    if op.family == "join":
        return m.join[x][y] if op.index == 0 else _imp_on(m, op.index, m.complement[x], y)
    if op.family == "meet":
        if op.index == 0:
            return m.meet[x][y]
        return m.complement[_imp_on(m, op.index, x, m.complement[y])]
    return m.meet[_imp_on(m, op.index, x, y)][_imp_on(m, 0, y, x)]


@lru_cache(maxsize=None)
def model_op_table(m: OrthoModel, op: OpCode) -> tuple[tuple[int, ...], ...]:
    """n x n table of ``op`` over the model's element indices."""
    return tuple(
        tuple(_op_on(m, op, x, y) for y in range(m.n)) for x in range(m.n)
    )


def _compile(e: Expr, m: OrthoModel, var_slot: dict[str, int]) -> list:
    """Postfix program: ints push variable slots, (0, c) pushes a constant,
    (1,) negates, (2, table) applies a binary table."""
    prog: list = []

    def walk(t: Expr) -> None:
        if isinstance(t, Var):
            prog.append(var_slot[t.name])
        elif isinstance(t, Const):
            prog.append((0, m.one if t.one else m.zero))
        elif isinstance(t, Neg):
            walk(t.child)
            prog.append((1,))
        else:
            walk(t.left)
            walk(t.right)
            prog.append((2, model_op_table(m, t.op)))

    walk(e)
    return prog


def _run(prog: list, valuation: tuple[int, ...], complement: tuple[int, ...]) -> int:
    stack: list[int] = []
    push = stack.append
    for ins in prog:
        if isinstance(ins, int):
            push(valuation[ins])
        elif ins[0] == 2:
            y = stack.pop()
            stack[-1] = ins[1][stack[-1]][y]
        elif ins[0] == 1:
            stack[-1] = complement[stack[-1]]
        else:
            push(ins[1])
    return stack[0]


def commutes(m: OrthoModel, x: int, y: int, debug: bool = False) -> bool:
    """x = (x^y) v (x^y') in the model (the projection form of commutation)."""
    ny = m.complement[y]
    third = m.join[m.meet[x][y]][m.meet[x][ny]] == x
    if debug:
        nx = m.complement[x]
        first = (
            m.join[m.join[m.meet[x][y]][m.meet[x][ny]]][
                m.join[m.meet[nx][y]][m.meet[nx][ny]]
            ]
            == m.one
        )
        second = m.leq(m.meet[x][m.join[nx][y]], y)
        if m.orthomodular and not (first == second == third):
            raise AssertionError(
                f"{m.name}: commutation forms disagree at "
                f"{m.labels[x]}, {m.labels[y]}: {first}, {second}, {third}"
            )
    return third


def _atom_checker(atom: Atom, m: OrthoModel, var_slot: dict[str, int]):
    if isinstance(atom, Commutes):
        xi, yi = var_slot[atom.x], var_slot[atom.y]
        jn, mt, ng = m.join, m.meet, m.complement

        def check_c(val: tuple[int, ...]) -> bool:
            x, y = val[xi], val[yi]
            return jn[mt[x][y]][mt[x][ng[y]]] == x

        return check_c
    lp = _compile(atom.lhs, m, var_slot)
    rp = _compile(atom.rhs, m, var_slot)
    ng = m.complement
    if isinstance(atom, Equal):
        def check_eq(val: tuple[int, ...]) -> bool:
            return _run(lp, val, ng) == _run(rp, val, ng)
        return check_eq

    up = m.up

    def check_le(val: tuple[int, ...]) -> bool:
        return bool(up[_run(lp, val, ng)] >> _run(rp, val, ng) & 1)

    return check_le


def _first_violation(m: OrthoModel, cond: Condition, start: int, stop: int) -> int | None:
    """Index of the first violating valuation in [start, stop), or None."""
    var_slot = {v: i for i, v in enumerate(cond.variables)}
    hyps = [_atom_checker(h, m, var_slot) for h in cond.hypotheses]
    concl = _atom_checker(cond.conclusion, m, var_slot)
    k = len(cond.variables)
    n = m.n
    for idx in range(start, stop):
        rem = idx
        val = [0] * k
        for pos in range(k - 1, -1, -1):
            rem, val[pos] = divmod(rem, n)
        tval = tuple(val)
        if all(h(tval) for h in hyps) and not concl(tval):
            return idx
    return None


def _violation_worker(args) -> int | None:
    m, cond, start, stop = args
    return _first_violation(m, cond, start, stop)


def _index_to_counterexample(m: OrthoModel, cond: Condition, idx: int) -> Counterexample:
    k = len(cond.variables)
    val = [0] * k
    rem = idx
    for pos in range(k - 1, -1, -1):
        rem, val[pos] = divmod(rem, m.n)
    return Counterexample(
        tuple((v, m.labels[val[i]]) for i, v in enumerate(cond.variables))
    )


def check_horn(m: OrthoModel, cond: Condition, jobs: int = 1) -> Counterexample | None:
    """None when every hypothesis-satisfying valuation satisfies the
    conclusion; otherwise the lexicographically first counterexample."""
    total = m.n ** len(cond.variables)
    if jobs <= 1 or total < 4096:
        idx = _first_violation(m, cond, 0, total)
    else:
        chunk = -(-total // jobs)
        tasks = [
            (m, cond, lo, min(lo + chunk, total)) for lo in range(0, total, chunk)
        ]
        idx = None
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for found in pool.map(_violation_worker, tasks):
                if found is not None:
                    idx = found
                    break  # chunks are scanned in order; first hit is global minimum
    if idx is None:
        return None
    return _index_to_counterexample(m, cond, idx)


def check_equation(m: OrthoModel, cond: Condition, jobs: int = 1) -> Counterexample | None:
    """check_horn restricted to hypothesis-free conditions."""
    if cond.hypotheses:
        raise ValueError("check_equation expects a condition without hypotheses")
    return check_horn(m, cond, jobs=jobs)


# ---------------------------------------------------------------------------
# The 6^5 mixed-distributivity scan
# ---------------------------------------------------------------------------

def _scan_range(m: OrthoModel, dual: bool, start: int, stop: int) -> list[tuple[int, ...]]:
    from .expr import join as join_op, meet as meet_op

    if dual:
        outer = [model_op_table(m, meet_op(i)) for i in range(6)]
        inner = [model_op_table(m, join_op(i)) for i in range(6)]
    else:
        outer = [model_op_table(m, join_op(i)) for i in range(6)]
        inner = [model_op_table(m, meet_op(i)) for i in range(6)]
    elems = range(m.n)
    survivors = []
    for code in range(start, stop):
        i, rest = divmod(code, 6 ** 4)
        j, rest = divmod(rest, 6 ** 3)
        k, rest = divmod(rest, 36)
        l, mm = divmod(rest, 6)
        oi, ij, ok, il, om = outer[i], inner[j], outer[k], inner[l], outer[mm]
        good = True
        for a in elems:
            oia, oka, oma = oi[a], ok[a], om[a]
            for b in elems:
                okab = oka[b]
                ijb = ij[b]
                ilrow = il[okab]
                for c in elems:
                    if oia[ijb[c]] != ilrow[oma[c]]:
                        good = False
                        break
                if not good:
                    break
            if not good:
                break
        if good:
            survivors.append((i, j, k, l, mm))
    return survivors


def _scan_worker(args) -> list[tuple[int, ...]]:
    m, dual, start, stop = args
    return _scan_range(m, dual, start, stop)


def scan_mixed_distributivity(
    m: OrthoModel, dual: bool = False, jobs: int = 1
) -> list[tuple[int, int, int, int, int]]:
    """All (i,j,k,l,m') with a u_i (b n_j c) = (a u_k b) n_l (a u_m' c)
    true under every valuation; ``dual`` swaps the join and meet families."""
    total = 6 ** 5
    if jobs <= 1:
        return _scan_range(m, dual, 0, total)
    chunk = -(-total // jobs)
    tasks = [(m, dual, lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
    out: list[tuple[int, ...]] = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_scan_worker, tasks):
            out.extend(part)
    return out
