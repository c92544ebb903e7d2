"""Finite ortholattice models: built-ins, Greechie diagram pasting, generation.

An :class:`OrthoModel` is a finite bounded lattice with an order-reversing
involutive complement.  Construction validates everything exhaustively:
partial-order axioms, existence of all joins and meets, the complement
laws, De Morgan, and records whether the orthomodular law a<=b =>
b = a v (a' ^ b) holds (as a flag, not a requirement, so O6-like models
remain usable).

Greechie diagrams describe pastings of Boolean blocks: each block's power
set contributes its nonempty proper subsets, and blocks sharing an atom t
are glued along the subalgebra {0, t, t', 1} (so both the shared atom and
its in-block complements become one element).  The pasted poset is not
always a lattice; when a pair of elements has no least upper bound the
construction raises :class:`NonLatticeError` naming the pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

__all__ = [
    "ModelError", "NonLatticeError", "OrthoModel",
    "mo2", "o6", "boolean",
    "GreechieDiagram", "parse_greechie", "greechie_to_lattice",
    "generate_greechie", "verify_orthomodular", "is_isomorphic",
]


class ModelError(ValueError):
    """A structure failed ortholattice validation."""


class NonLatticeError(ModelError):
    """A pair of elements has no least upper / greatest lower bound."""

    def __init__(self, message: str, pair: tuple[str, str]):
        super().__init__(message)
        self.pair = pair


@dataclass(frozen=True)
class OrthoModel:
    name: str
    labels: tuple[str, ...]
    up: tuple[int, ...]            # bit j of up[i] set iff i <= j
    complement: tuple[int, ...]
    join: tuple[tuple[int, ...], ...]
    meet: tuple[tuple[int, ...], ...]
    zero: int
    one: int
    orthomodular: bool
    distributive: bool

    @property
    def n(self) -> int:
        return len(self.labels)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def index_of(self, label: str) -> int:
        return self.labels.index(label)

    def __str__(self) -> str:
        return self.name


def _assemble(name: str, labels: list[str], up: list[int], complement: list[int]) -> OrthoModel:
    n = len(labels)
    full = (1 << n) - 1
    if len(up) != n or len(complement) != n:
        raise ModelError(f"{name}: inconsistent component sizes")
    for i in range(n):
        if not up[i] >> i & 1:
            raise ModelError(f"{name}: order not reflexive at {labels[i]}")
    for i in range(n):
        for j in range(n):
            if i != j and up[i] >> j & 1 and up[j] >> i & 1:
                raise ModelError(f"{name}: order not antisymmetric on {labels[i]}, {labels[j]}")
            if up[i] >> j & 1 and up[j] & ~up[i]:
                raise ModelError(f"{name}: order not transitive through {labels[j]}")

    zeros = [i for i in range(n) if up[i] == full]
    ones = [i for i in range(n) if all(up[j] >> i & 1 for j in range(n))]
    if len(zeros) != 1 or len(ones) != 1:
        raise ModelError(f"{name}: not bounded (least: {zeros}, greatest: {ones})")
    zero, one = zeros[0], ones[0]

    down = [0] * n
    for i in range(n):
        for j in range(n):
            if up[j] >> i & 1:
                down[i] |= 1 << j

    c = complement
    for i in range(n):
        if c[c[i]] != i:
            raise ModelError(f"{name}: complement not an involution at {labels[i]}")
        for j in range(n):
            if up[i] >> j & 1 and not up[c[j]] >> c[i] & 1:
                raise ModelError(f"{name}: complement not order-reversing on {labels[i]} <= {labels[j]}")
    if c[zero] != one:
        raise ModelError(f"{name}: complement of 0 is not 1")

    def bound(i: int, j: int, cone: list[int]) -> int:
        # least element of the common upper cone (or dually); -1 when absent
        common = cone[i] & cone[j]
        m = common
        while m:
            k = (m & -m).bit_length() - 1
            if common & ~cone[k] == 0:
                return k
            m &= m - 1
        return -1

    join = [[0] * n for _ in range(n)]
    meet = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            ub = bound(i, j, up)
            if ub < 0:
                raise NonLatticeError(
                    f"{name}: {labels[i]} and {labels[j]} have no least upper bound",
                    (labels[i], labels[j]),
                )
            lb = bound(i, j, down)
            if lb < 0:
                raise NonLatticeError(
                    f"{name}: {labels[i]} and {labels[j]} have no greatest lower bound",
                    (labels[i], labels[j]),
                )
            join[i][j] = join[j][i] = ub
            meet[i][j] = meet[j][i] = lb

    for i in range(n):
        if join[i][c[i]] != one or meet[i][c[i]] != zero:
            raise ModelError(f"{name}: complement laws fail at {labels[i]}")
        for j in range(n):
            if c[join[i][j]] != meet[c[i]][c[j]]:
                raise ModelError(f"{name}: De Morgan fails on {labels[i]}, {labels[j]}")

    orthomodular = True
    for i in range(n):
        for j in range(n):
            if up[i] >> j & 1 and join[i][meet[c[i]][j]] != j:
                orthomodular = False
                break
        if not orthomodular:
            break

    distributive = True
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if meet[i][join[j][k]] != join[meet[i][j]][meet[i][k]]:
                    distributive = False
                    break
            if not distributive:
                break
        if not distributive:
            break

    return OrthoModel(
        name=name,
        labels=tuple(labels),
        up=tuple(up),
        complement=tuple(c),
        join=tuple(tuple(r) for r in join),
        meet=tuple(tuple(r) for r in meet),
        zero=zero,
        one=one,
        orthomodular=orthomodular,
        distributive=distributive,
    )


def _from_pairs(name: str, labels: list[str], pairs: set[tuple[int, int]], complement: list[int]) -> OrthoModel:
    # pairs are the covering/comparability seeds; reflexive-transitive closure here
    n = len(labels)
    up = [1 << i for i in range(n)]
    for i, j in pairs:
        up[i] |= 1 << j
    changed = True
    while changed:
        changed = False
        for i in range(n):
            m = up[i]
            acc = m
            while m:
                k = (m & -m).bit_length() - 1
                acc |= up[k]
                m &= m - 1
            if acc != up[i]:
                up[i] = acc
                changed = True
    return _assemble(name, labels, up, complement)


def mo2() -> OrthoModel:
    """The six-element lattice with two incomparable complement pairs."""
    labels = ["0", "x", "x'", "y", "y'", "1"]
    pairs = {(0, i) for i in range(6)} | {(i, 5) for i in range(6)}
    return _from_pairs("mo2", labels, pairs, [5, 2, 1, 4, 3, 0])


def o6() -> OrthoModel:
    """The benzene ring: 0 < p < q < 1 and 0 < q' < p' < 1; not orthomodular."""
    labels = ["0", "p", "q", "q'", "p'", "1"]
    pairs = {(0, i) for i in range(6)} | {(i, 5) for i in range(6)} | {(1, 2), (3, 4)}
    return _from_pairs("o6", labels, pairs, [5, 4, 3, 2, 1, 0])


def boolean(k: int) -> OrthoModel:
    """The powerset lattice on k atoms, 1 <= k <= 5."""
    if not 1 <= k <= 5:
        raise ValueError(f"boolean(k) supports 1 <= k <= 5, got {k}")
    n = 1 << k
    labels = []
    for s in range(n):
        atoms = [str(t + 1) for t in range(k) if s >> t & 1]
        labels.append("{" + ",".join(atoms) + "}")
    up = [0] * n
    for s in range(n):
        for t in range(n):
            if s & ~t == 0:
                up[s] |= 1 << t
    complement = [s ^ (n - 1) for s in range(n)]
    return _assemble(f"bool:{k}", labels, up, complement)


# ---------------------------------------------------------------------------
# Greechie diagrams
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GreechieDiagram:
    atoms: tuple[str, ...]
    blocks: tuple[tuple[str, ...], ...]

    def __str__(self) -> str:
        return " / ".join(" ".join(b) for b in self.blocks)


def _validate_diagram(blocks: list[tuple[str, ...]]) -> GreechieDiagram:
    if not blocks:
        raise ModelError("diagram has no blocks")
    seen: list[frozenset[str]] = []
    for b in blocks:
        if len(b) < 2:
            raise ModelError(f"block {' '.join(b)} has fewer than 2 atoms")
        if len(set(b)) != len(b):
            raise ModelError(f"block {' '.join(b)} repeats an atom")
        fb = frozenset(b)
        for other in seen:
            if fb == other:
                raise ModelError(f"duplicate block {' '.join(b)}")
            if fb <= other or other <= fb:
                raise ModelError(f"block {' '.join(b)} is contained in another block")
            if len(fb & other) > 1:
                raise ModelError(
                    f"blocks share {len(fb & other)} atoms: {' '.join(sorted(fb & other))}"
                )
        seen.append(fb)
    atoms: list[str] = []
    for b in blocks:
        for a in b:
            if a not in atoms:
                atoms.append(a)
    return GreechieDiagram(tuple(atoms), tuple(blocks))


def parse_greechie(text: str) -> GreechieDiagram:
    """Read a diagram: one block per line, atoms whitespace-separated.

    ``#`` starts a comment; blank lines are ignored.
    """
    blocks: list[tuple[str, ...]] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        blocks.append(tuple(line.split()))
    return _validate_diagram(blocks)


def greechie_to_lattice(d: GreechieDiagram) -> OrthoModel:
    """Paste the diagram's Boolean blocks into an ortholattice.

    Each block of size m contributes the nonempty proper subsets of its
    atoms (a copy of 2^m minus bounds); a subset is identified across
    blocks when it is the same single atom, or when it is the in-block
    complement of the same single atom.  Raises NonLatticeError when the
    pasted order has a pair without a join or meet.
    """
    blocks = [tuple(b) for b in d.blocks]
    nodes: list[tuple[int, frozenset[str]]] = []
    for bi, b in enumerate(blocks):
        bs = frozenset(b)
        for r in range(1, len(b)):
            for sub in combinations(sorted(bs), r):
                nodes.append((bi, frozenset(sub)))

    # union-find over glue keys
    parent: dict[object, object] = {}

    def find(x: object) -> object:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: object, y: object) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    def keys(bi: int, sub: frozenset[str]) -> list[object]:
        out: list[object] = [("node", bi, sub)]
        if len(sub) == 1:
            out.append(("atom", next(iter(sub))))
        rest = frozenset(blocks[bi]) - sub
        if len(rest) == 1:
            out.append(("coatom", next(iter(rest))))
        return out

    for bi, sub in nodes:
        ks = keys(bi, sub)
        for k in ks[1:]:
            union(ks[0], k)

    classes: dict[object, list[tuple[int, frozenset[str]]]] = {}
    for bi, sub in nodes:
        classes.setdefault(find(("node", bi, sub)), []).append((bi, sub))

    def label_of(members: list[tuple[int, frozenset[str]]]) -> str:
        for bi, sub in members:
            if len(sub) == 1:
                return next(iter(sub))
        for bi, sub in members:
            rest = frozenset(blocks[bi]) - sub
            if len(rest) == 1:
                return next(iter(rest)) + "'"
        bi, sub = members[0]
        return "{" + ",".join(sorted(sub)) + "}"

    reps = sorted(classes, key=lambda r: (label_of(classes[r]), str(r)))
    bot, top = "0", "1"
    if any(a in ("0", "1") for a in d.atoms):
        bot, top = "_0", "_1"
    index: dict[object, int] = {}
    labels = [bot]
    for r in reps:
        index[r] = len(labels)
        labels.append(label_of(classes[r]))
    labels.append(top)
    n = len(labels)
    zero, one = 0, n - 1

    member_of: dict[int, list[tuple[int, frozenset[str]]]] = {
        index[r]: classes[r] for r in reps
    }

    pairs: set[tuple[int, int]] = set()
    for i in range(n):
        pairs.add((zero, i))
        pairs.add((i, one))
    by_block: dict[int, list[tuple[int, frozenset[str]]]] = {}
    for el, members in member_of.items():
        for bi, sub in members:
            by_block.setdefault(bi, []).append((el, sub))
    for bi, entries in by_block.items():
        for (e1, s1) in entries:
            for (e2, s2) in entries:
                if s1 < s2:
                    pairs.add((e1, e2))

    complement = [0] * n
    complement[zero], complement[one] = one, zero
    for el, members in member_of.items():
        comp_ids = set()
        for bi, sub in members:
            rest = frozenset(blocks[bi]) - sub
            comp_ids.add(index[find(("node", bi, rest))])
        if len(comp_ids) != 1:
            raise ModelError(f"pasting gives an ambiguous complement for {labels[el]}")
        complement[el] = comp_ids.pop()

    return _from_pairs(f"greechie:{d}", labels, pairs, complement)


def _canonical_key(blocks: tuple[tuple[int, ...], ...]) -> tuple:
    """Isomorphism-invariant key: minimize over block orderings.

    Atoms sharing the same set of blocks are interchangeable (blocks meet
    in at most one atom), so relabeling by first appearance per block
    ordering is a faithful canonical form.
    """
    best = None
    k = len(blocks)
    for order in permutations(range(k)):
        membership: dict[int, tuple[int, ...]] = {}
        for pos, bi in enumerate(order):
            for a in blocks[bi]:
                membership.setdefault(a, ())
        for a in membership:
            membership[a] = tuple(pos for pos, bi in enumerate(order) if a in blocks[bi])
        rename: dict[int, int] = {}
        out = []
        for pos, bi in enumerate(order):
            atoms = sorted(blocks[bi], key=lambda a: (membership[a], rename.get(a, len(rename))))
            row = []
            for a in atoms:
                if a not in rename:
                    rename[a] = len(rename)
                row.append(rename[a])
            out.append(tuple(sorted(row)))
        key = tuple(out)
        if best is None or key < best:
            best = key
    return best


def generate_greechie(max_atoms: int, num_blocks: int):
    """All pairwise non-isomorphic diagrams of ``num_blocks`` 3-atom blocks
    using at most ``max_atoms`` atoms (desk scale: atoms <= 12, blocks <= 5).
    """
    if max_atoms > 12 or num_blocks > 5:
        raise ValueError("desk-scale generator: max_atoms <= 12 and blocks <= 5")
    if max_atoms < 3 or num_blocks < 1:
        return

    seen: set[tuple] = set()

    def extend(blocks: list[tuple[int, ...]], used: int):
        if len(blocks) == num_blocks:
            key = _canonical_key(tuple(blocks))
            if key not in seen:
                seen.add(key)
                named = tuple(tuple(str(a) for a in b) for b in blocks)
                yield _validate_diagram(list(named))
            return
        # candidate blocks draw on used atoms plus up to three fresh ones
        pool = list(range(1, min(used + 3, max_atoms) + 1))
        for cand in combinations(pool, 3):
            if blocks and cand <= blocks[-1]:
                continue  # keep blocks lexicographically increasing
            fc = frozenset(cand)
            if any(len(fc & frozenset(b)) > 1 or fc == frozenset(b) for b in blocks):
                continue
            new_used = max(used, max(cand))
            if new_used > max_atoms:
                continue
            yield from extend(blocks + [cand], new_used)

    yield from extend([], 0)


def verify_orthomodular(m: OrthoModel):
    """None when the orthomodular law holds; else the first offending pair.

    Cross-checks two formulations, which must agree:
    a<=b => b = a v (a'^b), and a<=b' & avb=1 => a'<=b.
    """
    first = None
    for i in range(m.n):
        for j in range(m.n):
            if m.leq(i, j) and m.join[i][m.meet[m.complement[i]][j]] != j:
                first = (i, j)
                break
        if first:
            break
    perp_ok = True
    for i in range(m.n):
        for j in range(m.n):
            if m.leq(i, m.complement[j]) and m.join[i][j] == m.one:
                if not m.leq(m.complement[i], j):
                    perp_ok = False
                    break
        if not perp_ok:
            break
    if (first is None) != perp_ok:
        raise AssertionError(f"{m.name}: the two orthomodularity formulations disagree")
    if first is None:
        return None
    return (m.labels[first[0]], m.labels[first[1]])


def is_isomorphic(m1: OrthoModel, m2: OrthoModel) -> bool:
    """Brute-force ortholattice isomorphism test for small models."""
    if m1.n != m2.n:
        return False

    def profile(m: OrthoModel, i: int) -> tuple[int, int, bool]:
        below = sum(1 for j in range(m.n) if m.leq(j, i))
        above = sum(1 for j in range(m.n) if m.leq(i, j))
        return (below, above, m.complement[i] == i)

    p1 = [profile(m1, i) for i in range(m1.n)]
    p2 = [profile(m2, i) for i in range(m2.n)]
    if sorted(p1) != sorted(p2):
        return False

    n = m1.n
    assignment = [-1] * n

    def ok(i: int, v: int) -> bool:
        for j in range(i):
            w = assignment[j]
            if m1.leq(i, j) != m2.leq(v, w) or m1.leq(j, i) != m2.leq(w, v):
                return False
            if m1.complement[i] == j and m2.complement[v] != w:
                return False
            if m1.complement[i] != j and m2.complement[v] == w:
                return False
        return True

    def search(i: int, free: set[int]) -> bool:
        if i == n:
            return True
        for v in sorted(free):
            if p1[i] == p2[v] and ok(i, v):
                assignment[i] = v
                if search(i + 1, free - {v}):
                    return True
                assignment[i] = -1
        return False

    return search(0, set(range(n)))
