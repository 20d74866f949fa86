"""Planar-diagram (PD) codes with classical crossings and ordered double points.

A classical crossing ``X[i,j,k,l]`` lists its four edge labels counterclockwise,
starting from the incoming under-edge, so the under-strand runs ``i -> k``.
A double point ``D[i,j,k,l]`` uses the same layout; its *designated first
strand* is ``i -> k``.  Resolving a double point with the letter ``a`` puts the
first strand above, with ``b`` below.  Double points are numbered ``1..r`` in
order of appearance.

Besides the four labels every crossing carries the direction of its second
strand (``j``/``l``), stored as ``sign``:

* ``+1``: the second strand runs ``l -> j``.  For a classical crossing this is
  a positive (right-handed) crossing.
* ``-1``: the second strand runs ``j -> l``.

Parsed codes get this from tracing the diagram.  Components that never pass
under a crossing cannot be traced that way; they are oriented so that edge
labels increase along the strand, as in KnotAtlas codes.

``O[]`` entries denote crossingless unknotted circles.  The empty code is the
0-crossing unknot.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .errors import (
    ConnectivityError,
    EdgeCountError,
    LengthMismatch,
    MalformedEntry,
    OrderingError,
    SingularPresent,
)

Position = Tuple[int, int]  # (crossing index, slot 0..3)

CLASSICAL = "X"
SINGULAR = "D"


@dataclass(frozen=True)
class Crossing:
    kind: str
    strands: Tuple[int, int, int, int]
    sign: int = 0
    index: int = 0

    @property
    def is_singular(self) -> bool:
        return self.kind == SINGULAR

    def head_slots(self) -> Tuple[int, int]:
        """Slots whose edge enters this crossing."""
        return (0, 3) if self.sign > 0 else (0, 1)

    def is_head(self, slot: int) -> bool:
        if slot in (0, 2):
            return slot == 0
        return slot == (3 if self.sign > 0 else 1)

    def code(self) -> str:
        return f"{self.kind}[{','.join(map(str, self.strands))}]"


def rotate_crossing(strands: Sequence[int], under_in: int, over_in: int, kind: str = CLASSICAL, index: int = 0) -> Crossing:
    """Build a crossing from four counterclockwise labels.

    ``under_in`` is the slot of the incoming edge of the strand to be listed
    first (the under-strand for classical crossings); ``over_in`` the incoming
    slot of the other strand.
    """
    if (over_in - under_in) % 2 == 0:
        raise ValueError("strand entry slots must lie on different axes")
    rotated = tuple(strands[(under_in + t) % 4] for t in range(4))
    sign = 1 if (over_in - under_in) % 4 == 3 else -1
    return Crossing(kind, rotated, sign, index)


def flip_first_strand(c: Crossing) -> Crossing:
    """Re-list ``c`` so that its second strand becomes the first.

    For a classical crossing this is a crossing change; for a double point it
    swaps the meaning of the letters ``a`` and ``b``.
    """
    in_second = 3 if c.sign > 0 else 1
    return rotate_crossing(c.strands, in_second, 0, c.kind, c.index)


@dataclass(frozen=True)
class SingularDiagram:
    crossings: Tuple[Crossing, ...] = ()
    free_loops: int = 0

    @property
    def r(self) -> int:
        return sum(1 for c in self.crossings if c.is_singular)

    @property
    def n(self) -> int:
        return len(self.crossings)

    @cached_property
    def positions(self) -> Dict[int, List[Position]]:
        out: Dict[int, List[Position]] = {}
        for ci, c in enumerate(self.crossings):
            for slot, label in enumerate(c.strands):
                out.setdefault(label, []).append((ci, slot))
        return out

    def label(self, pos: Position) -> int:
        return self.crossings[pos[0]].strands[pos[1]]

    def other_end(self, pos: Position) -> Position:
        a, b = self.positions[self.label(pos)]
        return b if a == pos else a

    def is_head(self, pos: Position) -> bool:
        return self.crossings[pos[0]].is_head(pos[1])

    def head(self, label: int) -> Position:
        a, b = self.positions[label]
        return a if self.is_head(a) else b

    def tail(self, label: int) -> Position:
        a, b = self.positions[label]
        return b if self.is_head(a) else a

    def edges(self) -> List[int]:
        return sorted(self.positions)

    def max_label(self) -> int:
        return max(self.positions, default=0)

    @cached_property
    def strand_cycles(self) -> List[List[int]]:
        """Edge labels of each component with crossings, in orientation order."""
        seen = set()
        cycles = []
        for start in self.edges():
            if start in seen:
                continue
            cycle = []
            e = start
            while e not in seen:
                seen.add(e)
                cycle.append(e)
                ci, slot = self.head(e)
                e = self.crossings[ci].strands[(slot + 2) % 4]
            cycles.append(cycle)
        return cycles

    @property
    def components(self) -> int:
        return len(self.strand_cycles) + self.free_loops

    def faces(self) -> List[List[Position]]:
        """Faces as cycles of sides; side ``(c, s)`` leaves crossing ``c`` at slot ``s``
        with the face on its left."""
        seen = set()
        out = []
        for ci in range(self.n):
            for slot in range(4):
                if (ci, slot) in seen:
                    continue
                cyc = []
                pos = (ci, slot)
                while pos not in seen:
                    seen.add(pos)
                    cyc.append(pos)
                    cj, s2 = self.other_end(pos)
                    pos = (cj, (s2 - 1) % 4)
                out.append(cyc)
        return out

    def __str__(self) -> str:
        return serialize_pd(self)


Diagram = SingularDiagram  # r == 0 by convention; checked by require_classical


def unknot() -> SingularDiagram:
    return SingularDiagram((), 1)


def require_classical(d: SingularDiagram) -> None:
    if d.r:
        raise SingularPresent(f"diagram has {d.r} unresolved double point(s)")


# ---------------------------------------------------------------- parsing

_ENTRY = re.compile(r"([XD])\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]|O\[\s*\]")
_SEP = re.compile(r"(?:[\s,]|#[^\n]*)+")


def _tokenize(text: str) -> Tuple[List[Tuple[str, Tuple[int, ...]]], int, bool]:
    entries = []
    loops = 0
    pos = 0
    saw_entry = False
    while pos < len(text):
        m = _SEP.match(text, pos)
        if m:
            pos = m.end()
            continue
        m = _ENTRY.match(text, pos)
        if not m:
            snippet = text[pos:pos + 20].split("\n")[0]
            raise MalformedEntry(f"cannot parse entry at offset {pos}: {snippet!r}")
        saw_entry = True
        if m.group(1) is None:
            loops += 1
        else:
            labels = tuple(int(g) for g in m.group(2, 3, 4, 5))
            if min(labels) < 1:
                raise MalformedEntry(f"edge labels must be positive: {m.group(0)}")
            entries.append((m.group(1), labels))
        pos = m.end()
    return entries, loops, saw_entry


def _infer_signs(entries: Sequence[Tuple[str, Tuple[int, ...]]]) -> List[int]:
    """Orient every edge and return the second-strand direction per crossing."""
    appear: Dict[int, List[Position]] = {}
    for ci, (_, labels) in enumerate(entries):
        for slot, lab in enumerate(labels):
            appear.setdefault(lab, []).append((ci, slot))
    role: Dict[Position, bool] = {}  # True = edge enters the crossing here

    def other(pos):
        a, b = appear[entries[pos[0]][1][pos[1]]]
        return b if a == pos else a

    def assign(start: Position, is_head: bool):
        stack = [(start, is_head)]
        while stack:
            pos, h = stack.pop()
            if pos in role:
                if role[pos] != h:
                    lab = entries[pos[0]][1][pos[1]]
                    raise ConnectivityError(f"edge {lab} cannot be oriented consistently")
                continue
            role[pos] = h
            stack.append((other(pos), not h))
            stack.append(((pos[0], (pos[1] + 2) % 4), not h))

    for ci in range(len(entries)):
        assign((ci, 0), True)
    for lab in sorted(appear):
        a, b = appear[lab]
        if a in role:
            continue
        # untraceable component: labels increase along the strand
        nxt_a = entries[a[0]][1][(a[1] + 2) % 4]
        assign(b if nxt_a != lab + 1 and entries[b[0]][1][(b[1] + 2) % 4] == lab + 1 else a, True)

    signs = []
    for ci in range(len(entries)):
        signs.append(1 if role[(ci, 3)] else -1)
    return signs


def parse_pd(text: str, check: bool = True) -> SingularDiagram:
    """Parse ``X[...]``/``D[...]``/``O[]`` entries into a diagram.

    With ``check=False`` the structural checks are skipped so that a broken
    diagram can be handed to :func:`validate`; orientation is then left
    unknown (``sign == 0``) when it cannot be inferred.
    """
    entries, loops, saw_entry = _tokenize(text)
    if not saw_entry:
        return unknot()
    counts: Dict[int, int] = {}
    for _, labels in entries:
        for lab in labels:
            counts[lab] = counts.get(lab, 0) + 1
    signs = [0] * len(entries)
    if all(v == 2 for v in counts.values()):
        try:
            signs = _infer_signs(entries)
        except ConnectivityError:
            if check:
                raise
    elif check:
        bad = sorted(k for k, v in counts.items() if v != 2)
        raise EdgeCountError(f"edge label(s) {bad} not used exactly twice")
    crossings = []
    k = 0
    for (kind, labels), s in zip(entries, signs):
        if kind == SINGULAR:
            k += 1
        crossings.append(Crossing(kind, labels, s, k if kind == SINGULAR else 0))
    if not crossings and loops == 0:
        loops = 1
    d = SingularDiagram(tuple(crossings), loops)
    if check:
        report = validate(d)
        if not report.ok:
            raise report.issues[0].as_exception()
    return d


def serialize_pd(d: SingularDiagram) -> str:
    parts = [c.code() for c in d.crossings]
    if parts or d.free_loops != 1:
        parts.extend("O[]" for _ in range(d.free_loops))
    return ",".join(parts)


# ------------------------------------------------------------- validation

_ISSUE_TYPES = {
    "EdgeCountError": EdgeCountError,
    "OrderingError": OrderingError,
    "ConnectivityError": ConnectivityError,
    "MalformedEntry": MalformedEntry,
}


@dataclass(frozen=True)
class Issue:
    code: str
    message: str

    def as_exception(self) -> Exception:
        return _ISSUE_TYPES[self.code](self.message)


@dataclass
class ValidationReport:
    issues: List[Issue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def __bool__(self) -> bool:
        return self.ok

    def codes(self) -> List[str]:
        return [i.code for i in self.issues]


def validate(d: SingularDiagram) -> ValidationReport:
    """Check every structural invariant of ``d``; never raises."""
    report = ValidationReport()
    add = lambda code, msg: report.issues.append(Issue(code, msg))

    for c in d.crossings:
        if c.kind not in (CLASSICAL, SINGULAR) or len(c.strands) != 4:
            add("MalformedEntry", f"bad crossing {c!r}")
        elif any(not isinstance(x, int) or x < 1 for x in c.strands):
            add("MalformedEntry", f"non-positive edge label in {c.code()}")
        if c.kind == CLASSICAL and c.index:
            add("OrderingError", f"classical crossing {c.code()} carries a double-point index")
    if report.issues:
        return report

    counts: Dict[int, int] = {}
    for c in d.crossings:
        for lab in c.strands:
            counts[lab] = counts.get(lab, 0) + 1
    for lab in sorted(counts):
        if counts[lab] != 2:
            add("EdgeCountError", f"edge {lab} used {counts[lab]} times")

    indices = [c.index for c in d.crossings if c.is_singular]
    if sorted(indices) != list(range(1, len(indices) + 1)):
        add("OrderingError", f"double-point indices {indices} are not exactly 1..{len(indices)}")

    if any(v != 2 for v in counts.values()):
        return report

    for c in d.crossings:
        if c.sign not in (1, -1):
            add("ConnectivityError", f"crossing {c.code()} has no consistent orientation")
            return report
    for lab, (a, b) in sorted(d.positions.items()):
        if d.is_head(a) == d.is_head(b):
            add("ConnectivityError", f"edge {lab} has inconsistent orientation")
    if report.issues:
        return report

    if d.n:
        pieces = _count_pieces(d)
        nfaces = len(d.faces())
        if nfaces != d.n + 2 * pieces:
            add("ConnectivityError", f"code is not planar ({nfaces} faces for {d.n} crossings)")
    return report


def _count_pieces(d: SingularDiagram) -> int:
    parent = list(range(d.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (a, _), (b, _) in d.positions.values():
        parent[find(a)] = find(b)
    return len({find(i) for i in range(d.n)})


# ------------------------------------------------------------ operations

def resolve(d: SingularDiagram, w: str) -> SingularDiagram:
    """Replace the i-th double point by a classical crossing chosen by ``w[i-1]``."""
    if len(w) != d.r:
        raise LengthMismatch(f"word of length {len(w)} for {d.r} double point(s)")
    if d.r == 0:
        return d
    out = []
    for c in d.crossings:
        if not c.is_singular:
            out.append(c)
            continue
        letter = w[c.index - 1]
        if letter == "b":
            out.append(Crossing(CLASSICAL, c.strands, c.sign))
        elif letter == "a":
            out.append(replace(flip_first_strand(c), kind=CLASSICAL, index=0))
        else:
            raise ValueError(f"invalid letter {letter!r}")
    return SingularDiagram(tuple(out), d.free_loops)


def crossing_change(d: SingularDiagram, ci: int) -> SingularDiagram:
    c = d.crossings[ci]
    if c.is_singular:
        raise SingularPresent("cannot switch a double point")
    cs = list(d.crossings)
    cs[ci] = flip_first_strand(c)
    return SingularDiagram(tuple(cs), d.free_loops)


def make_singular(d: SingularDiagram, which: Iterable[int], first: str = "over") -> SingularDiagram:
    """Turn the classical crossings at positions ``which`` into double points.

    Double points are numbered in the order given.  With ``first="over"`` the
    letter ``a`` reproduces the original crossing; with ``"under"`` the letter
    ``b`` does.
    """
    which = list(which)
    base = d.r
    cs = list(d.crossings)
    for k, ci in enumerate(which, start=base + 1):
        c = cs[ci]
        if c.is_singular:
            raise ValueError(f"crossing {ci} is already a double point")
        src = flip_first_strand(c) if first == "over" else c
        cs[ci] = Crossing(SINGULAR, src.strands, src.sign, k)
    return SingularDiagram(tuple(cs), d.free_loops)


def renumber_double_points(d: SingularDiagram, order: Sequence[int]) -> SingularDiagram:
    """Give old double point ``order[k]`` the new index ``k + 1``."""
    if sorted(order) != list(range(1, d.r + 1)):
        raise OrderingError(f"{list(order)} is not a permutation of 1..{d.r}")
    new_index = {old: k + 1 for k, old in enumerate(order)}
    cs = tuple(replace(c, index=new_index[c.index]) if c.is_singular else c for c in d.crossings)
    return SingularDiagram(cs, d.free_loops)


def swap_letters(d: SingularDiagram, index: int) -> SingularDiagram:
    """Exchange the roles of ``a`` and ``b`` at double point ``index``."""
    cs = list(d.crossings)
    for ci, c in enumerate(cs):
        if c.is_singular and c.index == index:
            cs[ci] = flip_first_strand(c)
            return SingularDiagram(tuple(cs), d.free_loops)
    raise OrderingError(f"no double point with index {index}")


def relabel(d: SingularDiagram, mapping: Mapping[int, int]) -> SingularDiagram:
    cs = tuple(replace(c, strands=tuple(mapping.get(x, x) for x in c.strands)) for c in d.crossings)
    return SingularDiagram(cs, d.free_loops)


def normalized(d: SingularDiagram) -> SingularDiagram:
    """Relabel edges ``1..2n`` along the components, starting from the smallest label."""
    mapping = {}
    for cycle in d.strand_cycles:
        for lab in cycle:
            mapping[lab] = len(mapping) + 1
    return relabel(d, mapping)


def diagram_key(d: SingularDiagram) -> Tuple:
    """Hashable key that ignores edge names (used for memo tables)."""
    nd = normalized(d)
    return (tuple((c.kind, c.strands, c.sign, c.index) for c in nd.crossings), nd.free_loops)
