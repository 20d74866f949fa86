"""Reidemeister moves on oriented PD diagrams and a greedy simplifier.

Moves address the diagram through *sides*: a side ``(c, s)`` is the edge at
slot ``s`` of crossing ``c``, traversed away from ``c`` with its face on the
left (see :meth:`SingularDiagram.faces`).
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .diagram import (
    CLASSICAL,
    Crossing,
    Position,
    SingularDiagram,
    diagram_key,
    require_classical,
    rotate_crossing,
)


@dataclass(frozen=True)
class Move:
    kind: str  # "R1-", "R2-", "R1+", "R2+", "R3"
    data: Tuple


# ------------------------------------------------------------ removal

def _drop(d: SingularDiagram, drop: Iterable[int], merges: Sequence[Tuple[int, int]],
          replaced: Optional[Dict[int, Crossing]] = None) -> SingularDiagram:
    """Remove crossings and glue the given pairs of surviving edge ends together."""
    drop = set(drop)
    parent: Dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in merges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    kept = []
    for ci, c in enumerate(d.crossings):
        if ci in drop:
            continue
        kept.append(Crossing(c.kind, tuple(find(x) if x in parent else x for x in c.strands), c.sign, c.index))
    present = {x for c in kept for x in c.strands}
    loops = len({find(x) for x in parent} - present)
    return SingularDiagram(tuple(kept), d.free_loops + loops)


def r1_removals(d: SingularDiagram) -> List[Move]:
    out = []
    for ci, c in enumerate(d.crossings):
        if c.is_singular:
            continue
        s = c.strands
        for slot in range(4):
            if s[slot] == s[(slot + 1) % 4]:
                out.append(Move("R1-", (ci, slot)))
                break
    return out


def apply_r1_removal(d: SingularDiagram, ci: int, slot: int) -> SingularDiagram:
    s = d.crossings[ci].strands
    y, z = s[(slot + 2) % 4], s[(slot + 3) % 4]
    return _drop(d, [ci], [(y, z)])


def r2_removals(d: SingularDiagram) -> List[Move]:
    out = []
    for face in d.faces():
        if len(face) != 2:
            continue
        (c1, p1), (c2, p2) = face
        if c1 == c2 or d.crossings[c1].is_singular or d.crossings[c2].is_singular:
            continue
        # side (c1, p1) arrives at c2 in slot p2 + 1
        q2 = (p2 + 1) % 4
        if p1 % 2 == q2 % 2:
            out.append(Move("R2-", (c1, p1, c2, p2)))
    return out


def apply_r2_removal(d: SingularDiagram, c1: int, p1: int, c2: int, p2: int) -> SingularDiagram:
    q2 = (p2 + 1) % 4
    q1 = (p1 + 1) % 4
    t1, t2 = d.crossings[c1].strands, d.crossings[c2].strands
    merges = [(t1[(p1 + 2) % 4], t2[(q2 + 2) % 4]), (t2[(p2 + 2) % 4], t1[(q1 + 2) % 4])]
    return _drop(d, [c1, c2], merges)


# ----------------------------------------------------------- insertion

def _with(d: SingularDiagram, updates: Dict[Position, int]) -> List[Crossing]:
    cs = []
    for ci, c in enumerate(d.crossings):
        strands = tuple(updates.get((ci, s), x) for s, x in enumerate(c.strands))
        cs.append(Crossing(c.kind, strands, c.sign, c.index))
    return cs


def r1_insert(d: SingularDiagram, edge: Optional[int], variant: int) -> SingularDiagram:
    """Add a kink on ``edge``.

    ``variant`` picks one of the four kinks: bit 0 chooses the side of the
    strand the loop lies on, bit 1 whether the first pass goes under.
    Crossing signs are -1, +1, +1, -1 for variants 0..3.
    """
    side, second_under = variant & 1, variant >> 1 & 1
    if edge is None:
        if d.free_loops < 1:
            raise ValueError("no crossingless loop to kink")
        e = y = d.max_label() + 1
        x = e + 1
        cs = list(d.crossings)
        loops = d.free_loops - 1
    else:
        e = edge
        x, y = d.max_label() + 1, d.max_label() + 2
        cs = _with(d, {d.head(e): y})
        loops = d.free_loops
    if side == 0:
        ccw = (e, x, x, y)  # e enters at 0, loop leaves at 2 and returns at 1, exits at 3
        first_in, second_in = 0, 1
    else:
        ccw = (e, y, x, x)  # loop returns at 3, exits at 1
        first_in, second_in = 0, 3
    if second_under:
        new = rotate_crossing(ccw, second_in, first_in)
    else:
        new = rotate_crossing(ccw, first_in, second_in)
    cs.append(new)
    return SingularDiagram(tuple(cs), loops)


def r2_insert(d: SingularDiagram, side1: Position, side2: Position, first_over: bool) -> SingularDiagram:
    """Push the edge of ``side1`` across the edge of ``side2`` through their common face."""
    if side1 == side2:
        raise ValueError("sides must differ")
    e1, e2 = d.label(side1), d.label(side2)
    end1, end2 = d.other_end(side1), d.other_end(side2)
    base = d.max_label()
    beta, gamma, eps, zeta = base + 1, base + 2, base + 3, base + 4
    alpha, delta = e1, e2
    cs = _with(d, {end1: gamma, end2: zeta})
    fwd1 = not d.is_head(side1)
    fwd2 = not d.is_head(side2)
    # P: S alpha, E eps, N beta, W zeta;  Q: S gamma, E delta, N beta, W eps
    p_ccw = (alpha, eps, beta, zeta)
    q_ccw = (gamma, delta, beta, eps)
    p_in1, q_in1 = (0, 2) if fwd1 else (2, 0)
    p_in2, q_in2 = (1, 1) if fwd2 else (3, 3)
    if first_over:
        P = rotate_crossing(p_ccw, p_in2, p_in1)
        Q = rotate_crossing(q_ccw, q_in2, q_in1)
    else:
        P = rotate_crossing(p_ccw, p_in1, p_in2)
        Q = rotate_crossing(q_ccw, q_in1, q_in2)
    cs.extend([P, Q])
    return SingularDiagram(tuple(cs), d.free_loops)


# ----------------------------------------------------------------- R3

def r3_moves(d: SingularDiagram) -> List[Move]:
    out = []
    for face in d.faces():
        if len(face) != 3:
            continue
        cis = [c for c, _ in face]
        if len(set(cis)) != 3 or any(d.crossings[c].is_singular for c in cis):
            continue
        ps = [p for _, p in face]
        qs = [(p + 1) % 4 for p in ps]
        # strand k runs along side k: over at crossing k iff p_k odd,
        # over at crossing k+1 iff q_{k+1} odd
        if any(ps[k] % 2 == qs[(k + 1) % 3] % 2 for k in range(3)):
            out.append(Move("R3", tuple(face)))
    return out


def apply_r3(d: SingularDiagram, face: Sequence[Position]) -> SingularDiagram:
    cis = [c for c, _ in face]
    ps = [p for _, p in face]
    qs = [(p + 1) % 4 for p in ps]
    lab = d.label
    sides = [lab((cis[k], ps[k])) for k in range(3)]
    beyond = [lab((cis[(k + 1) % 3], (qs[(k + 1) % 3] + 2) % 4)) for k in range(3)]
    behind = [lab((cis[k], (qs[k] + 1) % 4)) for k in range(3)]
    fwd = [not d.is_head((cis[k], ps[k])) for k in range(3)]
    cs = list(d.crossings)
    for k in range(3):
        km = (k - 1) % 3
        ccw = (beyond[k], behind[km], sides[k], sides[km])
        in_k = 2 if fwd[k] else 0
        in_km = 1 if fwd[km] else 3
        k_under = ps[k] % 2 == 0
        if k_under:
            cs[cis[k]] = rotate_crossing(ccw, in_k, in_km)
        else:
            cs[cis[k]] = rotate_crossing(ccw, in_km, in_k)
    return SingularDiagram(tuple(cs), d.free_loops)


# --------------------------------------------------------- dispatching

def apply_move(d: SingularDiagram, m: Move) -> SingularDiagram:
    if m.kind == "R1-":
        return apply_r1_removal(d, *m.data)
    if m.kind == "R2-":
        return apply_r2_removal(d, *m.data)
    if m.kind == "R3":
        return apply_r3(d, m.data)
    if m.kind == "R1+":
        return r1_insert(d, *m.data)
    if m.kind == "R2+":
        return r2_insert(d, *m.data)
    raise ValueError(f"unknown move {m.kind}")


def reducing_moves(d: SingularDiagram) -> List[Move]:
    return r1_removals(d) + r2_removals(d)


def random_move(d: SingularDiagram, rng: random.Random, kinds: Sequence[str] = ("R1+", "R1-", "R2+", "R2-", "R3")) -> Tuple[SingularDiagram, Optional[Move]]:
    """Apply one uniformly chosen available move of the given kinds.

    Returns the new diagram and the move (``None`` when nothing applied).
    """
    options = []
    for kind in kinds:
        if kind == "R1-":
            options += r1_removals(d)
        elif kind == "R2-":
            options += r2_removals(d)
        elif kind == "R3":
            options += r3_moves(d)
        elif kind == "R1+":
            edges = d.edges() or ([None] if d.free_loops else [])
            if edges:
                options.append(Move("R1+", (rng.choice(edges), rng.randrange(4))))
        elif kind == "R2+":
            faces = [f for f in d.faces() if len(f) >= 2]
            if faces:
                f = rng.choice(faces)
                s1, s2 = rng.sample(f, 2)
                options.append(Move("R2+", (s1, s2, rng.random() < 0.5)))
    if not options:
        return d, None
    m = rng.choice(options)
    return apply_move(d, m), m


def perturb(d: SingularDiagram, steps: int, rng: random.Random, kinds: Sequence[str] = ("R1+", "R1-", "R2+", "R2-", "R3")) -> SingularDiagram:
    for _ in range(steps):
        d, _m = random_move(d, rng, kinds)
    return d


# --------------------------------------------------------- simplifier

def reidemeister_simplify(d: SingularDiagram, r3_depth: int = 2, max_states: int = 200) -> SingularDiagram:
    """Greedily remove crossings with R1 and R2 moves.

    When no reducing move exists, a breadth-first search over at most
    ``max_states`` diagrams reachable by up to ``r3_depth`` R3 moves looks for
    one that admits a reducing move.  The result never has more crossings than
    the input; it is not a canonical form.
    """
    require_classical(d)
    while True:
        moves = reducing_moves(d)
        if moves:
            d = apply_move(d, moves[0])
            continue
        if r3_depth <= 0:
            return d
        found = _r3_search(d, r3_depth, max_states)
        if found is None:
            return d
        d = found


def _r3_search(d: SingularDiagram, depth: int, max_states: int) -> Optional[SingularDiagram]:
    seen = {diagram_key(d)}
    queue = deque([(d, 0)])
    while queue:
        cur, k = queue.popleft()
        if k >= depth:
            continue
        for m in r3_moves(cur):
            nxt = apply_r3(cur, m.data)
            key = diagram_key(nxt)
            if key in seen:
                continue
            seen.add(key)
            if reducing_moves(nxt):
                return nxt
            if len(seen) >= max_states:
                return None
            queue.append((nxt, k + 1))
    return None
