"""Polynomial knot invariants, fingerprints and finite-order checks.

Conventions (fixed here, relied on by the tests):

* Kauffman bracket: the ``A``-smoothing of ``X[i,j,k,l]`` joins ``i-j`` and
  ``k-l``; the ``B``-smoothing joins ``i-l`` and ``j-k``.  ``<O> = 1`` and each
  extra loop contributes ``d = -A^2 - A^-2``.
* Jones: ``V = (-A)^(-3 w) <D>`` rewritten in ``q = A^-4``.  The KnotAtlas
  code ``X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]`` (left-handed trefoil, writhe -3)
  has ``V = -q^-4 + q^-3 + q^-1``.
* Conway: ``C(L+) - C(L-) = z C(L0)``, ``C(unknot) = 1``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .diagram import (
    SingularDiagram,
    _count_pieces,
    crossing_change,
    diagram_key,
    parse_pd,
    require_classical,
)
from .errors import CapExceeded, MultiComponent, RecursionBudgetExceeded, TooManyCrossings
from .laurent import LaurentPolynomial
from .moves import _drop, apply_move, reducing_moves, reidemeister_simplify

STATE_SUM_MAX_CROSSINGS = 14
BRACKET_MAX_CROSSINGS = 60
CONWAY_NODE_BUDGET = 100_000
SERIES_MAX_ORDER = 4


def _delta_power(k: int) -> Dict[int, int]:
    """Coefficients of (-A^2 - A^-2)^k."""
    poly = {0: 1}
    for _ in range(k):
        nxt: Dict[int, int] = {}
        for e, c in poly.items():
            nxt[e + 2] = nxt.get(e + 2, 0) - c
            nxt[e - 2] = nxt.get(e - 2, 0) - c
        poly = {e: c for e, c in nxt.items() if c}
    return poly


def _collect(weights: Dict[Tuple[int, int], int], extra_loops: int) -> LaurentPolynomial:
    """Sum c * A^a * d^(loops - 1) over (a, loops) -> c."""
    out: Dict[int, int] = {}
    cache: Dict[int, Dict[int, int]] = {}
    for (a, loops), c in weights.items():
        k = loops + extra_loops - 1
        if k not in cache:
            cache[k] = _delta_power(k)
        for e, dc in cache[k].items():
            out[a + e] = out.get(a + e, 0) + c * dc
    return LaurentPolynomial(out, "A")


def _smoothings(strands):
    i, j, k, l = strands
    return ((1, ((i, j), (k, l))), (-1, ((i, l), (j, k))))


def bracket_state_sum(d: SingularDiagram) -> LaurentPolynomial:
    """Kauffman bracket by enumerating all 2^n states; loops counted with union-find."""
    require_classical(d)
    n = d.n
    if n > STATE_SUM_MAX_CROSSINGS:
        raise TooManyCrossings(f"{n} crossings exceeds the state-sum limit {STATE_SUM_MAX_CROSSINGS}")
    if n == 0:
        return _collect({(0, 0): 1}, d.free_loops)
    labels = d.edges()
    index = {lab: t for t, lab in enumerate(labels)}
    options = [_smoothings(c.strands) for c in d.crossings]
    weights: Dict[Tuple[int, int], int] = {}
    for state in range(1 << n):
        parent = list(range(len(labels)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        a = 0
        for t in range(n):
            exp, pairs = options[t][(state >> t) & 1]
            a += exp
            for u, v in pairs:
                ru, rv = find(index[u]), find(index[v])
                if ru != rv:
                    parent[ru] = rv
        loops = len({find(x) for x in range(len(labels))})
        weights[(a, loops)] = weights.get((a, loops), 0) + 1
    return _collect(weights, d.free_loops)


def _crossing_order(d: SingularDiagram) -> List[int]:
    # walking the components keeps the set of open edge ends small
    order, seen = [], set()
    for cycle in d.strand_cycles:
        for lab in cycle:
            ci, _ = d.head(lab)
            if ci not in seen:
                seen.add(ci)
                order.append(ci)
    return order


def kauffman_bracket(d: SingularDiagram) -> LaurentPolynomial:
    """Kauffman bracket ``<D>`` in the variable ``A``.

    Crossings are absorbed one at a time; partial states that pair up the open
    edge ends the same way are merged, so the cost tracks the width of the
    diagram rather than ``2^n``.
    """
    require_classical(d)
    if d.n > BRACKET_MAX_CROSSINGS:
        raise TooManyCrossings(f"{d.n} crossings exceeds the bracket limit {BRACKET_MAX_CROSSINGS}")
    if d.n == 0:
        return _collect({(0, 0): 1}, d.free_loops)
    # state: sorted tuple of (end, partner) over open ends -> {(a, loops): coeff}
    states: Dict[Tuple, Dict[Tuple[int, int], int]] = {(): {(0, 0): 1}}
    for ci in _crossing_order(d):
        options = _smoothings(d.crossings[ci].strands)
        nxt: Dict[Tuple, Dict[Tuple[int, int], int]] = {}
        for key, weights in states.items():
            for exp, pairs in options:
                partner = dict(key)
                closed = 0
                for x, y in pairs:
                    if x == y or partner.get(x) == y:
                        if x != y:
                            del partner[x], partner[y]
                        closed += 1
                        continue
                    ex = partner.pop(x, None)
                    if ex is None:
                        ex = x
                    else:
                        del partner[ex]
                    ey = partner.pop(y, None)
                    if ey is None:
                        ey = y
                    else:
                        del partner[ey]
                    partner[ex] = ey
                    partner[ey] = ex
                nkey = tuple(sorted(partner.items()))
                bucket = nxt.setdefault(nkey, {})
                for (a, loops), c in weights.items():
                    k = (a + exp, loops + closed)
                    bucket[k] = bucket.get(k, 0) + c
        states = nxt
    (key, weights), = states.items()
    assert key == ()
    return _collect(weights, d.free_loops)


def writhe(d: SingularDiagram) -> int:
    require_classical(d)
    return sum(c.sign for c in d.crossings)


def _require_knot(d: SingularDiagram) -> None:
    if d.components != 1:
        raise MultiComponent(f"expected a knot, got {d.components} components")


def jones(d: SingularDiagram) -> LaurentPolynomial:
    """Jones polynomial of a knot diagram in ``q`` (unknot -> 1)."""
    require_classical(d)
    _require_knot(d)
    w = writhe(d)
    f = kauffman_bracket(d) * LaurentPolynomial({-3 * w: (-1) ** (w % 2)}, "A")
    return f.rescale_exponents(-4, "q")


# ------------------------------------------------------------- Conway

def smooth(d: SingularDiagram, ci: int) -> SingularDiagram:
    """Orientation-respecting smoothing of crossing ``ci``."""
    c = d.crossings[ci]
    i, j, k, l = c.strands
    merges = [(i, j), (l, k)] if c.sign > 0 else [(i, l), (j, k)]
    return _drop(d, [ci], merges)


def _first_bad_crossing(d: SingularDiagram) -> Optional[int]:
    seen = set()
    for cycle in d.strand_cycles:
        for lab in cycle:
            ci, slot = d.head(lab)
            if ci in seen:
                continue
            seen.add(ci)
            if slot == 0:
                return ci
    return None


def _greedy_reduce(d: SingularDiagram) -> SingularDiagram:
    while True:
        moves = reducing_moves(d)
        if not moves:
            return d
        d = apply_move(d, moves[0])


_conway_memo: Dict[Tuple, LaurentPolynomial] = {}
_conway_lock = threading.Lock()
_Z = LaurentPolynomial({1: 1}, "z")


def conway(d: SingularDiagram, budget: int = CONWAY_NODE_BUDGET) -> LaurentPolynomial:
    """Conway polynomial by the skein recursion.

    Crossings first met from below along a fixed traversal are switched one by
    one; a diagram with none left is an unlink.  Each switch spawns a smoothed
    diagram with one crossing fewer.
    """
    require_classical(d)
    counter = [0]
    return _conway(d, counter, budget)


def _conway(d: SingularDiagram, counter: List[int], budget: int) -> LaurentPolynomial:
    d = _greedy_reduce(d)
    if d.n == 0:
        return LaurentPolynomial({0: 1 if d.free_loops == 1 else 0}, "z")
    if d.free_loops or _count_pieces(d) > 1:
        return LaurentPolynomial({}, "z")
    key = diagram_key(d)
    with _conway_lock:
        hit = _conway_memo.get(key)
    if hit is not None:
        return hit
    counter[0] += 1
    if counter[0] > budget:
        raise RecursionBudgetExceeded(f"Conway skein tree exceeded {budget} nodes")
    ci = _first_bad_crossing(d)
    if ci is None:
        result = LaurentPolynomial({0: 1 if d.components == 1 else 0}, "z")
    else:
        s = d.crossings[ci].sign
        rest = _conway(crossing_change(d, ci), counter, budget)
        smoothed = _conway(smooth(d, ci), counter, budget)
        result = rest + _Z * smoothed * s
    with _conway_lock:
        _conway_memo[key] = result
    return result


# --------------------------------------------------------- fingerprints

_KNOWN_CODES = {
    "trefoil": "X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]",
    "figure-eight": "X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]",
    "5_1": "X[1,6,2,7],X[3,8,4,9],X[5,10,6,1],X[7,2,8,3],X[9,4,10,5]",
    "5_2": "X[1,4,2,5],X[3,8,4,9],X[5,10,6,1],X[9,6,10,7],X[7,2,8,3]",
}
_names: Optional[Dict[Tuple, str]] = None
_names_lock = threading.Lock()


@dataclass(frozen=True)
class KnotClass:
    """Computable stand-in for a knot type: Jones and Conway polynomials.

    ``min_crossings_seen`` records the crossing count after simplification;
    it is informational and excluded from equality.
    """

    jones: LaurentPolynomial
    conway: LaurentPolynomial
    min_crossings_seen: int = field(default=0, compare=False)

    def key(self) -> Tuple:
        return (tuple(self.jones.items()), tuple(self.conway.items()))

    @property
    def name(self) -> Optional[str]:
        return _known_names().get(self.key())

    @property
    def label(self) -> str:
        return self.name or f"K(q: {self.jones}; z: {self.conway})"

    def sort_key(self):
        return self.label

    def __lt__(self, other: "KnotClass") -> bool:
        return self.label < other.label

    def __str__(self) -> str:
        return self.label

    def to_json(self) -> dict:
        return {"label": self.label, "jones": self.jones.to_json(), "conway": self.conway.to_json(),
                "crossings": self.min_crossings_seen}

    @classmethod
    def from_json(cls, obj) -> "KnotClass":
        return cls(LaurentPolynomial.from_json(obj["jones"]), LaurentPolynomial.from_json(obj["conway"]),
                   int(obj.get("crossings", 0)))


def _known_names() -> Dict[Tuple, str]:
    global _names
    with _names_lock:
        if _names is not None:
            return _names
        table = {(((0, 1),), ((0, 1),)): "unknot"}
        for name, code in _KNOWN_CODES.items():
            d = parse_pd(code)
            mirror = d
            for ci in range(d.n):
                mirror = crossing_change(mirror, ci)
            for diag, tag in ((d, name), (mirror, name + "*")):
                k = KnotClass(jones(diag), conway(diag))
                table.setdefault(k.key(), tag)
        _names = table
        return table


def fingerprint(d: SingularDiagram) -> KnotClass:
    require_classical(d)
    _require_knot(d)
    s = reidemeister_simplify(d)
    return KnotClass(jones(s), conway(s), s.n)


# ----------------------------------------------- finite-order invariants

KnotLike = Union[SingularDiagram, KnotClass]


def _jones_of(x: KnotLike) -> LaurentPolynomial:
    return x.jones if isinstance(x, KnotClass) else jones(x)


def _conway_of(x: KnotLike) -> LaurentPolynomial:
    return x.conway if isinstance(x, KnotClass) else conway(x)


def v2(x: KnotLike) -> int:
    """Coefficient of z^2 in the Conway polynomial (an order-2 invariant)."""
    if isinstance(x, SingularDiagram):
        _require_knot(x)
    return _conway_of(x).coefficient(2)


def jones_series_coefficient(x: KnotLike, n: int, max_order: int = SERIES_MAX_ORDER):
    """Coefficient of h^n in V(e^h); an invariant of order n."""
    if n < 0:
        raise ValueError("order must be non-negative")
    if n > max_order:
        raise CapExceeded(f"series order {n} exceeds the limit {max_order}")
    total = Fraction(0)
    for k, c in _jones_of(x).items():
        total += c * Fraction(k) ** n
    total /= factorial(n)
    return total.numerator if total.denominator == 1 else total


def series_invariant(n: int) -> Callable[[KnotLike], object]:
    def inv(x):
        return jones_series_coefficient(x, n)

    inv.__name__ = f"jones_series_{n}"
    inv.order = n
    return inv


v2.order = 2


@dataclass
class VanishingReport:
    invariant: str
    order: int
    r: int
    value: object
    status: str  # PASS, FAIL or INFO

    def to_json(self) -> dict:
        v = Fraction(self.value)
        return {"invariant": self.invariant, "order": self.order, "r": self.r,
                "value": str(v), "status": self.status}


def vassiliev_vanishing_check(inv: Callable, system, order: int) -> VanishingReport:
    """Evaluate ``inv`` on the alternating sum of ``system``.

    With at least ``order + 1`` regions the value must vanish for an
    invariant of that order; otherwise the value is only reported.
    """
    from .calculus import alternating_sum

    total = 0
    for label, coeff in alternating_sum(system).items():
        total += coeff * inv(label)
    if isinstance(total, Fraction) and total.denominator == 1:
        total = total.numerator
    if system.r >= order + 1:
        status = "PASS" if total == 0 else "FAIL"
    else:
        status = "INFO"
    return VanishingReport(getattr(inv, "__name__", "invariant"), order, system.r, total, status)
