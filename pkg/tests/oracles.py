"""Independent reference computations used by the tests.

Nothing here calls into the package's linear algebra or complex code.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

import sympy
from sympy.matrices.normalforms import invariant_factors as _sympy_invariant_factors


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if a else 0
    rank = 0
    prev = 1
    col = 0
    while rank < m and col < n:
        piv = next((i for i in range(rank, m) if a[i][col]), None)
        if piv is None:
            col += 1
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(rank + 1, m):
            for j in range(col + 1, n):
                a[i][j] = (a[i][j] * a[rank][col] - a[i][col] * a[rank][j]) // prev
            a[i][col] = 0
        prev = a[rank][col]
        rank += 1
        col += 1
    return rank


def cofactor_det(rows: Sequence[Sequence[int]]) -> int:
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def gauss_det(rows: Sequence[Sequence[int]]) -> Fraction:
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


# ------------------------------------------------------------- lattices

def hnf_basis(vectors: Sequence[Sequence[int]], dim: int) -> List[List[int]]:
    """Row-echelon Z-basis of the span, built by extended-gcd row insertion."""
    basis: Dict[int, List[int]] = {}  # pivot column -> row
    for v in vectors:
        v = list(v)
        col = 0
        while col < dim:
            if v[col] == 0:
                col += 1
                continue
            if col not in basis:
                if v[col] < 0:
                    v = [-x for x in v]
                basis[col] = v
                break
            b = basis[col]
            g, s, t = _xgcd(b[col], v[col])
            p, q = b[col] // g, v[col] // g
            new_b = [s * x + t * y for x, y in zip(b, v)]
            v = [p * y - q * x for x, y in zip(b, v)]
            basis[col] = new_b
            col += 1
    return [basis[c] for c in sorted(basis)]


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, s, t = _xgcd(b, a % b)
    return g, t, s - (a // b) * t


def coordinates(echelon: List[List[int]], v: Sequence[int]) -> List[int]:
    """Integer coordinates of ``v`` in an echelon basis (must lie in the span)."""
    v = list(v)
    out = []
    for row in echelon:
        col = next(j for j, x in enumerate(row) if x)
        q, r = divmod(v[col], row[col])
        assert r == 0
        out.append(q)
        v = [x - q * y for x, y in zip(v, row)]
    assert not any(v)
    return out


def quotient_oracle(A, B, dim):
    """(rank A, rank B, rank (A+B)/B, torsion of (A+B)/B) via HNF and sympy."""
    ha = hnf_basis(A, dim)
    hb = hnf_basis(B, dim)
    hl = hnf_basis(list(ha) + list(hb), dim)
    torsion = []
    rank_c = 0
    if hl and hb:
        coords = [coordinates(hl, b) for b in hb]
        m = sympy.Matrix(coords).T
        facs = [int(f) for f in _sympy_invariant_factors(m, domain=sympy.ZZ)]
        rank_c = sum(1 for f in facs if f)
        torsion = [abs(f) for f in facs if abs(f) > 1]
    return len(ha), len(hb), len(hl) - rank_c, torsion


# ------------------------------------------------------ group instance

def group_chain_groups(table: Sequence[Sequence[int]], r: int):
    """Generators of degree r and boundaries of degree r+1 generators, built directly.

    Coordinates are indexed by (word, element) with words in lexicographic
    order.  The boundary uses region fixing:
    d(s) = sum_i (-1)^(i+1) [(s with region i set to a) - (s with region i set to b)].
    """
    n = len(table)
    words_r = ["".join(t) for t in itertools.product("ab", repeat=r)]
    pos = {(w, g): k for k, (w, g) in enumerate(itertools.product(words_r, range(n)))}
    dim = len(pos)

    def product(choice):
        acc = 0  # identity is element 0 in the groups used here
        for x in choice:
            acc = table[acc][x]
        return acc

    def vec_of(factors):
        v = [0] * dim
        for w in words_r:
            v[pos[(w, product([f[0] if c == "a" else f[1] for f, c in zip(factors, w)]))]] += 1
        return v

    pairs = list(itertools.product(range(n), repeat=2))
    A = [vec_of(fs) for fs in itertools.product(pairs, repeat=r)]
    B = []
    for fs in itertools.product(pairs, repeat=r + 1):
        v = [0] * dim
        for i in range(r + 1):
            sgn = 1 if i % 2 == 0 else -1
            for w in words_r:
                for letter, coef in (("a", 1), ("b", -1)):
                    full = w[:i] + letter + w[i:]
                    g = product([f[0] if c == "a" else f[1] for f, c in zip(fs, full)])
                    v[pos[(w, g)]] += sgn * coef
        B.append(v)
    return A, B, dim


def permutation_product(p: Tuple[int, ...], q: Tuple[int, ...]) -> Tuple[int, ...]:
    """p * q acting on {0..n-1}, applying q first."""
    return tuple(p[q[x]] for x in range(len(p)))


# ---------------------------------------------------------- knot oracle

def pd_tuples(code: str) -> List[Tuple[int, int, int, int]]:
    """Parse ``X[i,j,k,l],...`` with a regex-free split; only classical crossings."""
    out = []
    for part in code.replace(" ", "").split("X[")[1:]:
        out.append(tuple(int(x) for x in part.split("]")[0].split(",")))
    return out


def bracket_oracle(pd: Sequence[Tuple[int, int, int, int]]) -> Dict[int, int]:
    """State sum: sum over smoothings of A^(#A - #B) * delta^(loops - 1)."""
    poly: Dict[int, int] = {}
    for state in itertools.product((0, 1), repeat=len(pd)):
        parent = {}

        def find(x):
            parent.setdefault(x, x)
            while parent[x] != x:
                x = parent[x]
            return x

        def join(x, y):
            parent[find(x)] = find(y)

        for (i, j, k, l), s in zip(pd, state):
            if s == 0:
                join(i, j), join(k, l)
            else:
                join(i, l), join(j, k)
        loops = len({find(x) for c in pd for x in c})
        # delta^(loops-1) with delta = -A^2 - A^-2
        term = {0: 1}
        for _ in range(loops - 1):
            nxt: Dict[int, int] = {}
            for e, c in term.items():
                nxt[e + 2] = nxt.get(e + 2, 0) - c
                nxt[e - 2] = nxt.get(e - 2, 0) - c
            term = nxt
        shift = state.count(0) - state.count(1)
        for e, c in term.items():
            poly[e + shift] = poly.get(e + shift, 0) + c
    return {e: c for e, c in poly.items() if c}


def consecutive_writhe(pd: Sequence[Tuple[int, int, int, int]]) -> int:
    """Writhe of a one-component code whose labels increase along the knot."""
    m = 2 * len(pd)
    return sum(-1 if (l - j) % m == 1 else 1 for _, j, _, l in pd)


def jones_oracle(pd: Sequence[Tuple[int, int, int, int]]) -> Dict[Fraction, int]:
    """(-A^3)^(-w) <D>, then A = q^(-1/4); keys are q exponents."""
    w = consecutive_writhe(pd)
    out = {}
    for e, c in bracket_oracle(pd).items():
        e2 = e - 3 * w
        out[Fraction(-e2, 4)] = c * (-1) ** (w % 2)
    return out
