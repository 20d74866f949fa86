"""The word complex: letter deletion, the boundary map, and sampled quotients.

Chains of degree ``r`` are integer combinations of pairs ``(w, label)`` with
``|w| = r``.  Labels are carried along untouched by the boundary.  Quotients
are always computed on the finitely many generators supplied, so every rank
reported here describes a *sampled subquotient*.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Hashable, Iterable, List, Sequence, Tuple

from .calculus import FormalSum, Word, sort_key
from .errors import BasisIncomplete, DegreeZero, IndexOutOfRange, MixedDegree
from .intmatrix import IntegerMatrix, smith_normal_form

Vector = Tuple[int, ...]


def boundary_letter(w: str, i: int) -> Tuple[Word, int]:
    """Delete letter ``i`` (1-based); the sign is -1 when that letter is ``b``."""
    w = Word(w)
    if not 1 <= i <= len(w):
        raise IndexOutOfRange(f"letter {i} of a word of length {len(w)}")
    return Word(w[: i - 1] + w[i:]), (-1 if w[i - 1] == "b" else 1)


@dataclass(frozen=True)
class ChainElement:
    degree: int
    terms: FormalSum = field(default_factory=FormalSum)

    def __post_init__(self):
        for basis, _ in self.terms.items():
            if not (isinstance(basis, tuple) and len(basis) == 2):
                raise ValueError(f"chain basis elements are (word, label) pairs, got {basis!r}")
            if len(Word(basis[0])) != self.degree:
                raise MixedDegree(f"word {basis[0]!r} in a chain of degree {self.degree}")

    @classmethod
    def from_sum(cls, terms: FormalSum, degree: int | None = None) -> "ChainElement":
        if degree is None:
            degrees = {len(w) for w, _ in terms.support()}
            if len(degrees) > 1:
                raise MixedDegree(f"terms of degrees {sorted(degrees)}")
            degree = degrees.pop() if degrees else 0
        return cls(degree, FormalSum(((Word(w), k), c) for (w, k), c in terms.items()))

    def _check(self, other: "ChainElement"):
        if other.degree != self.degree and self.terms and other.terms:
            raise MixedDegree(f"degrees {self.degree} and {other.degree}")

    def __add__(self, other: "ChainElement") -> "ChainElement":
        self._check(other)
        return ChainElement(self.degree if self.terms else other.degree, self.terms + other.terms)

    def __sub__(self, other: "ChainElement") -> "ChainElement":
        return self + (-other)

    def __neg__(self) -> "ChainElement":
        return ChainElement(self.degree, -self.terms)

    def __mul__(self, k: int) -> "ChainElement":
        return ChainElement(self.degree, self.terms * k)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainElement):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def to_text(self) -> str:
        return self.terms.to_text()

    def to_json(self) -> dict:
        out = self.terms.to_json()
        out["degree"] = self.degree
        return out

    @classmethod
    def from_json(cls, obj) -> "ChainElement":
        terms = FormalSum.from_json(obj)
        degree = obj.get("degree")
        return cls.from_sum(terms, None if degree is None else int(degree))


@lru_cache(maxsize=None)
def _faces(w: str) -> Tuple[Tuple[Word, int], ...]:
    out = []
    for i in range(1, len(w) + 1):
        v, s = boundary_letter(w, i)
        out.append((v, s if i % 2 else -s))
    return tuple(out)


def boundary(c: ChainElement) -> ChainElement:
    """``d = sum_i (-1)^(i+1) d_i`` applied termwise; labels are constants."""
    if c.degree < 1:
        raise DegreeZero("the boundary is defined from degree 1 on")
    acc: Dict[Tuple[Word, Hashable], int] = {}
    for (w, label), coeff in c.terms.items():
        for v, s in _faces(w):
            acc[(v, label)] = acc.get((v, label), 0) + s * coeff
    return ChainElement(c.degree - 1, FormalSum(acc))


def chain_basis(chains: Iterable[ChainElement]) -> List[Tuple[Word, Hashable]]:
    """Union of supports in canonical order (word, then label)."""
    seen = set()
    for ch in chains:
        seen.update(ch.terms.support())
    return sorted(seen, key=sort_key)


def chain_matrix(generators: Sequence[ChainElement], basis: Sequence[Tuple[Word, Hashable]]) -> IntegerMatrix:
    """Column ``j`` holds the coordinates of ``generators[j]`` in ``basis``."""
    degrees = {g.degree for g in generators if not g.is_zero()}
    if len(degrees) > 1:
        raise MixedDegree(f"generators of degrees {sorted(degrees)}")
    index = {b: k for k, b in enumerate(basis)}
    cols = []
    for g in generators:
        col = [0] * len(basis)
        for b, c in g.terms.items():
            if b not in index:
                raise BasisIncomplete(f"{b!r} is not in the basis")
            col[index[b]] = c
        cols.append(col)
    return IntegerMatrix.from_columns(cols, len(basis))


# ------------------------------------------------------------- lattices

def span_basis(vectors: Iterable[Sequence[int]], dim: int, chunk: int = 48) -> List[Vector]:
    """A Z-basis of the lattice spanned by ``vectors`` in ``Z^dim``.

    Vectors are absorbed in chunks; after each chunk the running basis is
    replaced by ``d_i * (U^-1)[:, i]`` from the Smith form of the collected
    columns, which keeps the working matrix at most ``dim`` columns wide
    plus one chunk.
    """
    pending = list(dict.fromkeys(tuple(v) for v in vectors if any(v)))
    basis: List[Vector] = []
    for start in range(0, len(pending), chunk):
        cols = basis + pending[start:start + chunk]
        snf = smith_normal_form(IntegerMatrix.from_columns(cols, dim))
        ui = snf.U_inv
        basis = [tuple(snf.invariant_factors[k] * ui.rows[i][k] for i in range(dim)) for k in range(snf.rank)]
    return basis


@dataclass
class QuotientInfo:
    rank_span: int
    rank_boundaries: int
    rank_quotient: int
    torsion: List[int]
    ambient_dim: int
    label: str = "sampled subquotient"

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "ambient_dim": self.ambient_dim,
            "rank_span": self.rank_span,
            "rank_boundaries": self.rank_boundaries,
            "rank_quotient": self.rank_quotient,
            "torsion": self.torsion,
        }


def quotient_info(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], dim: int) -> QuotientInfo:
    """Ranks of span(A), span(B), and the structure of (span A + span B) / span B."""
    basis_a = span_basis(A, dim)
    basis_b = span_basis(B, dim)
    basis_l = span_basis(list(basis_a) + list(basis_b), dim)
    k = len(basis_l)
    torsion: List[int] = []
    rank_c = 0
    if k and basis_b:
        snf = smith_normal_form(IntegerMatrix.from_columns(basis_l, dim))
        coords = []
        for b in basis_b:
            ub = [sum(snf.U.rows[i][j] * b[j] for j in range(dim)) for i in range(dim)]
            y = []
            for i in range(k):
                q, rem = divmod(ub[i], snf.invariant_factors[i])
                assert rem == 0, "boundary vector outside the span"
                y.append(q)
            coords.append([sum(snf.V.rows[i][t] * y[t] for t in range(k)) for i in range(k)])
        csnf = smith_normal_form(IntegerMatrix.from_columns(coords, k))
        rank_c = csnf.rank
        torsion = [f for f in csnf.invariant_factors if f > 1]
    return QuotientInfo(len(basis_a), len(basis_b), k - rank_c, torsion, dim)


def _vectors(chains: Sequence[ChainElement], basis) -> List[List[int]]:
    return chain_matrix(chains, basis).columns() if chains else []


def difference_rank(gens_r: Sequence[ChainElement], gens_r1: Sequence[ChainElement]) -> QuotientInfo:
    """Sampled version of the degree-r difference group.

    ``A`` is spanned by ``gens_r`` and ``B`` by the boundaries of ``gens_r1``;
    returns rank A, rank B, and the rank and torsion of ``(A + B) / B``.
    """
    degrees = {g.degree for g in gens_r if not g.is_zero()}
    upper = {g.degree for g in gens_r1 if not g.is_zero()}
    if len(degrees) > 1 or len(upper) > 1:
        raise MixedDegree("generators must share one degree per side")
    if degrees and upper and upper != {d + 1 for d in degrees}:
        raise MixedDegree(f"expected degrees r and r+1, got {sorted(degrees)} and {sorted(upper)}")
    bounds = [boundary(g) for g in gens_r1]
    basis = chain_basis(list(gens_r) + bounds)
    return quotient_info(_vectors(list(gens_r), basis), _vectors(bounds, basis), len(basis))


def vassiliev_quotient_rank(classes: Iterable[Hashable], sums: Iterable[FormalSum]) -> QuotientInfo:
    """Rank and torsion of span(classes) modulo span(sums), inside the free group on all labels seen."""
    classes = list(dict.fromkeys(classes))
    sums = list(sums)
    labels = set(classes)
    for s in sums:
        labels.update(s.support())
    basis = sorted(labels, key=sort_key)
    index = {b: k for k, b in enumerate(basis)}
    A = []
    for c in classes:
        v = [0] * len(basis)
        v[index[c]] = 1
        A.append(v)
    B = []
    for s in sums:
        v = [0] * len(basis)
        for b, c in s.items():
            v[index[b]] = c
        B.append(v)
    return quotient_info(A, B, len(basis))

