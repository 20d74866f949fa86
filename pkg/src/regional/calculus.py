"""Words, formal sums and regional-change systems.

A regional-change system has ``r`` sites, each with two alternatives ``a`` and
``b``; a word of length ``r`` picks one alternative per site and the system's
resolver returns the class of the resulting object.  Two instances are
provided: singular knot diagrams (:func:`knot_system`) and ordered products
in a finite group (:class:`GroupProductSystem`).
"""

from __future__ import annotations

import itertools
import json
import threading
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .errors import CapExceeded, GroupTableError, LengthMismatch, MultiComponent

WORD_CAP = 20


class Word(str):
    """A string over the alphabet ``{a, b}``."""

    def __new__(cls, letters: str = ""):
        if isinstance(letters, Word):
            return letters
        if not isinstance(letters, str) or set(letters) - {"a", "b"}:
            raise ValueError(f"not a word over {{a, b}}: {letters!r}")
        return super().__new__(cls, letters)


def sign(w: str) -> int:
    return -1 if Word(w).count("b") % 2 else 1


def all_words(r: int, cap: int = WORD_CAP) -> List[Word]:
    """All ``2**r`` words of length ``r`` in lexicographic order."""
    if r < 0:
        raise ValueError("length must be non-negative")
    if r > cap:
        raise CapExceeded(f"2^{r} words exceeds the cap r <= {cap}")
    return [Word("".join(t)) for t in itertools.product("ab", repeat=r)]


# ------------------------------------------------------------ formal sums

def sort_key(x: Any):
    if hasattr(x, "sort_key"):
        return (1, x.sort_key())
    if isinstance(x, tuple):
        return (2, tuple(sort_key(t) for t in x))
    if isinstance(x, (int, float)):
        return (0, x, "")
    return (1, str(x))


def basis_text(x: Any) -> str:
    if isinstance(x, tuple):
        return "|".join(basis_text(t) for t in x)
    return str(x)


def encode_basis(x: Any):
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, tuple):
        return [encode_basis(t) for t in x]
    return x


def decode_basis(obj: Any):
    if isinstance(obj, list):
        return tuple(decode_basis(t) for t in obj)
    if isinstance(obj, dict) and "jones" in obj:
        from .invariants import KnotClass

        return KnotClass.from_json(obj)
    return obj


class FormalSum:
    """Finite integer combination of hashable basis elements.

    Zero coefficients are dropped, so two sums are equal exactly when their
    term dictionaries are.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Hashable, int] | Iterable[Tuple[Hashable, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[Hashable, int] = {}
        for b, c in items:
            if not isinstance(c, int):
                raise TypeError(f"coefficients must be integers, got {type(c).__name__}")
            acc[b] = acc.get(b, 0) + c
        self._terms = {b: c for b, c in acc.items() if c}

    @classmethod
    def of(cls, basis: Hashable, coeff: int = 1) -> "FormalSum":
        return cls({basis: coeff})

    def items(self):
        return self._terms.items()

    def coefficient(self, basis: Hashable) -> int:
        return self._terms.get(basis, 0)

    def support(self) -> List[Hashable]:
        return sorted(self._terms, key=sort_key)

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self.support())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: "FormalSum") -> "FormalSum":
        if not isinstance(other, FormalSum):
            return NotImplemented
        acc = dict(self._terms)
        for b, c in other._terms.items():
            acc[b] = acc.get(b, 0) + c
        return FormalSum(acc)

    def __neg__(self) -> "FormalSum":
        return FormalSum({b: -c for b, c in self._terms.items()})

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self + (-other)

    def __mul__(self, k: int) -> "FormalSum":
        if not isinstance(k, int):
            return NotImplemented
        return FormalSum({b: k * c for b, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def map_basis(self, f: Callable[[Hashable], Hashable]) -> "FormalSum":
        """Push forward along a map of basis elements, collecting like terms."""
        return FormalSum((f(b), c) for b, c in self._terms.items())

    def apply(self, f: Callable[[Hashable], "FormalSum"]) -> "FormalSum":
        """Extend a basis-to-sum map linearly."""
        out = FormalSum()
        for b, c in self._terms.items():
            out = out + c * f(b)
        return out

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{self._terms[b]}*[{basis_text(b)}]" for b in self.support())

    def to_json(self) -> dict:
        return {"terms": [{"coeff": self._terms[b], "basis": encode_basis(b)} for b in self.support()]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "FormalSum":
        return cls((decode_basis(t["basis"]), int(t["coeff"])) for t in obj["terms"])

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"FormalSum({self.to_text()})"


# -------------------------------------------------------------- systems

class RegionalChangeSystem:
    """``r`` sites plus a deterministic resolver from words to class labels.

    Resolutions are memoized; the cache is shared between threads.
    """

    def __init__(self, r: int, resolver: Callable[[str], Hashable], name: str = ""):
        self.r = r
        self._resolver = resolver
        self.name = name
        self._cache: Dict[str, Hashable] = {}
        self._lock = threading.Lock()

    def __call__(self, w: str) -> Hashable:
        w = Word(w)
        if len(w) != self.r:
            raise LengthMismatch(f"word of length {len(w)} for {self.r} region(s)")
        with self._lock:
            if w in self._cache:
                return self._cache[w]
        label = self._resolver(w)
        with self._lock:
            self._cache.setdefault(w, label)
        return label

    def permuted(self, perm: Sequence[int]) -> "RegionalChangeSystem":
        """Reorder the sites: new site ``k`` is old site ``perm[k]`` (0-based)."""

        def resolver(w):
            old = [""] * self.r
            for k, src in enumerate(perm):
                old[src] = w[k]
            return self("".join(old))

        return RegionalChangeSystem(self.r, resolver, self.name)

    def swapped(self, site: int) -> "RegionalChangeSystem":
        """Exchange ``a`` and ``b`` at ``site`` (0-based)."""
        flip = {"a": "b", "b": "a"}
        return RegionalChangeSystem(
            self.r, lambda w: self(w[:site] + flip[w[site]] + w[site + 1:]), self.name
        )


def alternating_sum(s: RegionalChangeSystem, cap: int = WORD_CAP) -> FormalSum:
    """Sum over all words of ``sign(w) * [resolution]``."""
    return FormalSum((s(w), sign(w)) for w in all_words(s.r, cap))


def weighted_sum(s: RegionalChangeSystem, cap: int = WORD_CAP) -> FormalSum:
    """Sum over all words of the word-tagged resolution ``[(w, resolution)]``."""
    return FormalSum(((w, s(w)), 1) for w in all_words(s.r, cap))


def collapse(weighted: FormalSum) -> FormalSum:
    """Forget the word tags, weighting each term by the sign of its word."""
    return FormalSum((label, sign(w) * c) for (w, label), c in weighted.items())


# ---------------------------------------------------------------- groups

@dataclass(frozen=True)
class FiniteGroup:
    """Finite group given by element names and a full multiplication table.

    ``table[i][j]`` is the index of ``names[i] * names[j]``.
    """

    names: Tuple[str, ...]
    table: Tuple[Tuple[int, ...], ...]
    identity: int = field(init=False, default=0)

    def __post_init__(self):
        n = len(self.names)
        if n == 0:
            raise GroupTableError("empty group")
        if len(set(self.names)) != n:
            raise GroupTableError("duplicate element names")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise GroupTableError("multiplication table must be n x n")
        if any(not (0 <= x < n) for row in self.table for x in row):
            raise GroupTableError("table entries out of range")
        ids = [e for e in range(n) if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n))]
        if len(ids) != 1:
            raise GroupTableError("no two-sided identity")
        object.__setattr__(self, "identity", ids[0])
        for x in range(n):
            if not any(self.table[x][y] == ids[0] and self.table[y][x] == ids[0] for y in range(n)):
                raise GroupTableError(f"{self.names[x]} has no inverse")
        t = self.table
        for x in range(n):
            for y in range(n):
                xy = t[x][y]
                for z in range(n):
                    if t[xy][z] != t[x][t[y][z]]:
                        raise GroupTableError("multiplication is not associative")

    def __len__(self):
        return len(self.names)

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise GroupTableError(f"unknown element {name!r}") from None

    def to_json(self) -> dict:
        return {"elements": list(self.names), "table": [[self.names[x] for x in row] for row in self.table]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "FiniteGroup":
        names = tuple(str(x) for x in obj["elements"])
        lookup = {nm: k for k, nm in enumerate(names)}
        rows = []
        for row in obj["table"]:
            out = []
            for x in row:
                if isinstance(x, int):
                    out.append(x)
                elif x in lookup:
                    out.append(lookup[x])
                else:
                    raise GroupTableError(f"unknown element {x!r} in table")
            rows.append(tuple(out))
        return cls(names, tuple(rows))


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(tuple(str(k) for k in range(n)), tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))


def _cycle_name(p: Tuple[int, ...]) -> str:
    seen, parts = set(), []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = p[x]
        parts.append("(" + "".join(cyc) + ")")
    return "".join(parts) or "e"


def symmetric_group(n: int) -> FiniteGroup:
    """S_n with elements named in cycle notation; ``p*q`` applies ``q`` first."""
    perms = sorted(itertools.permutations(range(n)), key=lambda p: (p != tuple(range(n)), p))
    index = {p: k for k, p in enumerate(perms)}
    table = tuple(tuple(index[tuple(p[q[x]] for x in range(n))] for q in perms) for p in perms)
    return FiniteGroup(tuple(_cycle_name(p) for p in perms), table)


@dataclass(frozen=True)
class GroupProductSystem:
    group: FiniteGroup
    factors: Tuple[Tuple[int, int], ...]

    @property
    def r(self) -> int:
        return len(self.factors)

    def as_system(self) -> RegionalChangeSystem:
        return RegionalChangeSystem(self.r, lambda w: group_resolve(self, w), "group product")

    def to_json(self) -> dict:
        n = self.group.names
        return {"group": self.group.to_json(), "factors": [[n[a], n[b]] for a, b in self.factors]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "GroupProductSystem":
        g = FiniteGroup.from_json(obj["group"])
        factors = []
        for pair in obj["factors"]:
            if len(pair) != 2:
                raise GroupTableError("each factor must be an (a, b) pair")
            factors.append(tuple(x if isinstance(x, int) else g.index(x) for x in pair))
        return cls(g, tuple(factors))


def group_resolve(s: GroupProductSystem, w: str) -> int:
    """The ordered product of the chosen factors, as an element index."""
    w = Word(w)
    if len(w) != s.r:
        raise LengthMismatch(f"word of length {len(w)} for {s.r} factor(s)")
    acc = s.group.identity
    for (ga, gb), letter in zip(s.factors, w):
        acc = s.group.mul(acc, ga if letter == "a" else gb)
    return acc


def load_group_system(path: str) -> GroupProductSystem:
    with open(path, encoding="utf-8") as fh:
        return GroupProductSystem.from_json(json.load(fh))


# ----------------------------------------------------------------- knots

def knot_system(d, cap: int = WORD_CAP) -> RegionalChangeSystem:
    """Regional-change system of a singular knot diagram; labels are fingerprints."""
    from .diagram import resolve
    from .invariants import fingerprint

    if d.components != 1:
        raise MultiComponent(f"expected a knot, got {d.components} components")
    if d.r > cap:
        raise CapExceeded(f"{d.r} double points exceeds the cap r <= {cap}")
    return RegionalChangeSystem(d.r, lambda w: fingerprint(resolve(d, w)), "knot")
