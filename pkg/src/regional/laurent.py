"""Exact Laurent polynomials in a single named variable."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

Coeff = Union[int, Fraction]


def _norm(c) -> Coeff:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        return _norm(Fraction(c))
    raise TypeError(f"coefficient must be exact, got {type(c).__name__}")


class LaurentPolynomial:
    """Finite sum ``sum c_k x**k`` with integer exponents and exact coefficients.

    Instances are immutable and hashable.  Zero coefficients are never stored.
    Arithmetic between polynomials requires matching variable names; plain
    integers and fractions are promoted to constants.
    """

    __slots__ = ("_terms", "var", "_hash")

    def __init__(self, terms: Mapping[int, Coeff] | Iterable[Tuple[int, Coeff]] = (), var: str = "x"):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[int, Coeff] = {}
        for e, c in items:
            if not isinstance(e, int):
                raise TypeError("exponents must be integers")
            acc[e] = acc.get(e, 0) + _norm(c)
        self._terms = {e: _norm(c) for e, c in sorted(acc.items()) if c != 0}
        self.var = var
        self._hash = None

    # construction helpers
    @classmethod
    def constant(cls, c: Coeff, var: str = "x") -> "LaurentPolynomial":
        return cls({0: c}, var)

    @classmethod
    def monomial(cls, exp: int, c: Coeff = 1, var: str = "x") -> "LaurentPolynomial":
        return cls({exp: c}, var)

    # inspection
    @property
    def terms(self) -> Dict[int, Coeff]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[int, Coeff]]:
        return iter(self._terms.items())

    def __getitem__(self, exp: int) -> Coeff:
        return self._terms.get(exp, 0)

    def coefficient(self, exp: int) -> Coeff:
        return self._terms.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return set(self._terms) <= {0}

    def min_degree(self) -> int:
        return min(self._terms) if self._terms else 0

    def max_degree(self) -> int:
        return max(self._terms) if self._terms else 0

    # arithmetic
    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            # constants are variable-free
            if other.var != self.var and not (self.is_constant() or other.is_constant()):
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPolynomial({0: other}, self.var)
        return NotImplemented

    def _var_with(self, other: "LaurentPolynomial") -> str:
        return other.var if self.is_constant() else self.var

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        acc = dict(self._terms)
        for e, c in o._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPolynomial(acc, self._var_with(o))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._terms.items()}, self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        acc: Dict[int, Coeff] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(acc, self._var_with(o))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be inverted")
            (e, c), = self._terms.items()
            return LaurentPolynomial({e * n: Fraction(1, 1) / Fraction(c) ** (-n)}, self.var)
        result = LaurentPolynomial({0: 1}, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPolynomial({0: other}, self.var)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        if self._terms != other._terms:
            return False
        # constants compare equal regardless of variable tag
        return self.var == other.var or self.is_constant()

    def __hash__(self):
        if self._hash is None:
            key = tuple(self._terms.items())
            self._hash = hash(key if self.is_constant() else (self.var, key))
        return self._hash

    # transformations
    def substitute_power(self, k: int, var: str | None = None) -> "LaurentPolynomial":
        """Return p(x**k), optionally renaming the variable."""
        return LaurentPolynomial({e * k: c for e, c in self._terms.items()}, var or self.var)

    def rescale_exponents(self, divisor: int, var: str | None = None) -> "LaurentPolynomial":
        """Return p with every exponent divided by ``divisor`` (must divide exactly)."""
        out = {}
        for e, c in self._terms.items():
            q, rem = divmod(e, divisor)
            if rem:
                raise ValueError(f"exponent {e} not divisible by {divisor}")
            out[q] = c
        return LaurentPolynomial(out, var or self.var)

    def evaluate(self, value):
        total = 0
        for e, c in self._terms.items():
            total += c * (value ** e if e >= 0 else Fraction(1) / Fraction(value) ** (-e))
        return _norm(total) if isinstance(total, (int, Fraction)) else total

    # serialization
    def to_json(self) -> dict:
        terms = []
        for e, c in self._terms.items():
            f = Fraction(c)
            terms.append([e, f.numerator, f.denominator])
        return {"var": self.var, "terms": terms}

    @classmethod
    def from_json(cls, obj: Mapping) -> "LaurentPolynomial":
        return cls({int(e): Fraction(int(n), int(d)) for e, n, d in obj["terms"]}, obj.get("var", "x"))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms.items():
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if e == 0:
                body = str(mag)
            else:
                power = self.var if e == 1 else f"{self.var}^{e}"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentPolynomial({self._terms!r}, var={self.var!r})"
