"""Dense exact integer matrices and Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple


class IntegerMatrix:
    """Row-major matrix of Python ints (arbitrary precision)."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Sequence[int]], ncols: int | None = None):
        self.rows: List[List[int]] = [[int(x) for x in row] for row in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        if any(len(row) != ncols for row in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntegerMatrix":
        return cls([[0] * n for _ in range(m)], n)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> "IntegerMatrix":
        return cls([[col[i] for col in columns] for i in range(nrows)], len(columns))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def column(self, j: int) -> List[int]:
        return [row[j] for row in self.rows]

    def columns(self) -> List[List[int]]:
        return [self.column(j) for j in range(self.ncols)]

    def copy(self) -> "IntegerMatrix":
        return IntegerMatrix(self.rows, self.ncols)

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix.from_columns(self.rows, self.ncols)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        return IntegerMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows], other.ncols
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, IntegerMatrix) and self.shape == other.shape and self.rows == other.rows

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def to_json(self) -> dict:
        return {"rows": self.nrows, "cols": self.ncols, "entries": self.rows}

    def __repr__(self) -> str:
        return f"IntegerMatrix({self.rows!r})"


@dataclass
class SmithForm:
    """``D == U @ M @ V`` with ``U``, ``V`` unimodular; ``U_inv`` is ``U``'s inverse."""

    D: IntegerMatrix
    U: IntegerMatrix
    V: IntegerMatrix
    U_inv: IntegerMatrix
    rank: int
    invariant_factors: List[int]

    def to_json(self) -> dict:
        return {
            "shape": list(self.D.shape),
            "rank": self.rank,
            "invariant_factors": self.invariant_factors,
        }


def smith_normal_form(M: IntegerMatrix) -> SmithForm:
    """Smith normal form by elementary operations, pivoting on minimal |entry|."""
    A = [row[:] for row in M.rows]
    m, n = M.nrows, M.ncols
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]
        for row in Ui:
            row[i], row[k] = row[k], row[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q == 0:
            return
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]
        for row in Ui:
            row[src] -= q * row[dst]

    def add_col(dst, src, q):
        if q == 0:
            return
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            rem = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
            rem += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
            if rem:
                _, i, j = min(rem)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
            for row in Ui:
                row[t] = -row[t]
        t += 1
    factors = [A[i][i] for i in range(min(m, n)) if A[i][i]]
    return SmithForm(
        IntegerMatrix(A, n), IntegerMatrix(U, m), IntegerMatrix(V, n), IntegerMatrix(Ui, m), len(factors), factors
    )
