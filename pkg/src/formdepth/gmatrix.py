"""Graded matrices: grids of homogeneous polynomials with twist data.

Entry (i, j) must be zero or homogeneous of degree
col_twists[j] - row_twists[i]; this is checked at construction so that
every differential built downstream is honestly graded.
"""

from __future__ import annotations

from itertools import combinations

from .errors import FormdepthError
from .poly import Polynomial, PolyRing


class GradedMatrix:
    __slots__ = ("ring", "entries", "row_twists", "col_twists")

    def __init__(self, ring: PolyRing, entries, row_twists, col_twists, check: bool = True):
        self.ring = ring
        self.entries = tuple(tuple(row) for row in entries)
        self.row_twists = tuple(int(t) for t in row_twists)
        self.col_twists = tuple(int(t) for t in col_twists)
        if len(self.entries) != len(self.row_twists):
            raise FormdepthError("row count does not match row twists")
        for row in self.entries:
            if len(row) != len(self.col_twists):
                raise FormdepthError("column count does not match col twists")
        if check:
            self._check_graded()

    def _check_graded(self):
        for i, row in enumerate(self.entries):
            for j, p in enumerate(row):
                d = self.col_twists[j] - self.row_twists[i]
                if not p.homogeneous_of_degree(d):
                    raise FormdepthError(
                        f"entry ({i},{j}) not homogeneous of degree {d}: {p}"
                    )

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.col_twists)

    def column(self, j: int) -> list[Polynomial]:
        return [row[j] for row in self.entries]

    def columns(self) -> list[list[Polynomial]]:
        return [self.column(j) for j in range(self.ncols)]

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)

    def __mul__(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.ncols != other.nrows:
            raise FormdepthError("matrix dimensions do not match")
        if self.col_twists != other.row_twists:
            raise FormdepthError("twists do not chain")
        zero = self.ring.zero()
        entries = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = zero
                for k in range(self.ncols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            entries.append(row)
        return GradedMatrix(self.ring, entries, self.row_twists, other.col_twists)

    def submatrix(self, rows, cols) -> "GradedMatrix":
        entries = [[self.entries[i][j] for j in cols] for i in rows]
        return GradedMatrix(
            self.ring,
            entries,
            [self.row_twists[i] for i in rows],
            [self.col_twists[j] for j in cols],
        )

    def determinant(self) -> Polynomial:
        if self.nrows != self.ncols:
            raise FormdepthError("determinant of a non-square matrix")
        return _det(self.ring, self.entries)

    def minors(self, k: int) -> list[Polynomial]:
        """All k x k minors (possibly with repetitions removed later)."""
        if k < 0 or k > min(self.nrows, self.ncols):
            return []
        if k == 0:
            return [self.ring.one()]
        out = []
        for rows in combinations(range(self.nrows), k):
            for cols in combinations(range(self.ncols), k):
                sub = [[self.entries[i][j] for j in cols] for i in rows]
                out.append(_det(self.ring, sub))
        return out

    def signed_maximal_minors(self) -> list[Polynomial]:
        """For an m x (m-1) matrix: the ordered signed minors D_i obtained
        by deleting row i, with sign (-1)^(i+1); then [D_1 ... D_m] * self = 0."""
        m = self.nrows
        if self.ncols != m - 1:
            raise FormdepthError("signed maximal minors need an m x (m-1) matrix")
        out = []
        for i in range(m):
            rows = [r for r in range(m) if r != i]
            sub = [[self.entries[r][j] for j in range(m - 1)] for r in rows]
            d = _det(self.ring, sub)
            out.append(d if i % 2 == 0 else -d)
        return out

    def transpose(self) -> "GradedMatrix":
        entries = [[self.entries[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return GradedMatrix(
            self.ring,
            entries,
            [-t for t in self.col_twists],
            [-t for t in self.row_twists],
        )

    def __repr__(self):
        return f"<GradedMatrix {self.nrows}x{self.ncols} over {self.ring!r}>"


def _det(ring: PolyRing, rows) -> Polynomial:
    """Determinant by Laplace expansion with memoisation on column subsets."""
    n = len(rows)
    if n == 0:
        return ring.one()
    cols0 = tuple(range(n))
    memo: dict = {}

    def rec(r: int, cols: tuple[int, ...]) -> Polynomial:
        if not cols:
            return ring.one()
        key = (r, cols)
        got = memo.get(key)
        if got is not None:
            return got
        acc = ring.zero()
        for pos, c in enumerate(cols):
            p = rows[r][c]
            if p.is_zero():
                continue
            sub = rec(r + 1, cols[:pos] + cols[pos + 1 :])
            if sub.is_zero():
                continue
            term = p * sub
            acc = acc + (term if pos % 2 == 0 else -term)
        memo[key] = acc
        return acc

    return rec(0, cols0)


def matrix_of_scalars(ring: PolyRing, rows, row_twists=None, col_twists=None) -> GradedMatrix:
    """Lift a scalar matrix to a graded matrix of constants (zero twists)."""
    entries = [[ring.const(v) for v in row] for row in rows]
    nr = len(entries)
    nc = len(entries[0]) if entries else 0
    return GradedMatrix(
        ring,
        entries,
        row_twists if row_twists is not None else [0] * nr,
        col_twists if col_twists is not None else [0] * nc,
    )
