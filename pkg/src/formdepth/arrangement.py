"""Generic central arrangements of linear forms.

Covers genericity testing, normalisation so the first n forms become
coordinates, the syzygy matrix of the (m-1)-fold product ideal, the
compressed lower block whose maximal minors generate a power of the
irrelevant ideal, the closed-form Betti table of the Jacobian ideal,
and the reduction test J_F subseteq I.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .errors import CharacteristicGuardError, FormdepthError, HypothesisError
from .gmatrix import GradedMatrix, matrix_of_scalars
from .groebner import (
    IdealBasis,
    contains,
    groebner_basis,
    ideal_equal,
    ideal_power_product,
    normal_form,
)
from .poly import LinearChange, Polynomial, PolyRing, scalar_matrix_det, substitute_linear
from .resolution import BettiTable, monomials_of_degree


class Arrangement:
    """Central arrangement of m pairwise non-proportional linear forms
    of full rank n."""

    __slots__ = ("ring", "forms", "theta")

    def __init__(self, ring: PolyRing, forms):
        self.ring = ring
        self.forms = tuple(forms)
        n = ring.nvars
        field = ring.field
        rows = []
        for l in self.forms:
            if not l.homogeneous_of_degree(1) or l.is_zero():
                raise FormdepthError(f"not a nonzero linear form: {l}")
            row = [field.zero] * n
            for m, c in l.terms.items():
                row[m.index(1)] = c
            rows.append(tuple(row))
        self.theta = tuple(rows)
        for i, j in combinations(range(len(rows)), 2):
            if _proportional(field, rows[i], rows[j]):
                raise FormdepthError(f"proportional forms at positions {i}, {j}")
        if _rank(field, rows) != n:
            raise FormdepthError("arrangement does not have full rank n")

    @property
    def m(self) -> int:
        return len(self.forms)

    @property
    def n(self) -> int:
        return self.ring.nvars

    def defining_polynomial(self) -> Polynomial:
        F = self.ring.one()
        for l in self.forms:
            F = F * l
        return F

    def gradient_ideal(self) -> IdealBasis:
        F = self.defining_polynomial()
        return IdealBasis(self.ring, [F.derivative(i) for i in range(self.n)])

    def fold_product_ideal(self) -> IdealBasis:
        """The ideal of (m-1)-fold products F / l_i."""
        gens = []
        for i in range(self.m):
            p = self.ring.one()
            for j, l in enumerate(self.forms):
                if j != i:
                    p = p * l
            gens.append(p)
        return IdealBasis(self.ring, gens)

    def __repr__(self):
        return f"<arrangement of {self.m} lines in {self.n} variables>"


def _proportional(field, a, b) -> bool:
    for x, y in zip(a, b):
        for u, v in zip(a, b):
            if field.mul(x, v) != field.mul(y, u):
                return False
    return True


def _rank(field, rows) -> int:
    work = [list(r) for r in rows]
    ncols = len(work[0]) if work else 0
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(work)):
            if work[r][col] != field.zero:
                pivot = r
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = field.inv(work[rank][col])
        work[rank] = [field.mul(v, inv) for v in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col] != field.zero:
                f = work[r][col]
                work[r] = [field.sub(v, field.mul(f, w)) for v, w in zip(work[r], work[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class CoefficientMatrixA:
    """Coefficient rows of the forms beyond the first n, after the first
    n forms have been normalised to the coordinates."""

    rows: tuple

    def all_minors_nonzero(self, field) -> bool:
        nr = len(self.rows)
        nc = len(self.rows[0]) if self.rows else 0
        for size in range(1, min(nr, nc) + 1):
            for rs in combinations(range(nr), size):
                for cs in combinations(range(nc), size):
                    sub = [[self.rows[i][j] for j in cs] for i in rs]
                    if scalar_matrix_det(field, sub) == field.zero:
                        return False
        return True


def is_generic(arr: Arrangement) -> bool:
    """Every n of the defining forms are linearly independent."""
    if arr.m < arr.n:
        raise FormdepthError("genericity needs m >= n")
    field = arr.ring.field
    for rows in combinations(range(arr.m), arr.n):
        sub = [arr.theta[i] for i in rows]
        if scalar_matrix_det(field, sub) == field.zero:
            return False
    return True


def normalize_to_coordinates(arr: Arrangement):
    """Coordinate change making the first n forms the coordinates.

    Returns (normalised arrangement, change, coefficient matrix A of the
    remaining forms); every minor of A is checked to be nonzero.
    """
    if not is_generic(arr):
        raise HypothesisError("arrangement is not generic")
    ring = arr.ring
    n = arr.n
    head = [arr.theta[i] for i in range(n)]
    inverse = _invert(ring.field, head)
    change = LinearChange(ring, inverse)
    new_forms = [substitute_linear(l, change) for l in arr.forms]
    for i in range(n):
        if new_forms[i] != ring.variable(i):
            raise FormdepthError("normalisation failed to produce coordinates")
    new_arr = Arrangement(ring, new_forms)
    A = CoefficientMatrixA(tuple(new_arr.theta[n:]))
    if not A.all_minors_nonzero(ring.field):
        raise FormdepthError("a minor of the coefficient matrix vanishes")
    return new_arr, change, A


def _invert(field, rows):
    from .poly import _invert_scalar_matrix

    inv = _invert_scalar_matrix(field, [tuple(r) for r in rows])
    if inv is None:
        raise FormdepthError("singular head block")
    return inv


def fold_syzygy_matrix(arr: Arrangement) -> GradedMatrix:
    """The m x (m-1) syzygy matrix of the (m-1)-fold product ideal:
    diagonal -l_1, ..., -l_{m-1} over a last row of l_m.

    Requires the normalised shape (first n forms are the coordinates)."""
    ring = arr.ring
    n, m = arr.n, arr.m
    for i in range(n):
        if arr.forms[i] != ring.variable(i):
            raise FormdepthError("arrangement must be normalised first")
    zero = ring.zero()
    entries = []
    for i in range(m - 1):
        row = [zero] * (m - 1)
        row[i] = -arr.forms[i]
        entries.append(row)
    entries.append([arr.forms[m - 1]] * (m - 1))
    return GradedMatrix(ring, entries, [-1] * m, [0] * (m - 1))


def tail_syzygy_block(arr: Arrangement) -> GradedMatrix:
    """The (m-n) x (m-1) product [-A | I] * Gamma of linear entries whose
    maximal minors generate the (m-n)-th power of the irrelevant ideal."""
    ring = arr.ring
    n, m = arr.n, arr.m
    if m < n + 1:
        raise FormdepthError("need m >= n + 1")
    gamma = fold_syzygy_matrix(arr)
    field = ring.field
    block = []
    for i in range(m - n):
        row = [field.neg(arr.theta[n + i][j]) for j in range(n)]
        row += [field.one if j == i else field.zero for j in range(m - n)]
        block.append(row)
    left = matrix_of_scalars(ring, block, row_twists=[-1] * (m - n), col_twists=[-1] * m)
    return left * gamma


def gradient_pairing_identity(arr: Arrangement) -> bool:
    """Exact identity [f_{n+1} ... f_m] * S = -[dF/dx_1 ... dF/dx_n] * S'
    where S' is the top n-row block of the transformed syzygy matrix."""
    ring = arr.ring
    n, m = arr.n, arr.m
    S = tail_syzygy_block(arr)
    gamma = fold_syzygy_matrix(arr)
    folds = arr.fold_product_ideal().gens
    F = arr.defining_polynomial()
    lhs = [ring.zero() for _ in range(m - 1)]
    for j in range(m - 1):
        for i in range(m - n):
            lhs[j] = lhs[j] + folds[n + i] * S.entries[i][j]
    rhs = [ring.zero() for _ in range(m - 1)]
    for j in range(m - 1):
        for i in range(n):
            rhs[j] = rhs[j] + F.derivative(i) * gamma.entries[i][j]
    return all((a + b).is_zero() for a, b in zip(lhs, rhs))


def verify_minors_identity(arr: Arrangement) -> bool:
    """Maximal minors of the tail block generate exactly m^(m-n).

    Guard: the characteristic must not divide m."""
    ring = arr.ring
    n, m = arr.n, arr.m
    char = ring.characteristic
    if char and m % char == 0:
        raise CharacteristicGuardError(f"char {char} divides m = {m}")
    S = tail_syzygy_block(arr)
    minors = [p for p in S.minors(m - n) if not p.is_zero()]
    minor_ideal = IdealBasis(ring, minors)
    power_gens = [
        ring.monomial(e) for e in monomials_of_degree(n, m - n)
    ]
    power_ideal = IdealBasis(ring, power_gens)
    gb_power = groebner_basis(power_ideal)
    for p in minors:
        if not normal_form(p, gb_power).is_zero():
            return False
    gb_minors = groebner_basis(minor_ideal)
    for p in power_gens:
        if not normal_form(p, gb_minors).is_zero():
            return False
    return True


def arrangement_betti_formula(n: int, m: int) -> BettiTable:
    """Predicted minimal Betti table of R/J_F for a generic arrangement:
    ranks (1; n; beta_1..beta_{n-1}) at internal degrees
    (0; m-1; 2m-n, ..., 2m-2), with
    beta_i = C(m-n+i-2, i-1) * C(m-1, m-n+i)."""
    if m <= n:
        raise FormdepthError("formula needs m >= n + 1")
    entries = {(0, 0): 1, (1, m - 1): n}
    for i in range(1, n):
        rank = comb(m - n + i - 2, i - 1) * comb(m - 1, m - n + i)
        if rank:
            entries[(i + 1, 2 * m - n - 1 + i)] = rank
    return BettiTable(entries)


def is_reduction(J: IdealBasis, I: IdealBasis, r_max: int = 8):
    """Least r <= r_max with I^(r+1) = J * I^r, or None if not found.

    Presence certifies that J is a reduction of I; absence within the
    bound is inconclusive by design."""
    for g in J.gens:
        if not contains(I, g):
            raise HypothesisError("J is not contained in I")
    ring = I.ring
    if not I.gens:
        return 0 if not J.gens else None
    power = IdealBasis(ring, [ring.one()])  # I^0
    for r in range(r_max + 1):
        next_power = IdealBasis(ring, [a * b for a in power.gens for b in I.gens])
        rhs = IdealBasis(ring, [a * b for a in power.gens for b in J.gens])
        if ideal_equal(next_power, rhs):
            return r
        power = next_power
    return None


def random_generic_arrangement(ring: PolyRing, m: int, seed) -> Arrangement:
    """Seeded random generic arrangement; up to 100 redraws."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    field = ring.field
    n = ring.nvars
    p = getattr(field, "p", None)
    for _ in range(100):
        forms = []
        for _ in range(m):
            if p is not None:
                coeffs = [rng.randrange(p) for _ in range(n)]
            else:
                coeffs = [rng.randint(-50, 50) for _ in range(n)]
            l = ring.zero()
            for j, c in enumerate(coeffs):
                if c:
                    l = l + ring.variable(j).scale(field(c))
            if l.is_zero():
                break
            forms.append(l)
        if len(forms) != m:
            continue
        try:
            arr = Arrangement(ring, forms)
        except FormdepthError:
            continue
        if is_generic(arr):
            return arr
    raise HypothesisError("failed to sample a generic arrangement in 100 draws")
