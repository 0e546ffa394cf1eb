"""Graded free resolutions, Betti tables, and perfection checks.

Resolutions are built by iterated syzygy computations; each syzygy
level is pruned to a minimal generating set by degree-wise linear
algebra, so the default resolution is minimal by construction.  An
independent constant-pivoting minimaliser is kept for arbitrary chains
and cross-checks.
"""

from __future__ import annotations

from .errors import FormdepthError, HomogeneityError
from .gmatrix import GradedMatrix
from .groebner import (
    IdealBasis,
    groebner_basis,
    hilbert_numerator,
    ideal_equal,
    krull_dimension,
    saturate_irrelevant,
    syzygy_generators,
)
from .linalg import SpanBuilder
from .poly import Polynomial, PolyRing


def monomials_of_degree(n: int, d: int):
    """All exponent tuples of length n and total degree d."""
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            yield (first,) + rest


def vector_degree(vec, row_twists) -> int | None:
    """Internal degree of a homogeneous vector; None for the zero vector."""
    deg = None
    for p, tw in zip(vec, row_twists):
        if p.is_zero():
            continue
        d = p.degree() + tw
        if deg is None:
            deg = d
        elif deg != d:
            raise HomogeneityError("vector is not homogeneous for the given twists")
    return deg


def _vec_to_coords(vec) -> dict:
    out = {}
    for comp, p in enumerate(vec):
        for m, c in p.terms.items():
            out[(comp, m)] = c
    return out


def minimal_generators(ring: PolyRing, vectors, row_twists):
    """Prune homogeneous vectors to a minimal generating set.

    Degree-ascending graded Nakayama: in each degree d, span the degree-d
    slice of the submodule generated by lower-degree keepers, then keep
    exactly the candidates that enlarge the span.
    """
    field = ring.field
    n = ring.nvars
    graded: dict[int, list] = {}
    for v in vectors:
        d = vector_degree(v, row_twists)
        if d is not None:
            graded.setdefault(d, []).append(v)
    kept: list[tuple[int, list]] = []  # (degree, vector)
    for d in sorted(graded):
        span = SpanBuilder(field)
        for kd, kv in kept:
            shift = d - kd
            if shift <= 0:
                continue
            for mono in monomials_of_degree(n, shift):
                shifted = [_shift_poly(p, mono) for p in kv]
                span.add(_vec_to_coords(shifted))
        for v in graded[d]:
            if span.add(_vec_to_coords(v)):
                kept.append((d, v))
    return [v for _, v in kept]


def _shift_poly(p: Polynomial, mono) -> Polynomial:
    if p.is_zero():
        return p
    return Polynomial(
        p.ring, {tuple(a + b for a, b in zip(m, mono)): c for m, c in p.terms.items()}
    )


def module_syzygies(M: GradedMatrix, prune: bool = True) -> GradedMatrix:
    """Columns generating the kernel of M, as a graded matrix.

    The result satisfies M * result = 0 exactly; with prune=True the
    columns are a minimal generating set of the syzygy module.
    """
    ring = M.ring
    cols = M.columns()
    syz = syzygy_generators(ring, cols, M.nrows)
    twists = M.col_twists
    if prune:
        syz = minimal_generators(ring, syz, twists)
    degs = []
    for v in syz:
        d = vector_degree(v, twists)
        if d is None:
            raise FormdepthError("zero syzygy vector produced")
        degs.append(d)
    order = sorted(range(len(syz)), key=lambda i: degs[i])
    entries = [[syz[i][r] for i in order] for r in range(M.ncols)]
    result = GradedMatrix(ring, entries, twists, [degs[i] for i in order])
    product = M * result
    if not product.is_zero():
        raise FormdepthError("syzygy verification failed: M * S != 0")
    return result


class FreeResolution:
    """Chain of graded differentials d1, d2, ... resolving R/I."""

    __slots__ = ("ring", "chain", "minimal")

    def __init__(self, ring: PolyRing, chain, minimal: bool = False, check: bool = True):
        self.ring = ring
        self.chain = tuple(chain)
        self.minimal = minimal
        if check:
            self.validate(minimal=minimal)

    def validate(self, minimal: bool = False):
        for a, b in zip(self.chain, self.chain[1:]):
            if a.col_twists != b.row_twists:
                raise FormdepthError("resolution twists do not chain")
            if not (a * b).is_zero():
                raise FormdepthError("nonzero composite in resolution")
        if minimal:
            for mat in self.chain:
                for i, row in enumerate(mat.entries):
                    for j, p in enumerate(row):
                        if not p.is_zero() and mat.col_twists[j] == mat.row_twists[i]:
                            raise FormdepthError("constant entry in a minimal resolution")

    @property
    def length(self) -> int:
        return sum(1 for m in self.chain if m.ncols > 0)

    def betti_table(self) -> "BettiTable":
        if not self.minimal:
            raise FormdepthError("Betti table requires a minimal resolution")
        entries: dict = {}
        if self.chain:
            for t in self.chain[0].row_twists:
                entries[(0, t)] = entries.get((0, t), 0) + 1
        for k, mat in enumerate(self.chain, start=1):
            for t in mat.col_twists:
                entries[(k, t)] = entries.get((k, t), 0) + 1
        return BettiTable(entries)

    def __repr__(self):
        shape = " <- ".join(str(m.ncols) for m in self.chain)
        return f"<resolution R <- {shape}>"


class BettiTable:
    """Graded Betti numbers: (homological degree, internal degree) -> rank."""

    __slots__ = ("entries",)

    def __init__(self, entries: dict):
        self.entries = {k: int(v) for k, v in entries.items() if v}

    def rank(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    def total_rank(self, i: int) -> int:
        return sum(v for (h, _), v in self.entries.items() if h == i)

    def max_homological_degree(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    def alternating_rank_sum(self) -> int:
        return sum((-1) ** i * v for (i, _), v in self.entries.items())

    def k_polynomial(self) -> list[int]:
        """Coefficients of sum (-1)^i beta_{i,j} t^j (the HS numerator)."""
        top = max((j for _, j in self.entries), default=0)
        out = [0] * (top + 1)
        for (i, j), v in self.entries.items():
            out[j] += (-1) ** i * v
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out

    def triples(self) -> list[dict]:
        return [
            {"i": i, "j": j, "rank": r}
            for (i, j), r in sorted(self.entries.items())
        ]

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    def __repr__(self):
        return f"BettiTable({self.entries!r})"

    def __str__(self):
        if not self.entries:
            return "(empty)"
        imax = self.max_homological_degree()
        rows = sorted({j - i for (i, j) in self.entries})
        lines = ["     " + "".join(f"{i:>6}" for i in range(imax + 1))]
        for r in rows:
            cells = []
            for i in range(imax + 1):
                v = self.entries.get((i, r + i), 0)
                cells.append(f"{v if v else '.':>6}")
            lines.append(f"{r:>4}:" + "".join(cells))
        return "\n".join(lines)


def free_resolution(I: IdealBasis, prune: bool = True, max_extra: int = 4) -> FreeResolution:
    """Finite graded free resolution of R/I by iterated syzygies."""
    I.require_homogeneous("free resolution")
    ring = I.ring
    gens = list(I.gens)
    if any(g.is_constant() for g in gens):
        raise FormdepthError("resolution of the zero module (unit ideal)")
    if prune and gens:
        pruned = minimal_generators(ring, [[g] for g in gens], (0,))
        gens = [v[0] for v in pruned]
    chain = [
        GradedMatrix(ring, [list(gens)], (0,), [g.degree() for g in gens])
    ]
    while chain[-1].ncols > 0:
        syz = module_syzygies(chain[-1], prune=prune)
        if syz.ncols == 0:
            break
        chain.append(syz)
        if len(chain) > ring.nvars + max_extra:
            raise FormdepthError("resolution exceeded the length bound")
    return FreeResolution(ring, chain, minimal=prune)


def minimalize(res: FreeResolution) -> tuple[FreeResolution, BettiTable]:
    """Pivot away constant entries until the chain is minimal.

    Pivots are taken in order of increasing internal degree; the Betti
    table of the result is independent of the pivot sequence.
    """
    ring = res.ring
    mats = [[list(row) for row in m.entries] for m in res.chain]
    rows_tw = [list(m.row_twists) for m in res.chain]
    cols_tw = [list(m.col_twists) for m in res.chain]
    field = ring.field

    def find_pivot(k):
        best = None
        for i, row in enumerate(mats[k]):
            for j, p in enumerate(row):
                if p.is_zero() or cols_tw[k][j] != rows_tw[k][i]:
                    continue
                key = (cols_tw[k][j], i, j)
                if best is None or key < best[0]:
                    best = (key, i, j)
        return best

    for k in range(len(mats)):
        while True:
            found = find_pivot(k)
            if found is None:
                break
            _, r, c = found
            u = mats[k][r][c].constant_coefficient()
            uinv = field.inv(u)
            old = mats[k]
            nrows, ncols = len(old), len(old[0]) if old else 0
            new = []
            for i in range(nrows):
                if i == r:
                    continue
                row = []
                for j in range(ncols):
                    if j == c:
                        continue
                    v = old[i][j]
                    if not old[i][c].is_zero() and not old[r][j].is_zero():
                        v = v - old[i][c] * old[r][j].scale(uinv)
                    row.append(v)
                new.append(row)
            mats[k] = new
            rows_tw[k] = [t for i, t in enumerate(rows_tw[k]) if i != r]
            cols_tw[k] = [t for j, t in enumerate(cols_tw[k]) if j != c]
            if k + 1 < len(mats):
                mats[k + 1] = [row for i, row in enumerate(mats[k + 1]) if i != c]
                rows_tw[k + 1] = [t for i, t in enumerate(rows_tw[k + 1]) if i != c]
            if k - 1 >= 0:
                mats[k - 1] = [
                    [v for j, v in enumerate(row) if j != r] for row in mats[k - 1]
                ]
                cols_tw[k - 1] = [t for j, t in enumerate(cols_tw[k - 1]) if j != r]

    chain = []
    for k in range(len(mats)):
        if not rows_tw[k] and k > 0:
            break
        chain.append(GradedMatrix(ring, mats[k], rows_tw[k], cols_tw[k]))
    while chain and chain[-1].ncols == 0 and len(chain) > 1:
        chain.pop()
    out = FreeResolution(ring, chain, minimal=True)
    return out, out.betti_table()


def homological_profile(I: IdealBasis, check_depth: bool = True):
    """(projective dimension of R/I, depth, Betti table).

    depth = nvars - pd (graded Auslander-Buchsbaum); when check_depth is
    set, depth 0 is cross-checked against strict inclusion in the
    saturation and a mismatch is a hard error.
    """
    res = free_resolution(I)
    table = res.betti_table()
    pd = res.length
    depth = I.ring.nvars - pd
    if check_depth and I.gens:
        saturated = ideal_equal(I, saturate_irrelevant(I))
        if (depth == 0) == saturated:
            raise FormdepthError(
                "depth via pd and depth via saturation disagree; engine bug"
            )
    return pd, depth, table


def indeg_syzygies(I: IdealBasis) -> int:
    """Least internal degree of a minimal first syzygy, as an offset
    above the common generator degree."""
    degs = {g.degree() for g in I.gens}
    if len(degs) != 1:
        raise FormdepthError("indeg requires an equigenerated ideal")
    d = degs.pop()
    res = free_resolution(I)
    if len(res.chain) < 2 or res.chain[1].ncols == 0:
        raise FormdepthError("syzygy module is zero")
    return min(res.chain[1].col_twists) - d


def hilbert_burch_verify(I: IdealBasis) -> bool:
    """Hilbert-Burch round trip for a codimension-2 perfect ideal: the
    given generators must equal one common scalar times the ordered
    signed maximal minors of their syzygy matrix."""
    ring = I.ring
    _, codim = krull_dimension(I)
    if codim != 2:
        raise FormdepthError(f"Hilbert-Burch needs codimension 2, got {codim}")
    res = free_resolution(I)
    if res.length != 2:
        raise FormdepthError(f"Hilbert-Burch needs pd(R/I) = 2, got {res.length}")
    gens = list(I.gens)
    m = len(gens)
    M = GradedMatrix(ring, [gens], (0,), [g.degree() for g in gens])
    S = module_syzygies(M)
    if S.ncols != m - 1:
        raise FormdepthError(
            "syzygy matrix is not m x (m-1); generators are not minimal"
        )
    minors = S.signed_maximal_minors()
    c = None
    for g, d in zip(gens, minors):
        if d.is_zero():
            return False
        if c is None:
            c = ring.field.div(
                g.lead_coefficient(), d.lead_coefficient()
            )
    for g, d in zip(gens, minors):
        if g != d.scale(c):
            return False
    return True


def betti_matches_numerator(I: IdealBasis, table: BettiTable) -> bool:
    """K-polynomial consistency: alternating Betti sums reproduce the
    Hilbert-series numerator."""
    return table.k_polynomial() == list(hilbert_numerator(I))
