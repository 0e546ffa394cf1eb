"""Buchberger engine interface and the ideal-theoretic toolbox.

Everything here reduces to two kernel calls (reduced Groebner basis and
normal form) plus combinatorics on lead-term ideals.  Colon ideals and
intersections are computed through module syzygies, so no elimination
orders are needed anywhere.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb

from . import engine
from .errors import BoundExceededError, FormdepthError, HomogeneityError, RingMismatchError
from .orders import MonomialOrder
from .poly import Polynomial, PolyRing, exact_divide


# -- conversions to the kernel boundary --------------------------------


def _perm_and_inverse(order: MonomialOrder, n: int):
    if order.precedence is None:
        return None, None
    perm = order._perm(n)
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    return perm, tuple(inv)


def _vec_to_kpoly(vec, perm):
    out = []
    for comp, poly in enumerate(vec):
        for m, c in poly.terms.items():
            e = m if perm is None else tuple(m[p] for p in perm)
            out.append(((comp, e), c))
    return out


def _kpoly_to_vec(kp, ring: PolyRing, ncomp: int, inv_perm):
    terms = [dict() for _ in range(ncomp)]
    for (comp, e), c in kp:
        m = e if inv_perm is None else tuple(e[inv_perm.index(i)] for i in range(len(e)))
        terms[comp][m] = c
    return [Polynomial(ring, t) for t in terms]


def _kpoly_to_vec_fast(kp, ring: PolyRing, ncomp: int, perm):
    if perm is None:
        terms = [dict() for _ in range(ncomp)]
        for (comp, e), c in kp:
            terms[comp][e] = c
        return [Polynomial(ring, t) for t in terms]
    n = ring.nvars
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    terms = [dict() for _ in range(ncomp)]
    for (comp, e), c in kp:
        m = tuple(e[inv[i]] for i in range(n))
        terms[comp][m] = c
    return [Polynomial(ring, t) for t in terms]


# -- ideal and basis types ----------------------------------------------


class IdealBasis:
    """A finite generating set of an ideal; zero generators are dropped."""

    __slots__ = ("ring", "gens", "_gb_cache", "_numerator")

    def __init__(self, ring: PolyRing, gens):
        clean = []
        for g in gens:
            if not isinstance(g, Polynomial):
                g = ring.const(g)
            if g.ring != ring:
                raise RingMismatchError("generator outside the ideal's ring")
            if not g.is_zero():
                clean.append(g)
        self.ring = ring
        self.gens = tuple(clean)
        self._gb_cache: dict = {}
        self._numerator = None

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def require_homogeneous(self, what: str):
        if not self.is_homogeneous():
            raise HomogeneityError(f"{what} requires a homogeneous ideal")

    def __repr__(self):
        inside = ", ".join(str(g) for g in self.gens[:4])
        if len(self.gens) > 4:
            inside += ", ..."
        return f"<ideal ({inside})>"


class GroebnerBasis:
    """Reduced Groebner basis: monic, auto-reduced, canonically sorted."""

    __slots__ = ("ring", "order", "polys", "leads")

    def __init__(self, ring: PolyRing, order: MonomialOrder, polys):
        self.ring = ring
        self.order = order
        self.polys = tuple(polys)
        self.leads = tuple(p.lead_monomial(order) for p in self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.ring == other.ring
            and self.order == other.order
            and self.polys == other.polys
        )

    def __repr__(self):
        return f"<GB of {len(self.polys)} elements, {self.order!r}>"


def groebner_basis(I: IdealBasis, order: MonomialOrder | None = None) -> GroebnerBasis:
    """Reduced Groebner basis; uniquely determined by (ideal, order)."""
    ring = I.ring
    order = order or ring.order
    cached = I._gb_cache.get(order)
    if cached is not None:
        return cached
    perm, _ = _perm_and_inverse(order, ring.nvars)
    kgens = [_vec_to_kpoly([g], perm) for g in I.gens]
    kgb = engine.reduced_groebner(kgens, ring.nvars, ring.field, order.kind, ncomp=1)
    polys = [_kpoly_to_vec_fast(kp, ring, 1, perm)[0] for kp in kgb]
    polys.sort(key=lambda p: order.key(p.lead_monomial(order)))
    gb = GroebnerBasis(ring, order, polys)
    I._gb_cache[order] = gb
    return gb


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Remainder of f modulo G; zero iff f lies in the ideal."""
    ring = G.ring
    if f.ring != ring:
        raise RingMismatchError("polynomial outside the basis ring")
    if f.is_zero() or not G.polys:
        return f
    perm, _ = _perm_and_inverse(G.order, ring.nvars)
    kf = _vec_to_kpoly([f], perm)
    kgb = [_vec_to_kpoly([g], perm) for g in G.polys]
    r = engine.normal_form(kf, kgb, ring.nvars, ring.field, G.order.kind, ncomp=1)
    return _kpoly_to_vec_fast(r, ring, 1, perm)[0]


def contains(I: IdealBasis, f: Polynomial) -> bool:
    """Ideal membership via normal form (order independent)."""
    return normal_form(f, groebner_basis(I)).is_zero()


def ideal_equal(I: IdealBasis, J: IdealBasis, order: MonomialOrder | None = None) -> bool:
    """Equality of ideals via uniqueness of the reduced basis."""
    return groebner_basis(I, order).polys == groebner_basis(J, order).polys


# -- module syzygies ------------------------------------------------------


def syzygy_generators(ring: PolyRing, columns, ncomp_target: int, order=None):
    """Generators of the syzygy module of the given column vectors.

    columns: list of length-ncomp_target lists of polynomials.  Returns
    vectors s in R^m (m = number of columns) with sum_i s_i * col_i = 0;
    the returned set is a Groebner basis of the full syzygy module.

    Computed by the elimination trick: run Buchberger on col_i + e_i in
    R^(t+m) under position-over-term (the first t components dominate)
    and keep the basis elements supported in the trailing block.
    """
    order = order or ring.order
    t = ncomp_target
    m = len(columns)
    perm, _ = _perm_and_inverse(order, ring.nvars)
    kgens = []
    for i, col in enumerate(columns):
        if len(col) != t:
            raise FormdepthError("column has wrong length")
        kp = _vec_to_kpoly(col, perm)
        unit = (0,) * ring.nvars
        e = unit if perm is None else unit
        kp.append(((t + i, e), ring.field.one))
        kgens.append(kp)
    kgb = engine.reduced_groebner(kgens, ring.nvars, ring.field, order.kind, ncomp=t + m)
    syz = []
    for kp in kgb:
        if all(comp >= t for (comp, _), _ in kp):
            shifted = [((comp - t, e), c) for (comp, e), c in kp]
            syz.append(_kpoly_to_vec_fast(shifted, ring, m, perm))
    return syz


def module_reduced_basis(ring: PolyRing, vectors, ncomp: int, order=None):
    """Reduced Groebner basis of the submodule generated by the vectors."""
    order = order or ring.order
    perm, _ = _perm_and_inverse(order, ring.nvars)
    kgens = [_vec_to_kpoly(v, perm) for v in vectors]
    kgb = engine.reduced_groebner(kgens, ring.nvars, ring.field, order.kind, ncomp=ncomp)
    return [_kpoly_to_vec_fast(kp, ring, ncomp, perm) for kp in kgb]


def module_contains(ring: PolyRing, basis_vectors, vector, ncomp: int, order=None) -> bool:
    """Membership of a vector in the submodule spanned by a reduced basis."""
    order = order or ring.order
    perm, _ = _perm_and_inverse(order, ring.nvars)
    kf = _vec_to_kpoly(vector, perm)
    kgb = [_vec_to_kpoly(v, perm) for v in basis_vectors]
    r = engine.normal_form(kf, kgb, ring.nvars, ring.field, order.kind, ncomp=ncomp)
    return not r


# -- colon, intersection, saturation --------------------------------------


def ideal_quotient(I: IdealBasis, f: Polynomial) -> IdealBasis:
    """(I : f) = {g : g*f in I}, via syzygies of [f, gens(I)]."""
    if f.is_zero():
        raise FormdepthError("colon by the zero polynomial")
    ring = I.ring
    cols = [[f]] + [[g] for g in I.gens]
    syz = syzygy_generators(ring, cols, 1)
    gens = [v[0] for v in syz if not v[0].is_zero()]
    return IdealBasis(ring, gens)


def ideal_intersection(I: IdealBasis, J: IdealBasis) -> IdealBasis:
    """I cap J via syzygies of the row [gens(I) | -gens(J)]."""
    ring = I.ring
    cols = [[g] for g in I.gens] + [[-g] for g in J.gens]
    syz = syzygy_generators(ring, cols, 1)
    r = len(I.gens)
    gens = []
    for v in syz:
        h = ring.zero()
        for a, g in zip(v[:r], I.gens):
            if not a.is_zero():
                h = h + a * g
        if not h.is_zero():
            gens.append(h)
    return IdealBasis(ring, gens)


def saturate_irrelevant(I: IdealBasis, max_steps: int = 200) -> IdealBasis:
    """I : m^infinity as the intersection of stabilised colon chains."""
    I.require_homogeneous("saturation")
    ring = I.ring
    chains = []
    for i in range(ring.nvars):
        x = ring.variable(i)
        K = I
        for _ in range(max_steps):
            K2 = ideal_quotient(K, x)
            if ideal_equal(K, K2):
                break
            K = K2
        else:
            raise BoundExceededError("colon chain did not stabilise")
        chains.append(K)
    result = chains[0]
    for K in chains[1:]:
        result = ideal_intersection(result, K)
    return result


def is_saturated(I: IdealBasis) -> bool:
    return ideal_equal(I, saturate_irrelevant(I))


# -- Hilbert series machinery ---------------------------------------------


def _poly_mul_int(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _minimalize_monomials(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _monomial_numerator(gens: tuple, n: int) -> tuple:
    """Numerator of HS(R/<gens>) over (1-t)^n for a monomial ideal."""
    if not gens:
        return (1,)
    if any(sum(g) == 0 for g in gens):
        return (0,)
    if all(sum(1 for e in g if e) == 1 for g in gens):
        num = [1]
        for g in gens:
            d = sum(g)
            factor = [0] * (d + 1)
            factor[0] = 1
            factor[d] = -1
            num = _poly_mul_int(num, factor)
        return tuple(num)
    pivot_gen = next(g for g in gens if sum(1 for e in g if e) >= 2)
    i = max(range(n), key=lambda k: (pivot_gen[k] > 0, pivot_gen[k]))
    xi = tuple(1 if k == i else 0 for k in range(n))
    plus = _minimalize_monomials([xi] + [g for g in gens if g[i] == 0])
    colon = _minimalize_monomials(
        [g[:i] + (g[i] - 1,) + g[i + 1 :] if g[i] > 0 else g for g in gens]
    )
    a = list(_monomial_numerator(plus, n))
    b = list(_monomial_numerator(colon, n))
    out = list(a) + [0] * max(0, len(b) + 1 - len(a))
    for j, v in enumerate(b):
        out[j + 1] += v
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def hilbert_numerator(I: IdealBasis) -> tuple:
    """Coefficients of N(t) with HS(R/I) = N(t)/(1-t)^nvars."""
    I.require_homogeneous("Hilbert series")
    if I._numerator is None:
        gb = groebner_basis(I)
        leads = _minimalize_monomials(gb.leads)
        I._numerator = _monomial_numerator(leads, I.ring.nvars)
    return I._numerator


def hilbert_function(I: IdealBasis, t: int) -> int:
    """dim_K (R/I)_t, read off the lead-term ideal."""
    if t < 0:
        return 0
    n = I.ring.nvars
    num = hilbert_numerator(I)
    total = 0
    for k, c in enumerate(num):
        if c and t - k >= 0:
            total += c * comb(t - k + n - 1, n - 1)
    return total


def krull_dimension(I: IdealBasis) -> tuple[int, int]:
    """(dim R/I, codim), computed combinatorially from the lead terms.

    dim is the size of a maximal set S of variables such that no lead
    monomial is supported inside S.  The unit ideal gets dim -1.
    """
    I.require_homogeneous("dimension")
    n = I.ring.nvars
    gb = groebner_basis(I)
    leads = _minimalize_monomials(gb.leads)
    if not leads:
        return n, 0
    if any(sum(m) == 0 for m in leads):
        return -1, n + 1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in leads]
    best = 0
    for size in range(n, 0, -1):
        for S in combinations(range(n), size):
            sset = frozenset(S)
            if all(not sup <= sset for sup in supports):
                best = size
                break
        if best:
            break
    return best, n - best


def multiplicity_degree(I: IdealBasis) -> int:
    """Degree of R/I for dim <= 1: the stable Hilbert-function value in
    dimension 1, the total K-dimension in dimension 0.  The plateau is
    detected by three equal consecutive values past the bound
    max generator degree + nvars + 2."""
    dim, _ = krull_dimension(I)
    if dim not in (0, 1):
        raise FormdepthError(f"multiplicity implemented for dim 0 or 1, got {dim}")
    n = I.ring.nvars
    maxdeg = max((g.total_degree() for g in I.gens), default=0)
    start = maxdeg + n + 2
    if dim == 0:
        return sum(hilbert_function(I, t) for t in range(start + 3))
    for t in range(start, start + 60):
        v = hilbert_function(I, t)
        if hilbert_function(I, t + 1) == v and hilbert_function(I, t + 2) == v:
            return v
    raise BoundExceededError("Hilbert function did not reach a plateau")


def is_regular_sequence(forms) -> bool:
    """True iff the Hilbert series of R/<forms> matches the Koszul
    prediction prod (1-t^{d_i}) / (1-t)^n (a complete intersection)."""
    forms = list(getattr(forms, "forms", forms))
    if not forms:
        return True
    ring = forms[0].ring
    for f in forms:
        if f.is_zero():
            raise FormdepthError("zero form in a regular-sequence test")
        if not f.is_homogeneous():
            raise HomogeneityError("regular-sequence test requires forms")
    I = IdealBasis(ring, forms)
    koszul = [1]
    for f in forms:
        d = f.degree()
        factor = [0] * (d + 1)
        factor[0] = 1
        factor[d] = -1
        koszul = _poly_mul_int(koszul, factor)
    return list(hilbert_numerator(I)) == koszul


def ideal_power_product(I: IdealBasis, J: IdealBasis, exponents) -> IdealBasis:
    """Generators of I^a * J^b by all products of generators."""
    a, b = exponents
    if a < 0 or b < 0:
        raise FormdepthError("negative exponent in ideal power")
    ring = I.ring
    gens = [ring.one()]
    for k, basis in ((a, I.gens), (b, J.gens)):
        if k == 0:
            continue
        if not basis:
            return IdealBasis(ring, [])
        new = []
        for combo in combinations_with_replacement(basis, k):
            p = ring.one()
            for f in combo:
                p = p * f
            new.append(p)
        gens = [g * h for g in gens for h in new]
    return IdealBasis(ring, gens)


# -- gcd via syzygies -------------------------------------------------------


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """gcd of two polynomials, monic-normalised.

    The syzygy module of [f, g] is free of rank one, generated by
    (-g/h, f/h) with h = gcd(f, g); the reduced module basis recovers it.
    """
    if f.is_zero():
        return g.monic() if not g.is_zero() else g
    if g.is_zero():
        return f.monic()
    ring = f.ring
    if g.ring != ring:
        raise RingMismatchError("gcd of polynomials in different rings")
    syz = syzygy_generators(ring, [[f], [g]], 1)
    if len(syz) != 1:
        raise FormdepthError("unexpected syzygy rank for two polynomials")
    a = syz[0][0]
    q = exact_divide(g, a)
    return q.monic()


def are_coprime(f: Polynomial, g: Polynomial) -> bool:
    return poly_gcd(f, g).is_constant()
