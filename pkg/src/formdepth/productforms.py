"""Products of higher-degree forms: Jacobian machinery, the RTY
decision, closed-form Betti predictions, height checks, witness
constructions, and the sufficient-criteria evaluators.

A FormSystem is an ordered list of homogeneous forms of positive
degree; most theorem checks additionally require the forms to be
pairwise coprime so the product is reduced.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import combinations, permutations
from math import comb

from .errors import (
    BoundExceededError,
    CharacteristicGuardError,
    FormdepthError,
    HypothesisError,
)
from .fields import PrimeField
from .gmatrix import GradedMatrix
from .groebner import (
    IdealBasis,
    are_coprime,
    contains,
    groebner_basis,
    ideal_equal,
    krull_dimension,
    normal_form,
    saturate_irrelevant,
)
from .poly import Polynomial, PolyRing
from .resolution import BettiTable, free_resolution, indeg_syzygies


class FormSystem:
    """Ordered homogeneous forms with cached degree and coprimality data."""

    __slots__ = ("ring", "forms", "_coprime")

    def __init__(self, ring: PolyRing, forms):
        self.ring = ring
        clean = []
        for f in forms:
            if f.ring != ring:
                raise FormdepthError("form outside the system ring")
            if f.is_zero() or not f.is_homogeneous() or f.degree() < 1:
                raise FormdepthError(f"not a form of positive degree: {f}")
            clean.append(f)
        if not clean:
            raise FormdepthError("empty form system")
        self.forms = tuple(clean)
        self._coprime = None

    @property
    def m(self) -> int:
        return len(self.forms)

    @property
    def n(self) -> int:
        return self.ring.nvars

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(f.degree() for f in self.forms)

    def sorted_degrees(self) -> tuple[int, ...]:
        return tuple(sorted(self.degrees))

    def pairwise_coprime(self) -> bool:
        if self._coprime is None:
            self._coprime = all(
                are_coprime(a, b) for a, b in combinations(self.forms, 2)
            )
        return self._coprime

    def product(self) -> Polynomial:
        F = self.ring.one()
        for f in self.forms:
            F = F * f
        return F

    def __repr__(self):
        return f"<system of {self.m} forms of degrees {self.degrees}>"


def jacobian_matrix(sys: FormSystem) -> GradedMatrix:
    """m x n matrix of partials, rows twisted by the form degrees so the
    Euler column identity Theta * x^t = (d_i f_i)^t is graded."""
    ring = sys.ring
    entries = [
        [f.derivative(j) for j in range(ring.nvars)] for f in sys.forms
    ]
    return GradedMatrix(
        ring, entries, [-f.degree() for f in sys.forms], [-1] * ring.nvars
    )


def build_fold_matrices(sys: FormSystem):
    """(D, M): the m x (m-1) diagonal fold-product syzygy matrix and the
    augmented block matrix M = [Theta | D]."""
    if sys.m < 2:
        raise FormdepthError("fold matrices need at least two forms")
    ring = sys.ring
    zero = ring.zero()
    m = sys.m
    entries = []
    for i in range(m - 1):
        row = [zero] * (m - 1)
        row[i] = -sys.forms[i]
        entries.append(row)
    entries.append([sys.forms[m - 1]] * (m - 1))
    row_tw = [-f.degree() for f in sys.forms]
    D = GradedMatrix(ring, entries, row_tw, [0] * (m - 1))
    theta = jacobian_matrix(sys)
    M_entries = [list(tr) + list(dr) for tr, dr in zip(theta.entries, D.entries)]
    M = GradedMatrix(ring, M_entries, row_tw, [-1] * ring.nvars + [0] * (m - 1))
    return D, M


def gradient_ideal(sys: FormSystem):
    """(F, J_F) with J_F the ideal of partials of the product F.

    Cross-checked against the m-minors of [Theta | D] that fix the last
    m-1 columns, which reproduce the partials exactly."""
    ring = sys.ring
    F = sys.product()
    partials = [F.derivative(i) for i in range(ring.nvars)]
    if sys.m >= 2:
        D, M = build_fold_matrices(sys)
        for i in range(ring.nvars):
            cols = [[M.entries[r][i] for r in range(sys.m)]] + [
                [D.entries[r][j] for r in range(sys.m)] for j in range(sys.m - 1)
            ]
            square = [[cols[c][r] for c in range(sys.m)] for r in range(sys.m)]
            det = GradedMatrix(
                ring,
                square,
                M.row_twists,
                [-1] + list(D.col_twists),
            ).determinant()
            if det != partials[i]:
                raise FormdepthError("minor expansion of the gradient failed")
    return F, IdealBasis(ring, partials)


def fold_products(sys: FormSystem, k: int) -> IdealBasis:
    """Ideal of all products of k distinct forms of the system."""
    if not (1 <= k <= sys.m):
        raise FormdepthError(f"fold index out of range: {k}")
    gens = []
    for combo in combinations(sys.forms, k):
        p = sys.ring.one()
        for f in combo:
            p = p * f
        gens.append(p)
    return IdealBasis(sys.ring, gens)


def is_smooth_form(f: Polynomial) -> bool:
    """Smoothness of V(f): the partial derivatives cut out at most the
    origin (codim of the gradient ideal >= n).  Guard: char must not
    divide deg f."""
    if f.is_zero() or not f.is_homogeneous():
        raise FormdepthError("smoothness test requires a nonzero form")
    d = f.degree()
    char = f.ring.characteristic
    if char and d % char == 0:
        raise CharacteristicGuardError(f"char {char} divides deg f = {d}")
    J = IdealBasis(f.ring, [f.derivative(i) for i in range(f.ring.nvars)])
    _, codim = krull_dimension(J)
    return codim >= f.ring.nvars


@dataclass
class HeightsReport:
    codim_fold_syzygy: int | None
    codim_augmented: int | None
    codim_theta_plus_forms: int
    expected: tuple
    matches: dict


def heights_check(sys: FormSystem) -> HeightsReport:
    """Codimensions of I_{m-1}(D), I_m([Theta|D]) and <I_m(Theta), f>,
    compared with the predicted values (2, n, n).  Mismatches are
    reported, not raised: the predictions assume general forms."""
    ring = sys.ring
    n, m = sys.n, sys.m
    theta = jacobian_matrix(sys)
    theta_minors = [p for p in theta.minors(m) if not p.is_zero()] if m <= n else []
    theta_ideal = IdealBasis(ring, theta_minors + list(sys.forms))
    _, codim_theta = krull_dimension(theta_ideal)
    codim_D = codim_M = None
    if m >= 2:
        D, M = build_fold_matrices(sys)
        dmin = [p for p in D.minors(m - 1) if not p.is_zero()]
        _, codim_D = krull_dimension(IdealBasis(ring, dmin))
        mmin = [p for p in M.minors(m) if not p.is_zero()]
        _, codim_M = krull_dimension(IdealBasis(ring, mmin))
    expected = (2, n, n)
    matches = {
        "fold_syzygy": codim_D == 2 if codim_D is not None else None,
        "augmented": codim_M == n if codim_M is not None else None,
        "theta_plus_forms": codim_theta == n,
    }
    return HeightsReport(codim_D, codim_M, codim_theta, expected, matches)


@dataclass
class RtyReport:
    product: Polynomial
    generator_degree: int
    pd: int
    depth: int
    rty: bool
    betti: BettiTable
    saturation_strict: bool
    witness: Polynomial | None


def rty_check(sys: FormSystem) -> RtyReport:
    """Decide depth R/J_F = 0 for the product of the system.

    Computes the minimal resolution (pd, Betti), depth by
    Auslander-Buchsbaum, and the saturation comparison; the three
    characterisations must agree or an engine error is raised.
    """
    if sys.m >= 2 and not sys.pairwise_coprime():
        raise HypothesisError("forms are not pairwise coprime")
    F, J = gradient_ideal(sys)
    res = free_resolution(J)
    betti = res.betti_table()
    pd = res.length
    n = sys.n
    depth = n - pd
    sat = saturate_irrelevant(J)
    strict = not ideal_equal(J, sat)
    rty = depth == 0
    if (rty != (pd == n)) or (rty != strict):
        raise FormdepthError("RTY characterisations disagree; engine bug")
    witness = None
    if rty:
        gb_sat = groebner_basis(sat)
        gb_J = groebner_basis(J)
        candidates = []
        for i in range(sys.m):
            G = sys.ring.one()
            for j, f in enumerate(sys.forms):
                if j != i:
                    G = G * f
            candidates.append(G * G)
            candidates.append(G)
        for cand in candidates:
            if normal_form(cand, gb_sat).is_zero() and not normal_form(
                cand, gb_J
            ).is_zero():
                witness = cand
                break
    return RtyReport(
        product=F,
        generator_degree=F.degree() - 1,
        pd=pd,
        depth=depth,
        rty=rty,
        betti=betti,
        saturation_strict=strict,
        witness=witness,
    )


def general_forms_ranks(n: int, m: int) -> dict[int, int]:
    """Predicted ranks b_i = C(m+n-1, m+i-1) * C(m+i-3, m-1), 2 <= i <= n."""
    if n < 2 or m < 1:
        raise FormdepthError("need n >= 2 and m >= 1")
    return {i: comb(m + n - 1, m + i - 1) * comb(m + i - 3, m - 1) for i in range(2, n + 1)}


def general_forms_betti(n: int, m: int, degrees) -> BettiTable:
    """Graded Betti prediction for the product of general forms, n = 3:
    first syzygies at 2D (3 Koszul) and 2D-1 (m-1 extra), last module
    summands R(-(2D + d_j - 1)) with D = deg F - 1."""
    degrees = tuple(int(d) for d in degrees)
    if len(degrees) != m:
        raise FormdepthError("degrees length must equal m")
    if any(d < 2 for d in degrees):
        raise FormdepthError("general-forms prediction needs degrees >= 2")
    if n != 3:
        raise FormdepthError("graded prediction implemented for n = 3")
    D = sum(degrees) - 1
    entries = {(0, 0): 1, (1, D): 3, (2, 2 * D): 3}
    if m >= 2:
        entries[(2, 2 * D - 1)] = m - 1
    for d in degrees:
        key = (3, 2 * D + d - 1)
        entries[key] = entries.get(key, 0) + 1
    table = BettiTable(entries)
    ranks = general_forms_ranks(n, m)
    if table.total_rank(2) != ranks[2] or table.total_rank(3) != ranks[3]:
        raise FormdepthError("graded prediction disagrees with the rank formula")
    return table


@dataclass
class CriteriaReport:
    verdicts: dict = dc_field(default_factory=dict)
    evidence: dict = dc_field(default_factory=dict)

    @property
    def any_holds(self) -> bool:
        return any(v == "holds" for v in self.verdicts.values())


def _smooth_guarded(f: Polynomial) -> tuple[bool, str | None]:
    try:
        return is_smooth_form(f), None
    except CharacteristicGuardError as exc:
        return False, str(exc)


def _indeg_offset(g: Polynomial) -> int | None:
    J = IdealBasis(g.ring, [g.derivative(i) for i in range(g.ring.nvars)])
    try:
        return indeg_syzygies(J)
    except FormdepthError:
        return None


def syzygy_degree_floor(degrees) -> int:
    """floor(sum of degrees / count) - 1, the syzygy initial-degree lower
    bound for products of smooth coprime forms."""
    degrees = list(degrees)
    return sum(degrees) // len(degrees) - 1


def criteria_evaluate(sys: FormSystem) -> CriteriaReport:
    """Evaluate every machine-checkable sufficient RTY condition.

    A verdict of ``holds`` means all hypotheses of the corresponding
    statement were verified on the system; sufficiency is one-way, so
    ``fails`` verdicts are inconclusive about the RTY property itself.
    """
    report = CriteriaReport()
    char = sys.ring.characteristic
    m = sys.m
    coprime = sys.pairwise_coprime() if m >= 2 else True

    # -- two forms, one smooth, condition (i): equal degrees and no linear
    # syzygy on the other gradient
    if m == 2:
        f1, f2 = sys.forms
        best = None
        attempts = []
        for f, g in ((f1, f2), (f2, f1)):
            d = f.degree()
            guard_ok = not (char and d % char == 0)
            smooth, guard_msg = _smooth_guarded(f) if guard_ok else (False, "guard")
            equal = f.degree() == g.degree() and d >= 2
            indeg = _indeg_offset(g) if equal else None
            ok = bool(coprime and guard_ok and smooth and equal and indeg is not None and indeg >= 2)
            attempts.append(
                {
                    "smooth_factor_degree": d,
                    "char_guard_ok": guard_ok,
                    "smooth": smooth,
                    "equal_degrees_ge_2": equal,
                    "indeg_other": indeg,
                    "coprime": coprime,
                    "satisfied": ok,
                }
            )
            if ok:
                best = ok
        report.verdicts["two_forms_one_smooth_i"] = "holds" if best else "fails"
        report.evidence["two_forms_one_smooth_i"] = {"attempts": attempts}
    else:
        report.verdicts["two_forms_one_smooth_i"] = "not-applicable"

    # -- two forms, one smooth, condition (ii): g outside J_f
    if m == 2:
        f1, f2 = sys.forms
        best = False
        attempts = []
        for f, g in ((f1, f2), (f2, f1)):
            d = f.degree()
            guard_ok = not (char and d % char == 0)
            smooth, _ = _smooth_guarded(f) if guard_ok else (False, "guard")
            outside = None
            if smooth:
                Jf = IdealBasis(sys.ring, [f.derivative(i) for i in range(sys.n)])
                outside = not contains(Jf, g)
            ok = bool(coprime and guard_ok and smooth and outside)
            attempts.append(
                {
                    "smooth_factor_degree": d,
                    "char_guard_ok": guard_ok,
                    "smooth": smooth,
                    "g_outside_gradient": outside,
                    "coprime": coprime,
                    "satisfied": ok,
                }
            )
            best = best or ok
        report.verdicts["two_forms_one_smooth_ii"] = "holds" if best else "fails"
        report.evidence["two_forms_one_smooth_ii"] = {"attempts": attempts}
    else:
        report.verdicts["two_forms_one_smooth_ii"] = "not-applicable"

    # -- two forms, transversality surrogate: <I_2(Theta), f> is
    # m-primary with f the smooth smaller-degree factor
    if m == 2:
        ordered = sorted(sys.forms, key=lambda h: h.degree())
        d, e = ordered[0].degree(), ordered[1].degree()
        guard_ok = not (char and (d % char == 0 or e % char == 0 or (d + e) % char == 0))
        attempts = []
        best = False
        choices = [(ordered[0], ordered[1])]
        if d == e:
            choices.append((ordered[1], ordered[0]))
        for f, g in choices:
            smooth, _ = _smooth_guarded(f) if guard_ok else (False, "guard")
            primary = None
            if smooth and d >= 2 and coprime and guard_ok:
                theta = jacobian_matrix(FormSystem(sys.ring, [f, g]))
                minors = [p for p in theta.minors(2) if not p.is_zero()]
                JJ = IdealBasis(sys.ring, minors + [f])
                _, codim = krull_dimension(JJ)
                primary = codim >= sys.n
            ok = bool(primary)
            attempts.append(
                {
                    "smooth_factor_degree": f.degree(),
                    "char_guard_ok": guard_ok,
                    "smooth": smooth,
                    "jacobian_ideal_primary": primary,
                    "coprime": coprime,
                    "satisfied": ok,
                }
            )
            best = best or ok
        report.verdicts["two_forms_transversal"] = "holds" if best else "fails"
        report.evidence["two_forms_transversal"] = {"attempts": attempts}
    else:
        report.verdicts["two_forms_transversal"] = "not-applicable"

    # -- three forms with degree partition d1 + d2 = d3 >= 5
    if m == 3:
        best = False
        attempts = []
        for perm in permutations(range(3)):
            a, b, c = (sys.forms[i] for i in perm)
            da, db, dc = a.degree(), b.degree(), c.degree()
            if not (db >= da >= 2 and da + db == dc and dc >= 5):
                continue
            sb, _ = _smooth_guarded(b)
            sc, _ = _smooth_guarded(c)
            ok = bool(coprime and sb and sc)
            attempts.append(
                {
                    "ordering": perm,
                    "degrees": (da, db, dc),
                    "middle_smooth": sb,
                    "large_smooth": sc,
                    "coprime": coprime,
                    "satisfied": ok,
                }
            )
            if ok:
                best = True
                break
        report.verdicts["three_forms"] = "holds" if best else "fails"
        report.evidence["three_forms"] = {"attempts": attempts}
    else:
        report.verdicts["three_forms"] = "not-applicable"

    # -- unbalanced degrees (characteristic zero only)
    if m >= 2:
        degs = sorted(sys.degrees)
        floor_values = {}
        witnesses = []
        for j in range(1, m):  # positions 2..m in sorted order
            rest = degs[:j] + degs[j + 1 :]
            dval = syzygy_degree_floor(rest)
            floor_values[j + 1] = dval
            if dval >= sum(rest) - degs[j] + 3:
                witnesses.append(j + 1)
        applicable = char == 0 and all(d >= 2 for d in degs)
        smooth_rest = None
        if applicable and coprime and witnesses:
            order = sorted(range(m), key=lambda i: sys.forms[i].degree())
            smooth_rest = all(
                _smooth_guarded(sys.forms[i])[0] for i in order[1:]
            )
        ok = bool(applicable and coprime and witnesses and smooth_rest)
        report.verdicts["unbalanced_degrees"] = (
            "holds" if ok else ("fails" if applicable else "not-applicable")
        )
        report.evidence["unbalanced_degrees"] = {
            "floor_values": floor_values,
            "witnessing_indices": witnesses,
            "char_zero": char == 0,
            "coprime": coprime,
            "upper_forms_smooth": smooth_rest,
        }
    else:
        report.verdicts["unbalanced_degrees"] = "not-applicable"

    # -- Fermat forms
    fermat = all(_is_fermat_shape(f) for f in sys.forms)
    if fermat and m <= sys.n + 1:
        verdict, ev = _fermat_criterion(sys, coprime)
        report.verdicts["fermat"] = verdict
        report.evidence["fermat"] = ev
    else:
        report.verdicts["fermat"] = "not-applicable"

    return report


def _is_fermat_shape(f: Polynomial) -> bool:
    return all(sum(1 for e in m if e) <= 1 for m in f.terms)


def _fermat_criterion(sys: FormSystem, coprime: bool):
    char = sys.ring.characteristic
    n = sys.n
    order = sorted(range(sys.m), key=lambda i: sys.forms[i].degree())
    degs = [sys.forms[i].degree() for i in order]
    dm = degs[-1]
    guard_ok = not (char and dm % char == 0)
    fm = sys.forms[order[-1]]
    full_rank = all(
        any(m[i] for m in fm.terms) for i in range(n)
    )
    gap_ok = sys.m == 1 or dm >= degs[-2] + 2
    monomial_ok = None
    if sys.m >= 2:
        g = sys.ring.one()
        for i in order[:-1]:
            g = g * sys.forms[i]
        monomial_ok = False
        lower_degs = degs[:-1]
        for idxs in permutations(range(n), sys.m - 1):
            target = [0] * n
            for pos, var in enumerate(idxs):
                target[var] += lower_degs[pos]
            if g.terms.get(tuple(target)) not in (None, sys.ring.field.zero):
                monomial_ok = True
                break
    ok = bool(
        guard_ok and full_rank and gap_ok and coprime and (sys.m == 1 or monomial_ok)
    )
    return "holds" if ok else "fails", {
        "char_guard_ok": guard_ok,
        "max_form_full_rank": full_rank,
        "degree_gap_ok": gap_ok,
        "pure_monomial_present": monomial_ok,
        "coprime": coprime,
    }


def witness_forms(n: int, degrees, field=None) -> FormSystem:
    """Explicit witness system with <I_m(Theta), f> of full height n.

    Full-rank Fermat forms with Vandermonde coefficient rows,
    f_j = sum_i j^(i-1) x_i^(d_j); the base instance j = 1 is the
    classical x_1^d + ... + x_n^d.  The height condition is verified on
    the constructed system and an error is raised if it fails.
    """
    from .fields import QQ

    field = field if field is not None else QQ
    degrees = sorted(int(d) for d in degrees)
    m = len(degrees)
    if n < 2 or m < 1 or any(d < 2 for d in degrees):
        raise FormdepthError("witness construction needs n >= 2, degrees >= 2")
    if m > n + 1:
        raise FormdepthError(f"unsupported (n, m) = ({n}, {m})")
    names = tuple(f"x{i+1}" for i in range(n))
    ring = PolyRing(field, names)
    forms = []
    for j, d in enumerate(degrees, start=1):
        f = ring.zero()
        for i in range(n):
            f = f + (ring.variable(i) ** d).scale(ring.field(j**i))
        forms.append(f)
    sys = FormSystem(ring, forms)
    hr = heights_check(sys)
    if hr.codim_theta_plus_forms != n:
        raise FormdepthError("witness verification failed: wrong height")
    return sys


def random_forms(n: int, degrees, p: int, seed, max_tries: int = 50) -> FormSystem:
    """Seeded dense random forms over GF(p), resampled until pairwise
    coprime."""
    degrees = tuple(int(d) for d in degrees)
    if p <= max(degrees):
        raise FormdepthError("p must exceed the largest degree")
    field = PrimeField(p)
    names = tuple("xyzwuvst"[:n]) if n <= 8 else tuple(f"x{i}" for i in range(n))
    ring = PolyRing(field, names)
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    from .resolution import monomials_of_degree

    for _ in range(max_tries):
        forms = []
        for d in degrees:
            terms = {}
            for mono in monomials_of_degree(n, d):
                c = rng.randrange(p)
                if c:
                    terms[mono] = c
            if not terms:
                break
            forms.append(Polynomial(ring, terms))
        if len(forms) != len(degrees):
            continue
        sys = FormSystem(ring, forms)
        if sys.m < 2 or sys.pairwise_coprime():
            return sys
    raise BoundExceededError("failed to sample pairwise-coprime forms")
