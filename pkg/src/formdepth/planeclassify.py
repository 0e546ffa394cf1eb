"""Plane-curve specialisation (n = 3): smoothness, free divisors, and
the five-way classification of quartics that split into two smooth
conics, with the Bourbaki-degree readout B = 7 - deg(R/J_F)."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FormdepthError, HypothesisError, TableViolationError
from .groebner import (
    IdealBasis,
    krull_dimension,
    multiplicity_degree,
    poly_gcd,
)
from .poly import Polynomial
from .productforms import FormSystem, is_smooth_form, rty_check
from .resolution import (
    BettiTable,
    free_resolution,
    hilbert_burch_verify,
    indeg_syzygies,
)

TRANSVERSAL = "TransversalGeneral"
THREE_SYZYGY = "ThreeSyzygy"
PLUS_ONE = "PlusOne"
NEARLY_FREE = "NearlyFree"
FREE = "Free"

# (e, deg J_F) -> (category, Bourbaki degree, expected Betti table of R/J_F)
CLASSIFICATION_TABLE = {
    (2, 4): (
        TRANSVERSAL,
        3,
        BettiTable({(0, 0): 1, (1, 3): 3, (2, 5): 1, (2, 6): 3, (3, 7): 2}),
    ),
    (2, 5): (
        THREE_SYZYGY,
        2,
        BettiTable({(0, 0): 1, (1, 3): 3, (2, 5): 2, (2, 6): 1, (3, 7): 1}),
    ),
    (2, 6): (
        PLUS_ONE,
        1,
        BettiTable({(0, 0): 1, (1, 3): 3, (2, 5): 3, (3, 6): 1}),
    ),
    (1, 6): (
        NEARLY_FREE,
        1,
        BettiTable({(0, 0): 1, (1, 3): 3, (2, 4): 1, (2, 6): 2, (3, 7): 1}),
    ),
    (1, 7): (
        FREE,
        0,
        BettiTable({(0, 0): 1, (1, 3): 3, (2, 4): 1, (2, 5): 1}),
    ),
}


@dataclass
class CurveClass:
    category: str
    e: int
    deg_JF: int
    bourbaki: int
    betti: BettiTable
    rty: bool


def is_reduced_form(F: Polynomial) -> bool:
    """Squarefree test via iterated gcd of F with its partials."""
    if F.is_zero():
        return False
    g = F
    for i in range(F.ring.nvars):
        g = poly_gcd(g, F.derivative(i))
        if g.is_constant():
            return True
    return g.is_constant()


def is_free_divisor(F: Polynomial) -> bool:
    """True iff the gradient ideal is a codimension-two perfect ideal
    (equivalently, the Jacobian syzygy module is free).

    F must be reduced homogeneous; on a positive answer the
    Hilbert-Burch round trip is asserted as a consistency check."""
    if F.is_zero() or not F.is_homogeneous():
        raise FormdepthError("free-divisor test requires a nonzero form")
    if not is_reduced_form(F):
        raise HypothesisError("form is not reduced")
    ring = F.ring
    J = IdealBasis(ring, [F.derivative(i) for i in range(ring.nvars)])
    _, codim = krull_dimension(J)
    if codim != 2:
        return False
    res = free_resolution(J)
    if res.length != 2:
        return False
    if not hilbert_burch_verify(J):
        raise FormdepthError("free divisor failed the Hilbert-Burch round trip")
    return True


def classify_conic_pair(f: Polynomial, g: Polynomial) -> CurveClass:
    """Classify the quartic f*g (two smooth coprime conics, n = 3) into
    the five homological types keyed by (indeg offset, deg R/J_F); the
    full resolution twists are asserted against the table row."""
    ring = f.ring
    if ring.nvars != 3:
        raise HypothesisError("classification requires three variables")
    char = ring.characteristic
    if char and char <= 7:
        raise HypothesisError("classification requires char 0 or char > 7")
    for h in (f, g):
        if h.is_zero() or not h.homogeneous_of_degree(2):
            raise HypothesisError(f"not a quadric: {h}")
        if not is_smooth_form(h):
            raise HypothesisError(f"quadric is not smooth: {h}")
    if not poly_gcd(f, g).is_constant():
        raise HypothesisError("the conics share a component")
    F = f * g
    J = IdealBasis(ring, [F.derivative(i) for i in range(3)])
    e = indeg_syzygies(J)
    deg_jf = multiplicity_degree(J)
    res = free_resolution(J)
    betti = res.betti_table()
    row = CLASSIFICATION_TABLE.get((e, deg_jf))
    if row is None:
        raise TableViolationError(f"(e, deg) = ({e}, {deg_jf}) matches no table row")
    category, bourbaki, expected = row
    if betti != expected:
        raise TableViolationError(
            f"Betti table {betti.entries} contradicts the {category} row"
        )
    rty = category != FREE
    if (res.length == 3) != rty:
        raise TableViolationError("projective dimension contradicts the category")
    return CurveClass(
        category=category,
        e=e,
        deg_JF=deg_jf,
        bourbaki=bourbaki,
        betti=betti,
        rty=rty,
    )


def family_freeness_scan(v_values, ring) -> dict:
    """Freeness of F = (x^2 + yz)(x^2 + v y^2 + yz) for each scalar v.

    v = 0 collapses the two factors and is rejected."""
    if ring.nvars != 3:
        raise HypothesisError("the quartic family lives in three variables")
    x, y, z = ring.variables()
    out = {}
    for v in v_values:
        c = ring.field(v)
        if c == ring.field.zero:
            raise HypothesisError("v = 0 makes the factors equal")
        f = x**2 + y * z
        g = x**2 + (y**2).scale(c) + y * z
        out[v] = is_free_divisor(f * g)
    return out


def conic_pair_report(f: Polynomial, g: Polynomial) -> dict:
    """CurveClass plus the RTY cross-check, serialisable."""
    cls = classify_conic_pair(f, g)
    rep = rty_check(FormSystem(f.ring, [f, g]))
    if rep.rty != cls.rty:
        raise TableViolationError("RTY verdict contradicts the classification")
    return {
        "category": cls.category,
        "e": cls.e,
        "deg_JF": cls.deg_JF,
        "bourbaki": cls.bourbaki,
        "rty": cls.rty,
        "betti": cls.betti.triples(),
    }
