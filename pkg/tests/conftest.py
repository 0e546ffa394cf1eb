"""Shared fixtures and independent oracles for the test suite."""

import random

import pytest

from formdepth.fields import QQ, PrimeField
from formdepth.groebner import IdealBasis
from formdepth.linalg import SpanBuilder
from formdepth.poly import Polynomial, PolyRing
from formdepth.resolution import monomials_of_degree

P = 32003


@pytest.fixture
def Rq():
    return PolyRing(QQ, ("x", "y", "z"))


@pytest.fixture
def Rp():
    return PolyRing(PrimeField(P), ("x", "y", "z"))


@pytest.fixture
def Rq2():
    return PolyRing(QQ, ("x", "y"))


def random_poly(ring, degree, rng, homogeneous=True, density=0.7):
    """Seeded random polynomial with coefficients in the ring's field."""
    terms = {}
    degs = [degree] if homogeneous else range(degree + 1)
    for d in degs:
        for mono in monomials_of_degree(ring.nvars, d):
            if rng.random() > density:
                continue
            if ring.characteristic:
                c = rng.randrange(ring.characteristic)
            else:
                c = rng.randint(-9, 9)
            if c:
                terms[mono] = ring.field(c)
    return Polynomial(ring, terms)


def hilbert_function_oracle(I: IdealBasis, t: int) -> int:
    """Brute force: dim (R/I)_t = dim R_t - rank of the multiplication
    matrix whose columns are x^a * g_i in degree t (exact linear algebra,
    independent of the lead-term path)."""
    ring = I.ring
    n = ring.nvars
    total = sum(1 for _ in monomials_of_degree(n, t))
    span = SpanBuilder(ring.field)
    for g in I.gens:
        d = g.total_degree()
        if d > t or g.is_zero():
            continue
        for mono in monomials_of_degree(n, t - d):
            vec = {
                tuple(a + b for a, b in zip(m, mono)): c for m, c in g.terms.items()
            }
            span.add(vec)
    return total - span.rank


def membership_oracle(I: IdealBasis, f: Polynomial) -> bool:
    """Degreewise linear algebra membership for homogeneous f and I."""
    ring = I.ring
    t = f.degree()
    span = SpanBuilder(ring.field)
    for g in I.gens:
        d = g.total_degree()
        if d > t:
            continue
        for mono in monomials_of_degree(ring.nvars, t - d):
            vec = {
                tuple(a + b for a, b in zip(m, mono)): c for m, c in g.terms.items()
            }
            span.add(vec)
    return span.contains(dict(f.terms))


def seeded(n: int) -> random.Random:
    return random.Random(n)
