"""Sparse exact multivariate polynomials over QQ or GF(p).

A polynomial is a dict mapping dense exponent tuples to nonzero field
elements.  Values are immutable after construction; every operation
returns a fresh polynomial.  The zero polynomial has no degree and
counts as homogeneous of every degree.
"""

from __future__ import annotations

from .errors import FormdepthError, HomogeneityError, RingMismatchError
from .fields import QQ, PrimeField, RationalField
from .orders import GREVLEX, MonomialOrder


class PolyRing:
    """Ring context: coefficient field, variable names, default order."""

    __slots__ = ("field", "names", "nvars", "order", "_vars")

    def __init__(self, field, names, order: MonomialOrder | None = None):
        self.field = field
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise FormdepthError("variable names must be distinct")
        self.nvars = len(self.names)
        self.order = order if order is not None else MonomialOrder(GREVLEX)
        self._vars = None

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: self.field.one})

    def const(self, value) -> "Polynomial":
        c = self.field(value)
        if c == self.field.zero:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def variable(self, i: int) -> "Polynomial":
        exps = [0] * self.nvars
        exps[i] = 1
        return Polynomial(self, {tuple(exps): self.field.one})

    def variables(self) -> tuple["Polynomial", ...]:
        if self._vars is None:
            self._vars = tuple(self.variable(i) for i in range(self.nvars))
        return self._vars

    def monomial(self, exps, coeff=1) -> "Polynomial":
        c = self.field(coeff)
        if c == self.field.zero:
            return self.zero()
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise FormdepthError("bad exponent vector")
        return Polynomial(self, {exps: c})

    def from_terms(self, terms: dict) -> "Polynomial":
        zero = self.field.zero
        return Polynomial(self, {m: c for m, c in terms.items() if c != zero})

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.field == self.field
            and other.names == self.names
        )

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"{self.field!r}[{', '.join(self.names)}]"


def _check_ring(f: "Polynomial", g: "Polynomial"):
    if f.ring != g.ring:
        raise RingMismatchError(f"{f.ring!r} vs {g.ring!r}")


class Polynomial:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0,) * self.ring.nvars}

    def constant_coefficient(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def total_degree(self) -> int:
        """Max total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def degree(self) -> int:
        """Degree of a homogeneous polynomial (error otherwise)."""
        if not self.is_homogeneous():
            raise HomogeneityError(f"not homogeneous: {self}")
        return self.total_degree()

    def homogeneous_of_degree(self, d: int) -> bool:
        """Zero counts as homogeneous of every degree."""
        return all(sum(m) == d for m in self.terms)

    def lead_monomial(self, order: MonomialOrder | None = None) -> tuple[int, ...]:
        if not self.terms:
            raise FormdepthError("zero polynomial has no lead monomial")
        order = order or self.ring.order
        return max(self.terms, key=order.key)

    def lead_coefficient(self, order: MonomialOrder | None = None):
        return self.terms[self.lead_monomial(order)]

    def sorted_terms(self, order: MonomialOrder | None = None):
        order = order or self.ring.order
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.const(other)
        _check_ring(self, other)
        field = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = field.add(out.get(m, field.zero), c)
            if s == field.zero:
                out.pop(m, None)
            else:
                out[m] = s
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.field.neg
        return Polynomial(self.ring, {m: neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return self.ring.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        _check_ring(self, other)
        field = self.ring.field
        zero = field.zero
        out: dict = {}
        small, big = (self.terms, other.terms)
        if len(small) > len(big):
            small, big = big, small
        for m1, c1 in small.items():
            for m2, c2 in big.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = field.add(out.get(m, zero), field.mul(c1, c2))
                if s == zero:
                    out.pop(m, None)
                else:
                    out[m] = s
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def scale(self, scalar):
        field = self.ring.field
        c = field(scalar)
        if c == field.zero:
            return self.ring.zero()
        return Polynomial(self.ring, {m: field.mul(v, c) for m, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise FormdepthError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if self.is_zero():
            return self
        lc = self.lead_coefficient(order)
        if lc == self.ring.field.one:
            return self
        inv = self.ring.field.inv(lc)
        return self.scale(inv)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if self.is_constant():
                return self.constant_coefficient() == self.ring.field(other)
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and substitution ------------------------------------

    def derivative(self, i: int) -> "Polynomial":
        """Formal partial derivative in variable i."""
        if not (0 <= i < self.ring.nvars):
            raise FormdepthError(f"variable index out of range: {i}")
        field = self.ring.field
        out: dict = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            coeff = field.mul(c, field(e))
            if coeff == field.zero:
                continue
            dm = m[:i] + (e - 1,) + m[i + 1 :]
            prev = out.get(dm)
            if prev is None:
                out[dm] = coeff
            else:
                s = field.add(prev, coeff)
                if s == field.zero:
                    del out[dm]
                else:
                    out[dm] = s
        return Polynomial(self.ring, out)

    def substitute(self, images: list["Polynomial"]) -> "Polynomial":
        """Evaluate at x_i -> images[i] (images in the same ring)."""
        if len(images) != self.ring.nvars:
            raise FormdepthError("wrong number of substitution images")
        result = self.ring.zero()
        # Horner-free direct expansion; fine at desk scale.
        power_cache: list[dict[int, Polynomial]] = [dict() for _ in images]
        for m, c in self.terms.items():
            term = self.ring.const(c)
            for i, e in enumerate(m):
                if e == 0:
                    continue
                cached = power_cache[i].get(e)
                if cached is None:
                    cached = images[i] ** e
                    power_cache[i][e] = cached
                term = term * cached
            result = result + term
        return result

    # -- printing -----------------------------------------------------

    def _coeff_str(self, c) -> str:
        return str(c)

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        one = self.ring.field.one
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            cs = self._coeff_str(c)
            negative = cs.startswith("-")
            if negative:
                cs = cs[1:]
            if mono and cs == "1":
                body = mono
            elif mono:
                body = f"{cs}*{mono}"
            else:
                body = cs
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"<{self} over {self.ring!r}>"


def exact_divide(f: Polynomial, d: Polynomial) -> Polynomial:
    """Quotient f/d when d divides f exactly; error otherwise."""
    _check_ring(f, d)
    if d.is_zero():
        raise FormdepthError("division by zero polynomial")
    ring = f.ring
    field = ring.field
    order = ring.order
    lead = d.lead_monomial(order)
    lc = d.terms[lead]
    work = dict(f.terms)
    quotient: dict = {}
    while work:
        m = max(work, key=order.key)
        c = work[m]
        if not all(a >= b for a, b in zip(m, lead)):
            raise FormdepthError("exact division failed: remainder nonzero")
        shift = tuple(a - b for a, b in zip(m, lead))
        q = field.div(c, lc)
        quotient[shift] = q
        for dm, dc in d.terms.items():
            key = tuple(a + b for a, b in zip(dm, shift))
            s = field.sub(work.get(key, field.zero), field.mul(dc, q))
            if s == field.zero:
                work.pop(key, None)
            else:
                work[key] = s
    return Polynomial(ring, quotient)


def poly_multiply(f: Polynomial, g: Polynomial) -> Polynomial:
    """Exact product (same ring context required)."""
    return f * g


def primitive_scale(ring: PolyRing, coeffs):
    """A scalar c such that scaling by c makes the coefficients small and
    canonical: over QQ, integer, jointly coprime, first one positive;
    over GF(p) the first coefficient becomes 1."""
    from fractions import Fraction
    from math import gcd, lcm

    coeffs = [c for c in coeffs if c != ring.field.zero]
    if not coeffs:
        return ring.field.one
    if ring.characteristic:
        return ring.field.inv(coeffs[0])
    den = lcm(*(c.denominator for c in coeffs))
    num = gcd(*(abs(c.numerator) for c in coeffs))
    c = Fraction(den, num)
    return -c if coeffs[0] < 0 else c


def partial_derivative(f: Polynomial, i: int) -> Polynomial:
    return f.derivative(i)


def euler_residue(f: Polynomial) -> Polynomial:
    """sum_i x_i * df/dx_i - deg(f) * f  for homogeneous f.

    Vanishes whenever the characteristic permits the Euler identity.
    """
    if f.is_zero():
        return f
    d = f.degree()
    ring = f.ring
    acc = ring.zero()
    for i in range(ring.nvars):
        acc = acc + ring.variable(i) * f.derivative(i)
    return acc - f.scale(ring.field(d))


class LinearChange:
    """Invertible linear change of coordinates, x_i -> sum_j M[i][j] x_j."""

    __slots__ = ("ring", "matrix", "_inverse")

    def __init__(self, ring: PolyRing, matrix):
        self.ring = ring
        n = ring.nvars
        field = ring.field
        rows = [tuple(field(v) for v in row) for row in matrix]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise FormdepthError("linear change must be a square matrix of size nvars")
        self.matrix = tuple(rows)
        self._inverse = _invert_scalar_matrix(field, rows)
        if self._inverse is None:
            raise FormdepthError("singular linear change")

    def inverse(self) -> "LinearChange":
        return LinearChange(self.ring, self._inverse)

    def images(self) -> list[Polynomial]:
        ring = self.ring
        out = []
        for row in self.matrix:
            p = ring.zero()
            for j, c in enumerate(row):
                if c != ring.field.zero:
                    p = p + ring.variable(j).scale(c)
            out.append(p)
        return out

    @classmethod
    def identity(cls, ring: PolyRing) -> "LinearChange":
        n = ring.nvars
        return cls(ring, [[1 if i == j else 0 for j in range(n)] for i in range(n)])


def _invert_scalar_matrix(field, rows):
    """Gauss-Jordan inverse over the field; None if singular."""
    n = len(rows)
    aug = [list(rows[i]) + [field.one if j == i else field.zero for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if aug[r][col] != field.zero:
                pivot = r
                break
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = field.inv(aug[col][col])
        aug[col] = [field.mul(v, inv) for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != field.zero:
                factor = aug[r][col]
                aug[r] = [field.sub(v, field.mul(factor, w)) for v, w in zip(aug[r], aug[col])]
    return [tuple(row[n:]) for row in aug]


def scalar_matrix_det(field, rows):
    """Determinant of a square scalar matrix by fraction-free elimination."""
    n = len(rows)
    m = [list(r) for r in rows]
    det = field.one
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != field.zero:
                pivot = r
                break
        if pivot is None:
            return field.zero
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = field.neg(det)
        det = field.mul(det, m[col][col])
        inv = field.inv(m[col][col])
        for r in range(col + 1, n):
            if m[r][col] != field.zero:
                factor = field.mul(m[r][col], inv)
                m[r] = [field.sub(v, field.mul(factor, w)) for v, w in zip(m[r], m[col])]
    return det


def substitute_linear(f: Polynomial, change: LinearChange) -> Polynomial:
    """f(T x) for an invertible change T; degree is preserved."""
    if f.ring != change.ring:
        raise RingMismatchError("polynomial and change live in different rings")
    return f.substitute(change.images())
