"""Exact coefficient fields: the rationals and prime fields GF(p).

Rationals are `fractions.Fraction` (lowest terms, positive denominator by
construction); prime-field elements are plain ints in the canonical range
[0, p).  Field objects are stateless and hashable, so ring contexts can be
compared cheaply.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FormdepthError

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond the supported 2^31."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class RationalField:
    """The field of rationals; elements are Fraction."""

    characteristic = 0

    def __call__(self, value):
        return Fraction(value)

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return 1 / a

    @staticmethod
    def div(a, b):
        return a / b

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    @staticmethod
    def to_str(a) -> str:
        return str(a)


class PrimeField:
    """GF(p) for a prime p < 2^31; elements are ints in [0, p)."""

    def __init__(self, p: int):
        if not (2 <= p < 2**31):
            raise FormdepthError(f"prime field characteristic out of range: {p}")
        if not is_prime(p):
            raise FormdepthError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def __call__(self, value):
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * pow(b, -1, self.p) % self.p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    @staticmethod
    def to_str(a) -> str:
        return str(a)


QQ = RationalField()


def field_from_descriptor(desc) -> RationalField | PrimeField:
    """Build a field from the job-file descriptor dict."""
    if desc.get("type") == "rational":
        return QQ
    if desc.get("type") == "prime":
        return PrimeField(int(desc["p"]))
    raise FormdepthError(f"unknown field descriptor: {desc!r}")
