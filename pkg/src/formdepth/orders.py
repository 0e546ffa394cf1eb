"""Monomial orders: grevlex (default), lex, and graded lex.

An order carries a variable precedence (a permutation of variable
indices, most significant first).  All orders are total and refine
divisibility; the graded kinds compare total degree first.
"""

from __future__ import annotations

from .errors import FormdepthError

GREVLEX = "grevlex"
LEX = "lex"
GRLEX = "graded-lex"

_KINDS = (GREVLEX, LEX, GRLEX)


class MonomialOrder:
    __slots__ = ("kind", "precedence")

    def __init__(self, kind: str = GREVLEX, precedence: tuple[int, ...] | None = None):
        if kind not in _KINDS:
            raise FormdepthError(f"unknown monomial order kind: {kind}")
        self.kind = kind
        self.precedence = tuple(precedence) if precedence is not None else None

    def _perm(self, n: int) -> tuple[int, ...]:
        if self.precedence is None:
            return tuple(range(n))
        if sorted(self.precedence) != list(range(n)):
            raise FormdepthError("precedence is not a permutation of the variables")
        return self.precedence

    def key(self, exps: tuple[int, ...]):
        """Sort key: bigger key = bigger monomial."""
        perm = self._perm(len(exps))
        e = tuple(exps[i] for i in perm)
        if self.kind == GREVLEX:
            return (sum(e), tuple(-x for x in reversed(e)))
        if self.kind == GRLEX:
            return (sum(e), e)
        return e  # lex

    def compare(self, a: tuple[int, ...], b: tuple[int, ...]) -> int:
        """-1, 0, 1 for a < b, a = b, a > b."""
        if len(a) != len(b):
            raise FormdepthError("exponent vectors of different lengths")
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and other.kind == self.kind
            and other.precedence == self.precedence
        )

    def __hash__(self):
        return hash((self.kind, self.precedence))

    def __repr__(self):
        if self.precedence is None:
            return f"MonomialOrder({self.kind!r})"
        return f"MonomialOrder({self.kind!r}, precedence={self.precedence!r})"


def monomial_compare(order: MonomialOrder, a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Compare two exponent vectors under the given order."""
    return order.compare(a, b)
