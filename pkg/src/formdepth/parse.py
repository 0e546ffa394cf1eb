"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace-insensitive)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ['^' INT]
    atom   := INT | IDENT | '(' expr ')'

Exponents are non-negative integers; '/' is division by a nonzero
constant only (so printed rational coefficients like 1/2 round-trip).
All errors carry the offending position.
"""

from __future__ import annotations

from .errors import ParseError
from .poly import Polynomial, PolyRing

_OPS = set("+-*/^()")


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens, ring: PolyRing):
        self.tokens = tokens
        self.pos = 0
        self.ring = ring
        self.varmap = {name: i for i, name in enumerate(ring.names)}

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.advance()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse(self) -> Polynomial:
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected trailing input {tok[1]!r}", tok[2])
        return p

    def expr(self) -> Polynomial:
        negate = False
        if self.peek()[0] == "-":
            self.advance()
            negate = True
        p = self.term()
        if negate:
            p = -p
        while self.peek()[0] in ("+", "-"):
            op = self.advance()
            q = self.term()
            p = p + q if op[0] == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.advance()
            q = self.factor()
            if op[0] == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise ParseError("division only by a nonzero constant", op[2])
                p = p.scale(self.ring.field.inv(q.constant_coefficient()))
        return p

    def factor(self) -> Polynomial:
        p = self.atom()
        if self.peek()[0] == "^":
            caret = self.advance()
            tok = self.peek()
            if tok[0] != "int":
                raise ParseError("exponent must be a non-negative integer", tok[2])
            self.advance()
            p = p ** int(tok[1])
            if self.peek()[0] == "^":
                raise ParseError("chained exponent needs parentheses", self.peek()[2])
            del caret
        return p

    def atom(self) -> Polynomial:
        tok = self.advance()
        kind, value, pos = tok
        if kind == "int":
            return self.ring.const(int(value))
        if kind == "ident":
            idx = self.varmap.get(value)
            if idx is None:
                raise ParseError(f"unknown identifier {value!r}", pos)
            return self.ring.variable(idx)
        if kind == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise ParseError(f"unexpected token {value!r}", pos)


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse an expression into the ring, with positions on every error."""
    return _Parser(_tokenize(text), ring).parse()
