"""Pure-Python reduction backend.

Module terms are (component, exponent-tuple) pairs; a polynomial is a
dict from terms to nonzero field elements plus a cached lead term.  The
module order is position-over-term: earlier components dominate, ties
are broken by the ring order on the monomial parts.

This backend is the reference implementation; the compiled backend in
``_core`` must produce identical reduced bases (uniqueness of the
reduced Groebner basis makes that testable).
"""

from __future__ import annotations


def _ring_key(kind: str):
    if kind == "grevlex":
        def key(e):
            return (sum(e), tuple(-x for x in reversed(e)))
    elif kind == "graded-lex":
        def key(e):
            return (sum(e), e)
    elif kind == "lex":
        def key(e):
            return e
    else:
        raise ValueError(f"unknown order kind: {kind}")
    return key


class PyPoly:
    __slots__ = ("terms", "lead")

    def __init__(self, terms, lead):
        self.terms = terms
        self.lead = lead


class PyBackend:
    name = "pure-python"

    def __init__(self, nvars: int, field, kind: str, ncomp: int):
        self.nvars = nvars
        self.field = field
        self.kind = kind
        self.ncomp = ncomp
        rk = _ring_key(kind)
        self._rk = rk
        self.term_key = lambda t: (-t[0],) + _as_tuple(rk(t[1]))

    # -- conversions ----------------------------------------------------

    def encode(self, kpoly):
        field = self.field
        zero = field.zero
        terms: dict = {}
        for term, coeff in kpoly:
            comp, exps = term
            t = (int(comp), tuple(int(e) for e in exps))
            s = field.add(terms.get(t, zero), coeff)
            if s == zero:
                terms.pop(t, None)
            else:
                terms[t] = s
        if not terms:
            return None
        return PyPoly(terms, max(terms, key=self.term_key))

    def decode(self, p: PyPoly):
        return sorted(p.terms.items(), key=lambda t: self.term_key(t[0]), reverse=True)

    # -- queries ---------------------------------------------------------

    def degree(self, p: PyPoly) -> int:
        return max(sum(t[1]) for t in p.terms)

    def lead_term(self, p: PyPoly):
        return p.lead

    def lead_sort_key(self, p: PyPoly):
        return self.term_key(p.lead)

    def same_lead_comp(self, p: PyPoly, q: PyPoly) -> bool:
        return p.lead[0] == q.lead[0]

    def lead_coprime(self, p: PyPoly, q: PyPoly) -> bool:
        return all(min(a, b) == 0 for a, b in zip(p.lead[1], q.lead[1]))

    def lead_divides(self, p: PyPoly, q: PyPoly) -> bool:
        if p.lead[0] != q.lead[0]:
            return False
        return all(a <= b for a, b in zip(p.lead[1], q.lead[1]))

    def pair_data(self, p: PyPoly, q: PyPoly):
        """(sort_key, lcm_term, sugar_degree) of the S-pair."""
        comp = p.lead[0]
        lcm = tuple(max(a, b) for a, b in zip(p.lead[1], q.lead[1]))
        term = (comp, lcm)
        d = sum(lcm)
        sugar = max(
            self.degree(p) + d - sum(p.lead[1]),
            self.degree(q) + d - sum(q.lead[1]),
        )
        return self.term_key(term), term, sugar

    def lead_divides_term(self, p: PyPoly, term) -> bool:
        if p.lead[0] != term[0]:
            return False
        return all(a <= b for a, b in zip(p.lead[1], term[1]))

    # -- arithmetic --------------------------------------------------------

    def monic(self, p: PyPoly) -> PyPoly:
        field = self.field
        lc = p.terms[p.lead]
        if lc == field.one:
            return p
        inv = field.inv(lc)
        return PyPoly({t: field.mul(c, inv) for t, c in p.terms.items()}, p.lead)

    def _shifted(self, p: PyPoly, shift):
        return {(c, tuple(a + b for a, b in zip(e, shift))): v for (c, e), v in p.terms.items()}

    def spoly(self, p: PyPoly, q: PyPoly):
        """S-polynomial of two monic elements with same lead component."""
        field = self.field
        zero = field.zero
        lcm = tuple(max(a, b) for a, b in zip(p.lead[1], q.lead[1]))
        up = tuple(l - a for l, a in zip(lcm, p.lead[1]))
        uq = tuple(l - a for l, a in zip(lcm, q.lead[1]))
        terms = self._shifted(p, up)
        for t, v in self._shifted(q, uq).items():
            s = field.sub(terms.get(t, zero), v)
            if s == zero:
                terms.pop(t, None)
            else:
                terms[t] = s
        if not terms:
            return None
        return PyPoly(terms, max(terms, key=self.term_key))

    def normal_form(self, p: PyPoly, basis: list[PyPoly]):
        """Full tail reduction of p against monic basis elements."""
        field = self.field
        zero = field.zero
        by_comp: dict[int, list[PyPoly]] = {}
        for b in basis:
            by_comp.setdefault(b.lead[0], []).append(b)
        work = dict(p.terms)
        out: dict = {}
        key = self.term_key
        while work:
            t = max(work, key=key)
            comp, exps = t
            reducer = None
            for b in by_comp.get(comp, ()):
                le = b.lead[1]
                ok = True
                for a, bb in zip(le, exps):
                    if a > bb:
                        ok = False
                        break
                if ok:
                    reducer = b
                    break
            if reducer is None:
                out[t] = work.pop(t)
                continue
            c = work[t]
            shift = tuple(a - b for a, b in zip(exps, reducer.lead[1]))
            for (bc, be), bv in reducer.terms.items():
                kterm = (bc, tuple(a + b for a, b in zip(be, shift)))
                s = field.sub(work.get(kterm, zero), field.mul(c, bv))
                if s == zero:
                    work.pop(kterm, None)
                else:
                    work[kterm] = s
        if not out:
            return None
        return PyPoly(out, max(out, key=key))


def _as_tuple(k):
    return k if isinstance(k, tuple) else (k,)
