# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled reduction backend for prime fields.

Module terms pack into one 64-bit word: [component | total degree |
exponents], so monomial arithmetic is integer arithmetic and polynomials
are parallel sorted vectors.  Exponent, degree, and component ranges
are guarded; on overflow an OverflowError escapes and the dispatcher
reruns the computation on the pure-Python backend.
"""

from libcpp.vector cimport vector

ctypedef unsigned long long u64
ctypedef long long i64

DEF COMP_BITS = 10
DEF DEG_BITS = 12

cdef u64 COMP_MASK = (<u64>1 << COMP_BITS) - 1
cdef u64 DEG_MASK = (<u64>1 << DEG_BITS) - 1

cdef int KIND_GREVLEX = 0
cdef int KIND_LEX = 1
cdef int KIND_GRLEX = 2

_KIND_CODES = {"grevlex": 0, "lex": 1, "graded-lex": 2}

MAX_VARS = 5


def supports(nvars, kind, ncomp):
    return (
        1 <= nvars <= MAX_VARS
        and kind in _KIND_CODES
        and ncomp <= <int>COMP_MASK
    )


cdef class KP:
    """Sorted-descending term vector with cached bound data."""
    cdef vector[u64] keys
    cdef vector[i64] cf
    cdef public int maxdeg
    cdef int maxexp[8]


cdef class CBackend:
    name = "compiled"

    cdef int n, kind
    cdef i64 p
    cdef int eb
    cdef u64 emask
    cdef int comp_shift, deg_shift
    cdef public int ncomp

    def __init__(self, int nvars, i64 p, str kind, int ncomp):
        if not supports(nvars, kind, ncomp):
            raise OverflowError("unsupported ring shape for the compiled kernel")
        self.n = nvars
        self.p = p
        self.kind = _KIND_CODES[kind]
        self.ncomp = ncomp
        self.eb = (64 - COMP_BITS - DEG_BITS) // nvars
        if self.eb > 16:
            self.eb = 16
        self.emask = (<u64>1 << self.eb) - 1
        self.deg_shift = self.eb * nvars
        self.comp_shift = self.deg_shift + DEG_BITS

    # -- packing -----------------------------------------------------------

    cdef u64 _pack(self, int comp, exps) except *:
        cdef u64 key = 0
        cdef int i, e, deg = 0
        if comp > <int>COMP_MASK:
            raise OverflowError("component out of range")
        for i in range(self.n):
            e = exps[i]
            if e > <int>self.emask:
                raise OverflowError("exponent out of range")
            deg += e
            key |= (<u64>e) << (self.eb * (self.n - 1 - i))
        if deg > <int>DEG_MASK:
            raise OverflowError("degree out of range")
        key |= (<u64>deg) << self.deg_shift
        key |= (<u64>comp) << self.comp_shift
        return key

    cdef tuple _unpack(self, u64 key):
        cdef int i
        exps = []
        for i in range(self.n):
            exps.append(<int>((key >> (self.eb * (self.n - 1 - i))) & self.emask))
        return (<int>(key >> self.comp_shift), tuple(exps))

    cdef inline int _exp_at(self, u64 key, int i) nogil:
        return <int>((key >> (self.eb * (self.n - 1 - i))) & self.emask)

    cdef inline int _deg_of(self, u64 key) nogil:
        return <int>((key >> self.deg_shift) & DEG_MASK)

    cdef inline int _comp_of(self, u64 key) nogil:
        return <int>(key >> self.comp_shift)

    cdef int _cmp(self, u64 a, u64 b) nogil:
        """1 if a > b in the module order (POT over the ring order)."""
        cdef int ca, cb, da, db, i, ea, eb_
        if a == b:
            return 0
        ca = self._comp_of(a)
        cb = self._comp_of(b)
        if ca != cb:
            return 1 if ca < cb else -1
        if self.kind != KIND_LEX:
            da = self._deg_of(a)
            db = self._deg_of(b)
            if da != db:
                return 1 if da > db else -1
        if self.kind == KIND_GREVLEX:
            for i in range(self.n - 1, -1, -1):
                ea = self._exp_at(a, i)
                eb_ = self._exp_at(b, i)
                if ea != eb_:
                    return 1 if ea < eb_ else -1
            return 0
        for i in range(self.n):
            ea = self._exp_at(a, i)
            eb_ = self._exp_at(b, i)
            if ea != eb_:
                return 1 if ea > eb_ else -1
        return 0

    cdef u64 _sort_int(self, u64 key):
        """Monotone image of the module order in plain integer order."""
        cdef u64 out = 0
        cdef int i
        out |= (COMP_MASK - <u64>self._comp_of(key)) << self.comp_shift
        if self.kind != KIND_LEX:
            out |= (<u64>self._deg_of(key)) << self.deg_shift
        if self.kind == KIND_GREVLEX:
            for i in range(self.n):
                # higher slot = later variable, complemented
                out |= (self.emask - <u64>self._exp_at(key, i)) << (self.eb * i)
        else:
            for i in range(self.n):
                out |= (<u64>self._exp_at(key, i)) << (self.eb * (self.n - 1 - i))
        return out

    # -- conversions ---------------------------------------------------------

    def encode(self, kpoly):
        cdef dict acc = {}
        cdef i64 c
        for term, coeff in kpoly:
            key = self._pack(term[0], term[1])
            c = (acc.get(key, 0) + coeff) % self.p
            if c == 0:
                acc.pop(key, None)
            else:
                acc[key] = c
        if not acc:
            return None
        return self._from_dict(acc)

    cdef KP _from_dict(self, dict acc):
        cdef KP out = KP()
        cdef u64 k
        cdef int i, e
        items = []
        for key_obj, c_obj in acc.items():
            items.append((int(self._sort_int(<u64>key_obj)), key_obj, c_obj))
        items.sort(reverse=True)
        items = [(key_obj, c_obj) for _, key_obj, c_obj in items]
        out.maxdeg = 0
        for i in range(8):
            out.maxexp[i] = 0
        for key_obj, c_obj in items:
            k = key_obj
            out.keys.push_back(k)
            out.cf.push_back(c_obj)
            if self._deg_of(k) > out.maxdeg:
                out.maxdeg = self._deg_of(k)
            for i in range(self.n):
                e = self._exp_at(k, i)
                if e > out.maxexp[i]:
                    out.maxexp[i] = e
        return out

    def decode(self, KP p):
        out = []
        cdef size_t i
        for i in range(p.keys.size()):
            out.append((self._unpack(p.keys[i]), int(p.cf[i])))
        return out

    # -- queries ---------------------------------------------------------

    def degree(self, KP p):
        return p.maxdeg

    def lead_term(self, KP p):
        return self._unpack(p.keys[0])

    def lead_sort_key(self, KP p):
        return self._sort_int(p.keys[0])

    def same_lead_comp(self, KP p, KP q):
        return self._comp_of(p.keys[0]) == self._comp_of(q.keys[0])

    def lead_coprime(self, KP p, KP q):
        cdef int i
        for i in range(self.n):
            if self._exp_at(p.keys[0], i) and self._exp_at(q.keys[0], i):
                return False
        return True

    def lead_divides(self, KP p, KP q):
        return self._divides(p.keys[0], q.keys[0])

    cdef bint _divides(self, u64 a, u64 b) nogil:
        cdef int i
        if self._comp_of(a) != self._comp_of(b):
            return False
        for i in range(self.n):
            if self._exp_at(a, i) > self._exp_at(b, i):
                return False
        return True

    def pair_data(self, KP p, KP q):
        cdef u64 lcm = self._lcm(p.keys[0], q.keys[0])
        cdef int d = self._deg_of(lcm)
        sugar = max(
            p.maxdeg + d - self._deg_of(p.keys[0]),
            q.maxdeg + d - self._deg_of(q.keys[0]),
        )
        return int(self._sort_int(lcm)), int(lcm), sugar

    cdef u64 _lcm(self, u64 a, u64 b) except *:
        cdef u64 key = 0
        cdef int i, e, deg = 0
        for i in range(self.n):
            e = self._exp_at(a, i)
            if self._exp_at(b, i) > e:
                e = self._exp_at(b, i)
            deg += e
            key |= (<u64>e) << (self.eb * (self.n - 1 - i))
        if deg > <int>DEG_MASK:
            raise OverflowError("lcm degree out of range")
        key |= (<u64>deg) << self.deg_shift
        key |= (<u64>self._comp_of(a)) << self.comp_shift
        return key

    def lead_divides_term(self, KP p, lcm_term):
        cdef u64 t = <u64>lcm_term
        return self._divides(p.keys[0], t)

    # -- arithmetic --------------------------------------------------------

    cdef i64 _inv(self, i64 a):
        cdef i64 result = 1
        cdef i64 base = a % self.p
        cdef i64 e = self.p - 2
        while e:
            if e & 1:
                result = result * base % self.p
            base = base * base % self.p
            e >>= 1
        return result

    def monic(self, KP p):
        cdef i64 lc = p.cf[0]
        if lc == 1:
            return p
        cdef i64 inv = self._inv(lc)
        cdef KP out = KP()
        out.keys = p.keys
        out.maxdeg = p.maxdeg
        cdef int k
        for k in range(8):
            out.maxexp[k] = p.maxexp[k]
        cdef size_t i
        out.cf.reserve(p.cf.size())
        for i in range(p.cf.size()):
            out.cf.push_back(p.cf[i] * inv % self.p)
        return out

    cdef u64 _shift_for(self, u64 target, u64 lead, KP g) except *:
        """Packed quotient target/lead (same component), with
        slot-overflow guards for the multiplier times g."""
        cdef u64 shift = target - lead
        cdef int i
        for i in range(self.n):
            if self._exp_at(shift, i) + g.maxexp[i] > <int>self.emask:
                raise OverflowError("exponent overflow during reduction")
        if self._deg_of(shift) + g.maxdeg > <int>DEG_MASK:
            raise OverflowError("degree overflow during reduction")
        return shift

    cdef KP _combine(self, KP a, size_t start, i64 c, u64 shift, KP b):
        """a[start:] - c * x^shift * b, all sorted descending."""
        cdef KP out = KP()
        cdef size_t i = start, j = 0
        cdef size_t na = a.keys.size(), nb = b.keys.size()
        cdef u64 ka, kb
        cdef i64 v
        cdef int cmp, k, e
        out.keys.reserve(na - start + nb)
        out.cf.reserve(na - start + nb)
        while i < na or j < nb:
            if i < na and j < nb:
                ka = a.keys[i]
                kb = b.keys[j] + shift
                cmp = self._cmp(ka, kb)
                if cmp > 0:
                    out.keys.push_back(ka)
                    out.cf.push_back(a.cf[i])
                    i += 1
                elif cmp < 0:
                    out.keys.push_back(kb)
                    out.cf.push_back((self.p - c) * b.cf[j] % self.p)
                    j += 1
                else:
                    v = (a.cf[i] - c * b.cf[j]) % self.p
                    if v < 0:
                        v += self.p
                    if v:
                        out.keys.push_back(ka)
                        out.cf.push_back(v)
                    i += 1
                    j += 1
            elif i < na:
                out.keys.push_back(a.keys[i])
                out.cf.push_back(a.cf[i])
                i += 1
            else:
                out.keys.push_back(b.keys[j] + shift)
                out.cf.push_back((self.p - c) * b.cf[j] % self.p)
                j += 1
        if out.keys.size() == 0:
            return None
        out.maxdeg = 0
        for k in range(8):
            out.maxexp[k] = 0
        for i in range(out.keys.size()):
            ka = out.keys[i]
            if self._deg_of(ka) > out.maxdeg:
                out.maxdeg = self._deg_of(ka)
            for k in range(self.n):
                e = self._exp_at(ka, k)
                if e > out.maxexp[k]:
                    out.maxexp[k] = e
        return out

    def spoly(self, KP p, KP q):
        cdef u64 lcm = self._lcm(p.keys[0], q.keys[0])
        cdef u64 up = lcm - p.keys[0]
        cdef u64 uq = lcm - q.keys[0]
        # both leads share the component, so up/uq are pure monomial shifts
        cdef int i
        for i in range(self.n):
            if self._exp_at(up, i) + p.maxexp[i] > <int>self.emask:
                raise OverflowError("exponent overflow in S-polynomial")
            if self._exp_at(uq, i) + q.maxexp[i] > <int>self.emask:
                raise OverflowError("exponent overflow in S-polynomial")
        if self._deg_of(up) + p.maxdeg > <int>DEG_MASK or self._deg_of(uq) + q.maxdeg > <int>DEG_MASK:
            raise OverflowError("degree overflow in S-polynomial")
        cdef KP shifted = KP()
        cdef size_t k
        shifted.keys.reserve(p.keys.size())
        shifted.cf.reserve(p.cf.size())
        for k in range(p.keys.size()):
            shifted.keys.push_back(p.keys[k] + up)
            shifted.cf.push_back(p.cf[k])
        shifted.maxdeg = p.maxdeg + self._deg_of(up)
        for i in range(self.n):
            shifted.maxexp[i] = p.maxexp[i] + self._exp_at(up, i)
        return self._combine(shifted, 0, 1, uq, q)

    def normal_form(self, KP f, basis):
        """Full tail reduction against monic basis elements."""
        cdef list blist = list(basis)
        cdef int nb = len(blist)
        cdef KP work = f
        cdef KP out = KP()
        cdef KP g
        cdef size_t cursor = 0
        cdef int bi, found
        cdef u64 t, shift
        cdef i64 c
        cdef int k, e
        out.maxdeg = 0
        for k in range(8):
            out.maxexp[k] = 0
        while work is not None and cursor < work.keys.size():
            t = work.keys[cursor]
            found = -1
            for bi in range(nb):
                g = <KP>blist[bi]
                if self._divides(g.keys[0], t):
                    found = bi
                    break
            if found < 0:
                out.keys.push_back(t)
                out.cf.push_back(work.cf[cursor])
                cursor += 1
                continue
            g = <KP>blist[found]
            c = work.cf[cursor]
            shift = self._shift_for(t, g.keys[0], g)
            work = self._combine(work, cursor, c, shift, g)
            cursor = 0
        if out.keys.size() == 0:
            return None
        for cursor in range(out.keys.size()):
            t = out.keys[cursor]
            if self._deg_of(t) > out.maxdeg:
                out.maxdeg = self._deg_of(t)
            for k in range(self.n):
                e = self._exp_at(t, k)
                if e > out.maxexp[k]:
                    out.maxexp[k] = e
        return out
