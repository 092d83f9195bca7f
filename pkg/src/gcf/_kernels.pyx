# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scan kernel; same interface and results as ``_kernels_py``."""

from libc.stdlib cimport malloc, free
from libc.string cimport memcpy, memset

cdef enum:
    MAXD = 128  # max polynomial length handled (deg f < MAXD / 2)


cdef inline int _trim(int* a, int la) nogil:
    while la > 0 and a[la - 1] == 0:
        la -= 1
    return la


cdef class Scanner:
    cdef int q, n_g, n_p, width
    cdef int* add
    cdef int* mul
    cdef int* neg
    cdef int* inv
    cdef int* gs        # n_g rows of `width` coefficients
    cdef int* glen      # trimmed length of each g
    cdef int* pcoef     # primes, MAXD per row
    cdef int* plen
    cdef int* tgt       # targets, MAXD per row
    cdef int* tlen
    cdef public object backend

    def __cinit__(self, int q, tables, gs, primes, targets):
        self.add = self.mul = self.neg = self.inv = NULL
        self.gs = self.glen = self.pcoef = self.plen = self.tgt = self.tlen = NULL
        self.backend = "cython"
        self.q = q
        add, mul, neg, inv = tables
        self.add = self._ints(add)
        self.mul = self._ints(mul)
        self.neg = self._ints(neg)
        self.inv = self._ints(inv)
        gs = [list(g) for g in gs]
        self.n_g = len(gs)
        self.width = max([len(g) for g in gs] + [1])
        if self.width > MAXD // 2:
            raise ValueError("polynomial too long for compiled kernel")
        self.gs = <int*>malloc(sizeof(int) * self.n_g * self.width + 1)
        self.glen = <int*>malloc(sizeof(int) * self.n_g + 1)
        cdef int i, j
        for i in range(self.n_g):
            g = gs[i]
            for j in range(self.width):
                self.gs[i * self.width + j] = g[j] if j < len(g) else 0
            self.glen[i] = _trim(&self.gs[i * self.width], self.width)
        self.n_p = len(primes)
        self.pcoef = <int*>malloc(sizeof(int) * MAXD * self.n_p + 1)
        self.plen = <int*>malloc(sizeof(int) * self.n_p + 1)
        self.tgt = <int*>malloc(sizeof(int) * MAXD * self.n_p + 1)
        self.tlen = <int*>malloc(sizeof(int) * self.n_p + 1)
        for i in range(self.n_p):
            p, t = list(primes[i]), list(targets[i])
            if len(p) > MAXD or len(t) > MAXD:
                raise ValueError("prime or target too long for compiled kernel")
            self.plen[i] = len(p)
            self.tlen[i] = len(t)
            for j in range(len(p)):
                self.pcoef[i * MAXD + j] = p[j]
            for j in range(len(t)):
                self.tgt[i * MAXD + j] = t[j]

    cdef int* _ints(self, seq) except NULL:
        cdef int k, m = len(seq)
        cdef int* out = <int*>malloc(sizeof(int) * m + 1)
        for k in range(m):
            out[k] = seq[k]
        return out

    def __dealloc__(self):
        free(self.add); free(self.mul); free(self.neg); free(self.inv)
        free(self.gs); free(self.glen); free(self.pcoef); free(self.plen)
        free(self.tgt); free(self.tlen)

    # -- arithmetic, all on fixed buffers of length MAXD ---------------------
    cdef int _reduce(self, int* r, int lr, int* negf, int n) nogil:
        cdef int top, j, c, base, cq, nf, q = self.q
        for top in range(lr - 1, n - 1, -1):
            c = r[top]
            if c:
                base = top - n
                cq = c * q
                for j in range(n):
                    nf = negf[j]
                    if nf:
                        r[base + j] = self.add[r[base + j] * q + self.mul[cq + nf]]
                r[top] = 0
        if lr > n:
            lr = n
        return _trim(r, lr)

    cdef int _mulmod(self, int* a, int la, int* b, int lb, int* out,
                     int* negf, int n) nogil:
        cdef int i, j, x, y, xq, q = self.q
        cdef int lo
        if la == 0 or lb == 0:
            return 0
        lo = la + lb - 1
        memset(out, 0, sizeof(int) * lo)
        for i in range(la):
            x = a[i]
            if x:
                xq = x * q
                for j in range(lb):
                    y = b[j]
                    if y:
                        out[i + j] = self.add[out[i + j] * q + self.mul[xq + y]]
        lo = _trim(out, lo)
        return self._reduce(out, lo, negf, n)

    cdef int _gcd(self, int* a0, int la, int* b0, int lb, int* out) nogil:
        """gcd (up to a unit) into ``out``; returns its length."""
        cdef int abuf[MAXD]
        cdef int bbuf[MAXD]
        cdef int* a = abuf
        cdef int* b = bbuf
        cdef int* tmp
        cdef int top, j, c, il, base, ncq, db, t, q = self.q
        memcpy(a, a0, sizeof(int) * la)
        memcpy(b, b0, sizeof(int) * lb)
        while lb > 0:
            db = lb - 1
            il = self.inv[b[db]]
            for top in range(la - 1, db - 1, -1):
                c = a[top]
                if c:
                    c = self.mul[c * q + il]
                    base = top - db
                    ncq = self.neg[c] * q
                    for j in range(db + 1):
                        if b[j]:
                            a[base + j] = self.add[a[base + j] * q + self.mul[ncq + b[j]]]
            if la > db:
                la = db
            la = _trim(a, la)
            tmp = a; a = b; b = tmp
            t = la; la = lb; lb = t
        memcpy(out, a, sizeof(int) * la)
        return la

    cdef int _compose(self, int* p, int lp, int* g, int lg, int* out,
                      int* negf, int n) nogil:
        cdef int acc[MAXD]
        cdef int la = 0, k, c, q = self.q
        for k in range(lp - 1, -1, -1):
            c = p[k]
            la = self._mulmod(acc, la, g, lg, out, negf, n)
            memcpy(acc, out, sizeof(int) * la)
            if la:
                acc[0] = self.add[acc[0] * q + c]
                la = _trim(acc, la)
            elif c:
                acc[0] = c
                la = 1
        memcpy(out, acc, sizeof(int) * la)
        return la

    cdef bint _matches(self, int* f, int lf, int* negf, int* g0, int lg) nogil:
        cdef int g[MAXD]
        cdef int y[MAXD]
        cdef int h[MAXD]
        cdef int hi[MAXD]
        cdef int tmp[MAXD]
        cdef int w[MAXD]
        cdef int n = lf - 1
        cdef int k, s, lh, lhi, ly, lw
        memcpy(g, g0, sizeof(int) * lg)
        if lg > n:
            lg = self._reduce(g, lg, negf, n)
        for k in range(self.n_p):
            ly = self._compose(&self.pcoef[k * MAXD], self.plen[k], g, lg, y, negf, n)
            lh = self._gcd(f, lf, y, ly, h)
            if lh - 1 != self.tgt[k * MAXD]:
                return False
            memcpy(hi, h, sizeof(int) * lh)
            lhi = lh
            for s in range(1, self.tlen[k]):
                lhi = self._mulmod(hi, lhi, h, lh, tmp, negf, n)
                memcpy(hi, tmp, sizeof(int) * lhi)
                lw = self._gcd(f, lf, hi, lhi, w)
                if lw - 1 != self.tgt[k * MAXD + s]:
                    return False
        return True

    def matches(self, f, g):
        cdef int fb[MAXD]
        cdef int nb[MAXD]
        cdef int gb[MAXD]
        cdef int lf = len(f), lg = len(g), j
        if lf > MAXD // 2 or lg > MAXD:
            raise ValueError("polynomial too long for compiled kernel")
        for j in range(lf):
            fb[j] = f[j]
            nb[j] = self.neg[fb[j]]
        for j in range(lg):
            gb[j] = g[j]
        lg = _trim(gb, lg)
        return bool(self._matches(fb, lf, nb, gb, lg))

    def first_match(self, f, int start=0, stop=None):
        """Index of the first matching ``g`` in ``gs[start:stop]``, or -1."""
        cdef int fb[MAXD]
        cdef int nb[MAXD]
        cdef int lf = len(f), j, idx, found = -1
        cdef int end = self.n_g if stop is None else min(<int>stop, self.n_g)
        if lf > MAXD // 2:
            raise ValueError("polynomial too long for compiled kernel")
        for j in range(lf):
            fb[j] = f[j]
            nb[j] = self.neg[fb[j]]
        with nogil:
            for idx in range(start, end):
                if self._matches(fb, lf, nb, &self.gs[idx * self.width], self.glen[idx]):
                    found = idx
                    break
        return found
