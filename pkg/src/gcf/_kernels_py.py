"""Pure-Python scan kernel; mirrors ``_kernels.pyx`` line for line.

Polynomials are coefficient lists over GF(q) with elements as ints and
arithmetic through flat lookup tables (``add[a*q + b]`` etc.).
"""

from __future__ import annotations


class Scanner:
    """Find the first ``g`` in a fixed list with ``g(C_f)`` of a target similarity type.

    The target is given per irreducible ``p`` as the gcd-degree sequence
    ``deg gcd(p^i(g), f)`` for ``i = 1 .. e+1``.  The primes must account for
    the whole dimension, so matching every sequence pins down the type.
    """

    backend = "python"

    def __init__(self, q, tables, gs, primes, targets):
        self.q = q
        self.add, self.mul, self.neg, self.inv = (list(t) for t in tables)
        self.gs = [list(g) for g in gs]
        self.primes = [list(p) for p in primes]
        self.targets = [list(t) for t in targets]

    # -- arithmetic on trimmed coefficient lists ---------------------------
    def _reduce(self, r, f, negf):
        """``r mod f`` in place for monic ``f``; returns trimmed ``r``."""
        n = len(f) - 1
        q, add, mul = self.q, self.add, self.mul
        for top in range(len(r) - 1, n - 1, -1):
            c = r[top]
            if c:
                base = top - n
                cq = c * q
                for j in range(n):
                    nf = negf[j]
                    if nf:
                        r[base + j] = add[r[base + j] * q + mul[cq + nf]]
        del r[n:]
        while r and r[-1] == 0:
            r.pop()
        return r

    def _mulmod(self, a, b, f, negf):
        if not a or not b:
            return []
        q, add, mul = self.q, self.add, self.mul
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                xq = x * q
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add[out[i + j] * q + mul[xq + y]]
        while out and out[-1] == 0:
            out.pop()
        return self._reduce(out, f, negf)

    def _gcd(self, a, b):
        q, add, mul, neg, inv = self.q, self.add, self.mul, self.neg, self.inv
        a, b = list(a), list(b)
        while b:
            db = len(b) - 1
            il = inv[b[-1]]
            for top in range(len(a) - 1, db - 1, -1):
                c = a[top]
                if c:
                    c = mul[c * q + il]
                    base = top - db
                    ncq = neg[c] * q
                    for j in range(db + 1):
                        if b[j]:
                            a[base + j] = add[a[base + j] * q + mul[ncq + b[j]]]
            del a[db:]
            while a and a[-1] == 0:
                a.pop()
            a, b = b, a
        return a

    def _compose(self, p, g, f, negf):
        add = self.add
        q = self.q
        acc = []
        for c in reversed(p):
            acc = self._mulmod(acc, g, f, negf)
            if acc:
                acc[0] = add[acc[0] * q + c]
                if len(acc) == 1 and not acc[0]:
                    acc = []
            elif c:
                acc = [c]
        return acc

    # -- scan ----------------------------------------------------------------
    def matches(self, f, g) -> bool:
        neg = self.neg
        negf = [neg[c] for c in f]
        g = self._reduce(list(g), f, negf) if len(g) >= len(f) else list(g)
        for p, target in zip(self.primes, self.targets):
            y = self._compose(p, g, f, negf)
            h = self._gcd(f, y)
            if len(h) - 1 != target[0]:
                return False
            hi = h
            for t in target[1:]:
                hi = self._mulmod(hi, h, f, negf)
                if len(self._gcd(f, hi)) - 1 != t:
                    return False
        return True

    def first_match(self, f, start: int = 0, stop: int | None = None) -> int:
        """Index of the first matching ``g`` in ``gs[start:stop]``, or -1."""
        f = list(f)
        stop = len(self.gs) if stop is None else min(stop, len(self.gs))
        for idx in range(start, stop):
            if self.matches(f, self.gs[idx]):
                return idx
        return -1
