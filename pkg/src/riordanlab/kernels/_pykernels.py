"""Pure-Python hot kernels over an index-encoded finite ring.

Elements are ints in [0, size); ``add`` and ``mul`` are flat row-major
tables of length size*size.  Series are lists of N+1 codes.  Lower-triangular
matrices of level n are packed row by row: entry (i, j), j <= i, lives at
``i*(i+1)//2 + j``.

This module and the compiled ``_ckernels`` expose the same API and must
agree bit for bit.
"""


class FiniteRingKernel:
    def __init__(self, size, add, mul, zero, one):
        self.size = size
        self.add = list(add)
        self.mul = list(mul)
        self.zero = zero
        self.one = one

    def series_mul(self, a, b):
        n = len(a)
        s, add, mul, z = self.size, self.add, self.mul, self.zero
        out = [z] * n
        for i in range(n):
            x = a[i]
            if x == z:
                continue
            row = x * s
            for j in range(n - i):
                y = b[j]
                if y != z:
                    out[i + j] = add[out[i + j] * s + mul[row + y]]
        return out

    def series_compose(self, f, g):
        """f(g(t)); g[0] must be zero (not checked)."""
        n = len(f)
        s, add = self.size, self.add
        acc = [self.zero] * n
        for k in range(n - 1, -1, -1):
            acc = self.series_mul(acc, g)
            acc[0] = add[acc[0] * s + f[k]]
        return acc

    def series_iterate(self, f, k):
        """k-fold composition f(f(...f(t)))."""
        r = list(f)
        for _ in range(k - 1):
            r = self.series_compose(f, r)
        return r

    def is_t(self, f):
        z = self.zero
        if f[0] != z or (len(f) > 1 and f[1] != self.one):
            return False
        for c in f[2:]:
            if c != z:
                return False
        return True

    def tri_mul(self, a, b, n):
        s, add, mul, z = self.size, self.add, self.mul, self.zero
        out = [z] * ((n + 1) * (n + 2) // 2)
        for i in range(n + 1):
            ri = i * (i + 1) // 2
            for j in range(i + 1):
                acc = z
                for k in range(j, i + 1):
                    x = a[ri + k]
                    if x != z:
                        y = b[k * (k + 1) // 2 + j]
                        if y != z:
                            acc = add[acc * s + mul[x * s + y]]
                out[ri + j] = acc
        return out

    def tri_is_identity(self, a, n):
        z, one = self.zero, self.one
        for i in range(n + 1):
            ri = i * (i + 1) // 2
            for j in range(i):
                if a[ri + j] != z:
                    return False
            if a[ri + i] != one:
                return False
        return True

    def tri_order(self, a, n, cap):
        """Least k <= cap with a^k = I, else 0."""
        p = list(a)
        for k in range(1, cap + 1):
            if self.tri_is_identity(p, n):
                return k
            p = self.tri_mul(p, a, n)
        return 0
