# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_pykernels``; same API, same results."""

from libc.stdlib cimport malloc, free


cdef int* _to_c(object seq, Py_ssize_t n) except NULL:
    cdef int* buf = <int*> malloc((n if n > 0 else 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = seq[i]
    return buf


cdef list _to_py(int* buf, Py_ssize_t n):
    cdef Py_ssize_t i
    return [buf[i] for i in range(n)]


cdef class FiniteRingKernel:
    cdef readonly int size, zero, one
    cdef int* _add
    cdef int* _mul

    def __cinit__(self, int size, add, mul, int zero, int one):
        self.size = size
        self.zero = zero
        self.one = one
        self._add = _to_c(add, size * size)
        self._mul = _to_c(mul, size * size)

    def __dealloc__(self):
        free(self._add)
        free(self._mul)

    @property
    def add(self):
        return _to_py(self._add, self.size * self.size)

    @property
    def mul(self):
        return _to_py(self._mul, self.size * self.size)

    cdef void _smul(self, int* a, int* b, int* out, Py_ssize_t n) noexcept nogil:
        cdef Py_ssize_t i, j
        cdef int s = self.size, z = self.zero, x, y
        for i in range(n):
            out[i] = z
        for i in range(n):
            x = a[i]
            if x == z:
                continue
            for j in range(n - i):
                y = b[j]
                if y != z:
                    out[i + j] = self._add[out[i + j] * s + self._mul[x * s + y]]

    cdef void _scompose(self, int* f, int* g, int* acc, int* tmp, Py_ssize_t n) noexcept nogil:
        cdef Py_ssize_t k, i
        cdef int s = self.size
        for i in range(n):
            acc[i] = self.zero
        for k in range(n - 1, -1, -1):
            self._smul(acc, g, tmp, n)
            for i in range(n):
                acc[i] = tmp[i]
            acc[0] = self._add[acc[0] * s + f[k]]

    def series_mul(self, a, b):
        cdef Py_ssize_t n = len(a)
        cdef int* ca = _to_c(a, n)
        cdef int* cb = _to_c(b, n)
        cdef int* out = <int*> malloc(n * sizeof(int))
        try:
            self._smul(ca, cb, out, n)
            return _to_py(out, n)
        finally:
            free(ca); free(cb); free(out)

    def series_compose(self, f, g):
        cdef Py_ssize_t n = len(f)
        cdef int* cf = _to_c(f, n)
        cdef int* cg = _to_c(g, n)
        cdef int* acc = <int*> malloc(n * sizeof(int))
        cdef int* tmp = <int*> malloc(n * sizeof(int))
        try:
            self._scompose(cf, cg, acc, tmp, n)
            return _to_py(acc, n)
        finally:
            free(cf); free(cg); free(acc); free(tmp)

    def series_iterate(self, f, int k):
        cdef Py_ssize_t n = len(f), i
        cdef int r
        cdef int* cf = _to_c(f, n)
        cdef int* cur = _to_c(f, n)
        cdef int* acc = <int*> malloc(n * sizeof(int))
        cdef int* tmp = <int*> malloc(n * sizeof(int))
        try:
            for r in range(k - 1):
                self._scompose(cf, cur, acc, tmp, n)
                for i in range(n):
                    cur[i] = acc[i]
            return _to_py(cur, n)
        finally:
            free(cf); free(cur); free(acc); free(tmp)

    def is_t(self, f):
        cdef Py_ssize_t n = len(f), i
        if f[0] != self.zero or (n > 1 and f[1] != self.one):
            return False
        for i in range(2, n):
            if f[i] != self.zero:
                return False
        return True

    cdef void _tmul(self, int* a, int* b, int* out, int n) noexcept nogil:
        cdef int i, j, k, ri, acc, x, y
        cdef int s = self.size, z = self.zero
        for i in range(n + 1):
            ri = i * (i + 1) // 2
            for j in range(i + 1):
                acc = z
                for k in range(j, i + 1):
                    x = a[ri + k]
                    if x != z:
                        y = b[k * (k + 1) // 2 + j]
                        if y != z:
                            acc = self._add[acc * s + self._mul[x * s + y]]
                out[ri + j] = acc

    cdef bint _tident(self, int* a, int n) noexcept nogil:
        cdef int i, j, ri
        for i in range(n + 1):
            ri = i * (i + 1) // 2
            for j in range(i):
                if a[ri + j] != self.zero:
                    return False
            if a[ri + i] != self.one:
                return False
        return True

    def tri_mul(self, a, b, int n):
        cdef Py_ssize_t m = (n + 1) * (n + 2) // 2
        cdef int* ca = _to_c(a, m)
        cdef int* cb = _to_c(b, m)
        cdef int* out = <int*> malloc(m * sizeof(int))
        try:
            self._tmul(ca, cb, out, n)
            return _to_py(out, m)
        finally:
            free(ca); free(cb); free(out)

    def tri_is_identity(self, a, int n):
        cdef Py_ssize_t m = (n + 1) * (n + 2) // 2
        cdef int* ca = _to_c(a, m)
        try:
            return self._tident(ca, n)
        finally:
            free(ca)

    def tri_order(self, a, int n, int cap):
        cdef Py_ssize_t m = (n + 1) * (n + 2) // 2, i
        cdef int k
        cdef int* ca = _to_c(a, m)
        cdef int* p = _to_c(a, m)
        cdef int* tmp = <int*> malloc(m * sizeof(int))
        try:
            for k in range(1, cap + 1):
                if self._tident(p, n):
                    return k
                self._tmul(p, ca, tmp, n)
                for i in range(m):
                    p[i] = tmp[i]
            return 0
        finally:
            free(ca); free(p); free(tmp)
