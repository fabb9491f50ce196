# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; contract identical to ``_purekernels``.

The accumulator works in machine integers: packed keys must stay below
2**62 and every coefficient it could ever hold is bounded up front from the
operands, so no intermediate can overflow.  When a request would break
either limit it raises :class:`OverflowError` before touching its table and
the caller falls back to the unbounded pure-Python accumulator.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport free, malloc
from libc.string cimport memset

cnp.import_array()

BACKEND = "cython"

LIMIT = 1 << 62

cdef int64_t EMPTY = -1


def _weight(a, b):
    # sum |A| + 2|B|: bounds every product coefficient, since 3 <= 2 * 2
    return sum(abs(x) for x in a) + 2 * sum(abs(x) for x in b)


cdef class Accumulator:
    cdef int64_t* _keys
    cdef int64_t* _a
    cdef int64_t* _b
    cdef Py_ssize_t _cap
    cdef Py_ssize_t _count
    cdef int _bits
    cdef object _bound

    def __cinit__(self, Py_ssize_t size_hint=0):
        self._bits = 4
        while (<Py_ssize_t>1 << self._bits) < 2 * size_hint + 16 and self._bits < 40:
            self._bits += 1
        self._keys = NULL
        self._a = NULL
        self._b = NULL
        self._alloc()
        self._count = 0
        self._bound = 0

    def __dealloc__(self):
        free(self._keys)
        free(self._a)
        free(self._b)

    @property
    def native(self):
        return True

    def __len__(self):
        return self._count

    cdef void _alloc(self) except *:
        self._cap = <Py_ssize_t>1 << self._bits
        self._keys = <int64_t*>malloc(self._cap * sizeof(int64_t))
        self._a = <int64_t*>malloc(self._cap * sizeof(int64_t))
        self._b = <int64_t*>malloc(self._cap * sizeof(int64_t))
        if self._keys == NULL or self._a == NULL or self._b == NULL:
            raise MemoryError()
        # all bytes 0xFF is -1, the empty marker
        memset(self._keys, 0xFF, self._cap * sizeof(int64_t))

    cdef inline Py_ssize_t _slot(self, int64_t k) noexcept nogil:
        cdef uint64_t h = (<uint64_t>k) * <uint64_t>0x9E3779B97F4A7C15
        cdef Py_ssize_t i = <Py_ssize_t>(h >> (64 - self._bits))
        cdef Py_ssize_t mask = self._cap - 1
        while self._keys[i] != EMPTY and self._keys[i] != k:
            i = (i + 1) & mask
        return i

    cdef void _grow(self) except *:
        cdef int64_t* old_k = self._keys
        cdef int64_t* old_a = self._a
        cdef int64_t* old_b = self._b
        cdef Py_ssize_t old_cap = self._cap, i, j
        self._bits += 1
        self._alloc()
        for i in range(old_cap):
            if old_k[i] != EMPTY:
                j = self._slot(old_k[i])
                self._keys[j] = old_k[i]
                self._a[j] = old_a[i]
                self._b[j] = old_b[i]
        free(old_k)
        free(old_a)
        free(old_b)

    cdef inline void _add(self, int64_t k, int64_t va, int64_t vb) except *:
        cdef Py_ssize_t i = self._slot(k)
        if self._keys[i] == EMPTY:
            self._keys[i] = k
            self._a[i] = va
            self._b[i] = vb
            self._count += 1
            if 2 * self._count > self._cap:
                self._grow()
        else:
            self._a[i] += va
            self._b[i] += vb

    cdef _reserve(self, kp, ap, bp, kq, aq, bq, mult):
        if not kp or not kq:
            return False
        if max(kp) + max(kq) >= LIMIT or min(kp) < 0 or min(kq) < 0:
            raise OverflowError("packed monomials exceed 62 bits")
        bound = self._bound + abs(mult) * _weight(ap, bp) * _weight(aq, bq)
        if bound >= LIMIT:
            raise OverflowError("coefficients may exceed 62 bits")
        self._bound = bound
        return True

    def product(self, kp, ap, bp, kq, aq, bq, mult=1):
        if not self._reserve(kp, ap, bp, kq, aq, bq, mult):
            return
        cdef int64_t[::1] Kp = np.asarray(kp, dtype=np.int64)
        cdef int64_t[::1] Ap = np.asarray(ap, dtype=np.int64)
        cdef int64_t[::1] Bp = np.asarray(bp, dtype=np.int64)
        cdef int64_t[::1] Kq = np.asarray(kq, dtype=np.int64)
        cdef int64_t[::1] Aq = np.asarray(aq, dtype=np.int64)
        cdef int64_t[::1] Bq = np.asarray(bq, dtype=np.int64)
        cdef int64_t m = mult, ki, ai, bi, bi3, aj, bj
        cdef Py_ssize_t i, j, np_ = Kp.shape[0], nq = Kq.shape[0]
        for i in range(np_):
            ki = Kp[i]
            ai = Ap[i] * m
            bi = Bp[i] * m
            bi3 = 3 * bi
            for j in range(nq):
                aj = Aq[j]
                bj = Bq[j]
                self._add(ki + Kq[j], ai * aj + bi3 * bj, ai * bj + bi * aj)

    def square(self, kp, ap, bp, mult=1):
        if not self._reserve(kp, ap, bp, kp, ap, bp, mult):
            return
        cdef int64_t[::1] K = np.asarray(kp, dtype=np.int64)
        cdef int64_t[::1] A = np.asarray(ap, dtype=np.int64)
        cdef int64_t[::1] B = np.asarray(bp, dtype=np.int64)
        cdef int64_t m = mult, ki, ai, bi, ma, mb, ai2, bi2, bi6, aj, bj
        cdef Py_ssize_t i, j, t = K.shape[0]
        for i in range(t):
            ki = K[i]
            ai = A[i]
            bi = B[i]
            ma = ai * m
            mb = bi * m
            self._add(ki + ki, ma * ai + 3 * mb * bi, 2 * ma * bi)
            ai2 = 2 * ma
            bi2 = 2 * mb
            bi6 = 3 * bi2
            for j in range(i + 1, t):
                aj = A[j]
                bj = B[j]
                self._add(ki + K[j], ai2 * aj + bi6 * bj, ai2 * bj + bi2 * aj)

    def items(self):
        keys = np.empty(self._count, dtype=np.int64)
        avals = np.empty(self._count, dtype=np.int64)
        bvals = np.empty(self._count, dtype=np.int64)
        cdef int64_t[::1] K = keys
        cdef int64_t[::1] A = avals
        cdef int64_t[::1] B = bvals
        cdef Py_ssize_t i, n = 0
        for i in range(self._cap):
            if self._keys[i] != EMPTY and (self._a[i] != 0 or self._b[i] != 0):
                K[n] = self._keys[i]
                A[n] = self._a[i]
                B[n] = self._b[i]
                n += 1
        return keys[:n].tolist(), avals[:n].tolist(), bvals[:n].tolist()


def eval_batch(exps, coeffs, offsets, x):
    cdef int[:, ::1] e = np.ascontiguousarray(exps, dtype=np.int32)
    cdef double[::1] c = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef long long[::1] off = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0], nt = e.shape[0], npoly = off.shape[0] - 1
    cdef Py_ssize_t p, t, v, d, maxdeg = 0
    cdef double acc, term
    for t in range(nt):
        for v in range(n):
            if e[t, v] > maxdeg:
                maxdeg = e[t, v]
    cdef double[:, ::1] table = np.empty((n, maxdeg + 1), dtype=np.float64)
    for v in range(n):
        table[v, 0] = 1.0
        for d in range(1, maxdeg + 1):
            table[v, d] = table[v, d - 1] * xv[v]
    out = np.zeros(npoly, dtype=np.float64)
    cdef double[::1] o = out
    for p in range(npoly):
        acc = 0.0
        for t in range(off[p], off[p + 1]):
            term = c[t]
            for v in range(n):
                if e[t, v]:
                    term *= table[v, e[t, v]]
            acc += term
        o[p] = acc
    return out
