# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled closure kernel.

Same enumeration contract as the pure backend (see pure.py); vectors live in
a flat int64 buffer as (num, den) pairs and deduplication goes through a
bytes-keyed dict. Intermediate products of two in-range values fit in 64
bits because every stored value is kept below 2**31; vectors that leave that
range raise OverflowError and the caller falls back to the pure kernel.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize

from libc.stdlib cimport free, malloc, realloc
from libc.string cimport memcpy

from ..errors import CapExceeded

BACKEND = "fast"

ctypedef long long i64

cdef i64 LIMIT = 1 << 31


cdef inline i64 igcd(i64 a, i64 b) noexcept nogil:
    cdef i64 t
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef class _Buf:
    cdef i64* data
    cdef Py_ssize_t count, width, alloc

    def __cinit__(self, Py_ssize_t width):
        self.width = width
        self.count = 0
        self.alloc = 64
        self.data = <i64*> malloc(self.alloc * width * sizeof(i64))
        if self.data == NULL:
            raise MemoryError()

    def __dealloc__(self):
        if self.data != NULL:
            free(self.data)

    cdef i64* row(self, Py_ssize_t i) noexcept nogil:
        return self.data + i * self.width

    cdef i64* push(self):
        if self.count == self.alloc:
            self.alloc *= 2
            self.data = <i64*> realloc(self.data, self.alloc * self.width * sizeof(i64))
            if self.data == NULL:
                raise MemoryError()
        self.count += 1
        return self.row(self.count - 1)


cdef int _oplus(i64* a, i64* b, i64* out, Py_ssize_t npts) noexcept nogil:
    cdef Py_ssize_t p
    cdef i64 n, d, g
    for p in range(npts):
        n = a[2 * p] * b[2 * p + 1] + b[2 * p] * a[2 * p + 1]
        d = a[2 * p + 1] * b[2 * p + 1]
        if n >= d:
            out[2 * p] = 1
            out[2 * p + 1] = 1
        else:
            g = igcd(n, d)
            if g > 1:
                n //= g
                d //= g
            if d >= LIMIT:
                return -1
            out[2 * p] = n
            out[2 * p + 1] = d
    return 0


cdef void _neg(i64* a, i64* out, Py_ssize_t npts) noexcept nogil:
    cdef Py_ssize_t p
    for p in range(npts):
        out[2 * p] = a[2 * p + 1] - a[2 * p]
        out[2 * p + 1] = a[2 * p + 1]


cdef int _prod(i64* a, i64* b, i64* out, Py_ssize_t npts) noexcept nogil:
    cdef Py_ssize_t p
    cdef i64 n, d, g
    for p in range(npts):
        n = a[2 * p] * b[2 * p]
        d = a[2 * p + 1] * b[2 * p + 1]
        g = igcd(n, d)
        if g > 1:
            n //= g
            d //= g
        if n >= LIMIT or d >= LIMIT:
            return -1
        out[2 * p] = n
        out[2 * p + 1] = d
    return 0


cdef int _scale(i64 sn, i64 sd, i64* a, i64* out, Py_ssize_t npts) noexcept nogil:
    cdef Py_ssize_t p
    cdef i64 n, d, g
    for p in range(npts):
        n = sn * a[2 * p]
        d = sd * a[2 * p + 1]
        g = igcd(n, d)
        if g > 1:
            n //= g
            d //= g
        if n >= LIMIT or d >= LIMIT:
            return -1
        out[2 * p] = n
        out[2 * p + 1] = d
    return 0


def close_generators(gens, Py_ssize_t n_points, bint with_prod, scalars, Py_ssize_t cap):
    """Compiled twin of pure.close_generators; identical output."""
    cdef Py_ssize_t width = 2 * n_points
    cdef _Buf buf = _Buf(width)
    cdef dict seen = {}
    cdef list derivations = []
    cdef Py_ssize_t i, j, k, p
    cdef i64* row
    cdef i64* cand = <i64*> malloc(width * sizeof(i64))
    if cand == NULL:
        raise MemoryError()

    cdef Py_ssize_t n_scal = len(scalars)
    cdef i64* scal = NULL
    try:
        if n_scal:
            scal = <i64*> malloc(2 * n_scal * sizeof(i64))
            if scal == NULL:
                raise MemoryError()
            for k in range(n_scal):
                scal[2 * k] = scalars[k][0]
                scal[2 * k + 1] = scalars[k][1]

        def _add(deriv):
            key = PyBytes_FromStringAndSize(<char*> cand, width * sizeof(i64))
            if key in seen:
                return
            if buf.count + 1 > cap:
                raise CapExceeded(cap, buf.count + 1)
            seen[key] = buf.count
            memcpy(buf.push(), cand, width * sizeof(i64))
            derivations.append(deriv)

        for p in range(n_points):
            cand[2 * p] = 0
            cand[2 * p + 1] = 1
        _add(("zero",))
        for p in range(n_points):
            cand[2 * p] = 1
            cand[2 * p + 1] = 1
        _add(("one",))
        for k, g in enumerate(gens):
            for p in range(n_points):
                cand[2 * p] = g[p][0]
                cand[2 * p + 1] = g[p][1]
                if cand[2 * p] >= LIMIT or cand[2 * p + 1] >= LIMIT:
                    raise OverflowError("kernel value range exceeded")
            _add(("gen", k))

        i = 0
        while i < buf.count:
            row = buf.row(i)
            _neg(row, cand, n_points)
            _add(("neg", i))
            for j in range(i + 1):
                # rows can move on realloc inside _add; re-fetch
                if _oplus(buf.row(i), buf.row(j), cand, n_points) < 0:
                    raise OverflowError("kernel value range exceeded")
                _add(("oplus", i, j))
            if with_prod:
                for j in range(i + 1):
                    if _prod(buf.row(i), buf.row(j), cand, n_points) < 0:
                        raise OverflowError("kernel value range exceeded")
                    _add(("prod", i, j))
            for k in range(n_scal):
                if _scale(scal[2 * k], scal[2 * k + 1], buf.row(i), cand, n_points) < 0:
                    raise OverflowError("kernel value range exceeded")
                _add(("scal", k, i))
            i += 1

        elements = []
        for i in range(buf.count):
            row = buf.row(i)
            elements.append(tuple((row[2 * p], row[2 * p + 1]) for p in range(n_points)))
        return elements, derivations
    finally:
        free(cand)
        if scal != NULL:
            free(scal)
