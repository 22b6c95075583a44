# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_fallback.py``.

Coefficients and moduli must be below 2**31 so that products fit in 64 bits;
``lamplight.kernels`` routes larger moduli to the Python fallback.
"""

from libc.stdlib cimport malloc, free


cdef long long* _to_c(seq, Py_ssize_t size) except NULL:
    cdef long long* buf = <long long*> malloc(max(size, 1) * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(size):
        buf[i] = seq[i]
    return buf


def cauchy_mod(a, b, long long modulus):
    cdef Py_ssize_t size = len(a)
    cdef long long* ca = _to_c(a, size)
    cdef long long* cb = _to_c(b, size)
    cdef long long* out = <long long*> malloc(max(size, 1) * sizeof(long long))
    cdef Py_ssize_t i, j
    cdef long long ai
    try:
        for i in range(size):
            out[i] = 0
        for i in range(size):
            ai = ca[i]
            if ai == 0:
                continue
            for j in range(size - i):
                out[i + j] = (out[i + j] + ai * cb[j]) % modulus
        return [out[i] for i in range(size)]
    finally:
        free(ca)
        free(cb)
        free(out)


def inverse_mod(a, long long modulus, long long a0_inv):
    cdef Py_ssize_t size = len(a)
    cdef long long* ca = _to_c(a, size)
    cdef long long* b = <long long*> malloc(max(size, 1) * sizeof(long long))
    cdef Py_ssize_t i, k
    cdef long long acc
    try:
        b[0] = a0_inv % modulus
        for k in range(1, size):
            acc = 0
            for i in range(1, k + 1):
                acc = (acc + ca[i] * b[k - i]) % modulus
            acc = (modulus - (a0_inv * acc) % modulus) % modulus
            b[k] = acc
        return [b[i] for i in range(size)]
    finally:
        free(ca)
        free(b)


def transduce_flat(transition, output, long long modulus, long long state, word):
    cdef Py_ssize_t size = len(word)
    cdef Py_ssize_t cells = len(transition)
    cdef long long* ct = _to_c(transition, cells)
    cdef long long* co = _to_c(output, cells)
    cdef long long* w = _to_c(word, size)
    cdef Py_ssize_t i
    cdef long long idx
    try:
        for i in range(size):
            idx = state * modulus + w[i]
            w[i] = co[idx]
            state = ct[idx]
        return state, [w[i] for i in range(size)]
    finally:
        free(ct)
        free(co)
        free(w)
