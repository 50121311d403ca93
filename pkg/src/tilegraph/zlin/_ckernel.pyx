# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled diagonalisation kernel on int64 arrays.

Mirrors ``_pykernel.diagonalize`` exactly.  Every multiply and add is
overflow checked; on overflow ``OverflowError`` is raised and the caller
reruns the exact bigint kernel from the original input.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, INT64_MIN

ctypedef int64_t i64

cdef extern from *:
    """
    #include <stdint.h>
    static inline int tg_axpy(int64_t *dst, int64_t f, int64_t x) {
        int64_t prod;
        if (__builtin_mul_overflow(f, x, &prod)) return 1;
        if (__builtin_add_overflow(*dst, prod, dst)) return 1;
        return 0;
    }
    """
    int tg_axpy(i64 *dst, i64 f, i64 x) noexcept nogil


cdef inline i64 _abs(i64 x) noexcept nogil:
    return -x if x < 0 else x


cdef inline i64 _floordiv(i64 a, i64 p) noexcept nogil:
    # p > 0
    cdef i64 q = a / p
    if (a % p != 0) and (a < 0):
        q -= 1
    return q


cdef int _axpy_row(i64[:, ::1] mat, Py_ssize_t i, Py_ssize_t k, i64 f) noexcept nogil:
    cdef Py_ssize_t j
    cdef i64 x
    for j in range(mat.shape[1]):
        x = mat[k, j]
        if x != 0:
            if tg_axpy(&mat[i, j], f, x):
                return 1
    return 0


cdef void _swap_rows(i64[:, ::1] mat, Py_ssize_t a, Py_ssize_t b) noexcept nogil:
    cdef Py_ssize_t j
    cdef i64 t
    if a == b:
        return
    for j in range(mat.shape[1]):
        t = mat[a, j]
        mat[a, j] = mat[b, j]
        mat[b, j] = t


cdef void _swap_cols(i64[:, ::1] mat, Py_ssize_t a, Py_ssize_t b) noexcept nogil:
    cdef Py_ssize_t i
    cdef i64 t
    if a == b:
        return
    for i in range(mat.shape[0]):
        t = mat[i, a]
        mat[i, a] = mat[i, b]
        mat[i, b] = t


cdef int _negate_row(i64[:, ::1] mat, Py_ssize_t k) noexcept nogil:
    cdef Py_ssize_t j
    for j in range(mat.shape[1]):
        if mat[k, j] == INT64_MIN:
            return 1
        mat[k, j] = -mat[k, j]
    return 0


def diagonalize(i64[:, ::1] A, row_targets=None, col_targets=None, inv_targets=None):
    """In-place diagonalisation of ``A``; see ``_pykernel.diagonalize``."""
    cdef Py_ssize_t m = A.shape[0]
    cdef Py_ssize_t n = A.shape[1]
    cdef i64[:, ::1] empty = np.zeros((1, 1), dtype=np.int64)
    cdef i64[:, ::1] RT = row_targets if row_targets is not None else empty
    cdef i64[:, ::1] CT = col_targets if col_targets is not None else empty
    cdef i64[:, ::1] IT = inv_targets if inv_targets is not None else empty
    cdef bint has_rt = row_targets is not None
    cdef bint has_ct = col_targets is not None
    cdef bint has_it = inv_targets is not None
    cdef cnp.intp_t[::1] nz = np.zeros(max(n, 1), dtype=np.intp)
    cdef cnp.intp_t[::1] colrows = np.zeros(max(m, 1), dtype=np.intp)
    cdef Py_ssize_t k = 0, i, j, t, bi, bj, nnz, ncr
    cdef i64 best, x, ax, p, a, f
    cdef bint clean
    cdef int err = 0
    diag = []
    with nogil:
        while k < m and k < n:
            best = 0
            bi = -1
            bj = -1
            for i in range(k, m):
                for j in range(k, n):
                    x = A[i, j]
                    if x != 0:
                        ax = _abs(x)
                        if ax < 0:
                            err = 1
                            break
                        if best == 0 or ax < best:
                            best = ax
                            bi = i
                            bj = j
                            if ax == 1:
                                break
                if best == 1 or err:
                    break
            if err or best == 0:
                break
            _swap_rows(A, bi, k)
            if has_rt:
                _swap_rows(RT, bi, k)
            _swap_cols(A, bj, k)
            if has_ct:
                _swap_rows(CT, bj, k)
            if has_it:
                _swap_rows(IT, bj, k)
            while True:
                if A[k, k] < 0:
                    if _negate_row(A, k):
                        err = 1
                        break
                    if has_rt and _negate_row(RT, k):
                        err = 1
                        break
                p = A[k, k]
                clean = True
                nnz = 0
                for j in range(k, n):
                    if A[k, j] != 0:
                        nz[nnz] = j
                        nnz += 1
                for i in range(k + 1, m):
                    a = A[i, k]
                    if a != 0:
                        f = _floordiv(a, p)
                        if f != 0:
                            for t in range(nnz):
                                j = nz[t]
                                if tg_axpy(&A[i, j], -f, A[k, j]):
                                    err = 1
                                    break
                            if err:
                                break
                            if has_rt and _axpy_row(RT, i, k, -f):
                                err = 1
                                break
                        if A[i, k] != 0:
                            clean = False
                if err:
                    break
                ncr = 0
                for i in range(k, m):
                    if A[i, k] != 0:
                        colrows[ncr] = i
                        ncr += 1
                for j in range(k + 1, n):
                    a = A[k, j]
                    if a != 0:
                        f = _floordiv(a, p)
                        if f != 0:
                            for t in range(ncr):
                                i = colrows[t]
                                if tg_axpy(&A[i, j], -f, A[i, k]):
                                    err = 1
                                    break
                            if err:
                                break
                            if has_ct and _axpy_row(CT, j, k, -f):
                                err = 1
                                break
                            if has_it and _axpy_row(IT, k, j, f):
                                err = 1
                                break
                        if A[k, j] != 0:
                            clean = False
                if err or clean:
                    break
                best = 0
                bi = -1
                bj = -1
                for i in range(k + 1, m):
                    x = _abs(A[i, k])
                    if x != 0 and (best == 0 or x < best):
                        best = x
                        bi = i
                        bj = k
                for j in range(k + 1, n):
                    x = _abs(A[k, j])
                    if x != 0 and (best == 0 or x < best):
                        best = x
                        bi = k
                        bj = j
                _swap_rows(A, bi, k)
                if has_rt:
                    _swap_rows(RT, bi, k)
                _swap_cols(A, bj, k)
                if has_ct:
                    _swap_rows(CT, bj, k)
                if has_it:
                    _swap_rows(IT, bj, k)
            if err:
                break
            with gil:
                diag.append(int(A[k, k]))
            k += 1
    if err:
        raise OverflowError("int64 overflow during diagonalisation")
    return diag
