# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled int64 kernels for truncated series arithmetic.

Both kernels raise OverflowError instead of wrapping; the caller retries
on the arbitrary-precision path.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef long long i64

cdef extern from *:
    """
    static inline int okr_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int okr_add_ovf(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    """
    bint okr_mul_ovf(i64 a, i64 b, i64* r) nogil
    bint okr_add_ovf(i64 a, i64 b, i64* r) nogil


cdef void _plane_boxes(const i64[:, :, ::1] x, Py_ssize_t[:, ::1] box) noexcept nogil:
    # box[i] = (zlo, zhi, alo, ahi), half-open; zlo == zhi marks an empty plane
    cdef Py_ssize_t i, m, j
    cdef Py_ssize_t nz = x.shape[1], na = x.shape[2]
    for i in range(x.shape[0]):
        box[i, 0] = nz
        box[i, 1] = 0
        box[i, 2] = na
        box[i, 3] = 0
        for m in range(nz):
            for j in range(na):
                if x[i, m, j] != 0:
                    if m < box[i, 0]:
                        box[i, 0] = m
                    if m + 1 > box[i, 1]:
                        box[i, 1] = m + 1
                    if j < box[i, 2]:
                        box[i, 2] = j
                    if j + 1 > box[i, 3]:
                        box[i, 3] = j + 1
        if box[i, 1] == 0:
            box[i, 0] = 0


def conv3(cnp.ndarray a_arr, cnp.ndarray b_arr, Py_ssize_t length):
    """Truncated Cauchy product over q with full convolution in z and a."""
    cdef const i64[:, :, ::1] a = np.ascontiguousarray(a_arr, dtype=np.int64)
    cdef const i64[:, :, ::1] b = np.ascontiguousarray(b_arr, dtype=np.int64)
    cdef Py_ssize_t nz = a.shape[1] + b.shape[1] - 1
    cdef Py_ssize_t na = a.shape[2] + b.shape[2] - 1
    out_arr = np.zeros((length, nz, na), dtype=np.int64)
    cdef i64[:, :, ::1] c = out_arr
    cdef Py_ssize_t[:, ::1] bbox = np.zeros((b.shape[0], 4), dtype=np.intp)
    _plane_boxes(b, bbox)
    cdef Py_ssize_t i, k, m1, j1, m2, j2, la, lb
    cdef i64 v, w, prod, acc
    cdef bint bad = False
    la = min(a.shape[0], length)
    with nogil:
        for i in range(la):
            lb = min(b.shape[0], length - i)
            for m1 in range(a.shape[1]):
                for j1 in range(a.shape[2]):
                    v = a[i, m1, j1]
                    if v == 0:
                        continue
                    for k in range(lb):
                        if bbox[k, 1] == 0:
                            continue
                        for m2 in range(bbox[k, 0], bbox[k, 1]):
                            for j2 in range(bbox[k, 2], bbox[k, 3]):
                                w = b[k, m2, j2]
                                if w == 0:
                                    continue
                                if okr_mul_ovf(v, w, &prod):
                                    bad = True
                                    break
                                if okr_add_ovf(c[i + k, m1 + m2, j1 + j2], prod, &acc):
                                    bad = True
                                    break
                                c[i + k, m1 + m2, j1 + j2] = acc
                            if bad:
                                break
                        if bad:
                            break
                    if bad:
                        break
                if bad:
                    break
            if bad:
                break
    if bad:
        raise OverflowError("int64 overflow in conv3")
    return out_arr


def geom(cnp.ndarray s_arr, i64 coef, Py_ssize_t dq, Py_ssize_t dz, Py_ssize_t da):
    """Solve t = s + coef * shift(t) for t, the shift being (dq, dz, da)."""
    if dq < 1:
        raise ValueError("dq must be positive")
    out_arr = np.array(s_arr, dtype=np.int64, order="C", copy=True)
    cdef i64[:, :, ::1] t = out_arr
    cdef Py_ssize_t n, m, j, sm, sj
    cdef Py_ssize_t nz = t.shape[1], na = t.shape[2]
    cdef i64 prod, acc, w
    cdef bint bad = False
    with nogil:
        for n in range(dq, t.shape[0]):
            for m in range(nz):
                sm = m - dz
                if sm < 0 or sm >= nz:
                    continue
                for j in range(na):
                    sj = j - da
                    if sj < 0 or sj >= na:
                        continue
                    w = t[n - dq, sm, sj]
                    if w == 0:
                        continue
                    if okr_mul_ovf(coef, w, &prod) or okr_add_ovf(t[n, m, j], prod, &acc):
                        bad = True
                        break
                    t[n, m, j] = acc
                if bad:
                    break
            if bad:
                break
    if bad:
        raise OverflowError("int64 overflow in geom")
    return out_arr
