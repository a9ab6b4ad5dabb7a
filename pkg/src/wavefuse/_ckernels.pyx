# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled periodic filter-bank kernels.

Same contracts as :mod:`wavefuse._pykernels`. Inner loops run over the
taps in ascending order to keep results bitwise identical to the numpy
fallback (the extension is built with ``-ffp-contract=off``).
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef inline Py_ssize_t _wrap(Py_ssize_t i, Py_ssize_t n) noexcept nogil:
    i = i % n
    if i < 0:
        i += n
    return i


def analyze(x, h):
    cdef const double[:, ::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[::1] hv = np.ascontiguousarray(h, dtype=np.float64)
    cdef Py_ssize_t rows = xv.shape[0], width = xv.shape[1]
    cdef Py_ssize_t half = width // 2, ntaps = hv.shape[0]
    out = np.zeros((rows, half))
    cdef double[:, ::1] yv = out
    cdef Py_ssize_t r, k, m, j
    cdef double c
    with nogil:
        for r in range(rows):
            for m in range(ntaps):
                c = hv[m]
                j = _wrap(-m, width)
                for k in range(half):
                    yv[r, k] = yv[r, k] + c * xv[r, j]
                    j += 2
                    if j >= width:
                        j -= width
    return out


def synthesize(c, d):
    cdef const double[:, ::1] cv = np.ascontiguousarray(c, dtype=np.float64)
    cdef const double[::1] dv = np.ascontiguousarray(d, dtype=np.float64)
    cdef Py_ssize_t rows = cv.shape[0], half = cv.shape[1]
    cdef Py_ssize_t width = 2 * half, ntaps = dv.shape[0]
    out = np.zeros((rows, width))
    cdef double[:, ::1] xv = out
    cdef Py_ssize_t r, n, m, j
    cdef double t
    with nogil:
        for r in range(rows):
            for m in range(ntaps):
                t = dv[m]
                # outputs n with (n + m) even read c[(n + m) / 2]
                n = m & 1
                j = _wrap((n + m) >> 1, half)
                while n < width:
                    xv[r, n] = xv[r, n] + t * cv[r, j]
                    n += 2
                    j += 1
                    if j >= half:
                        j -= half
    return out


cdef void _dilated(const double[:, ::1] src, const double[::1] hv, Py_ssize_t step,
                   double[:, ::1] dst) noexcept nogil:
    # dst[r, n] = sum_m h[m] * src[r, (n + m * step) mod W], taps in ascending order
    cdef Py_ssize_t rows = src.shape[0], width = src.shape[1], ntaps = hv.shape[0]
    cdef Py_ssize_t r, n, m, j
    cdef double c
    for r in range(rows):
        for m in range(ntaps):
            c = hv[m]
            j = _wrap(m * step, width)
            for n in range(width):
                dst[r, n] = dst[r, n] + c * src[r, j]
                j += 1
                if j == width:
                    j = 0


def atrous(x, h, Py_ssize_t dilation):
    cdef const double[:, ::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[::1] hv = np.ascontiguousarray(h, dtype=np.float64)
    out = np.zeros((xv.shape[0], xv.shape[1]))
    cdef double[:, ::1] yv = out
    with nogil:
        _dilated(xv, hv, -dilation, yv)
    return out


def atrous_adjoint(y, h, Py_ssize_t dilation):
    cdef const double[:, ::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    cdef const double[::1] hv = np.ascontiguousarray(h, dtype=np.float64)
    out = np.zeros((yv.shape[0], yv.shape[1]))
    cdef double[:, ::1] xv = out
    with nogil:
        _dilated(yv, hv, dilation, xv)
    return out


def lift53_forward(x):
    cdef const int64_t[:, ::1] xv = np.ascontiguousarray(x, dtype=np.int64)
    cdef Py_ssize_t rows = xv.shape[0], half = xv.shape[1] // 2
    low = np.empty((rows, half), dtype=np.int64)
    high = np.empty((rows, half), dtype=np.int64)
    cdef int64_t[:, ::1] lv = low
    cdef int64_t[:, ::1] hv = high
    cdef Py_ssize_t r, k
    with nogil:
        for r in range(rows):
            for k in range(half):
                hv[r, k] = xv[r, 2 * k + 1] - ((xv[r, 2 * k] + xv[r, _wrap(2 * k + 2, 2 * half)]) >> 1)
            for k in range(half):
                lv[r, k] = xv[r, 2 * k] + ((hv[r, _wrap(k - 1, half)] + hv[r, k] + 2) >> 2)
    return low, high


def lift53_inverse(low, high):
    cdef const int64_t[:, ::1] lv = np.ascontiguousarray(low, dtype=np.int64)
    cdef const int64_t[:, ::1] hv = np.ascontiguousarray(high, dtype=np.int64)
    cdef Py_ssize_t rows = lv.shape[0], half = lv.shape[1]
    out = np.empty((rows, 2 * half), dtype=np.int64)
    cdef int64_t[:, ::1] xv = out
    cdef Py_ssize_t r, k
    with nogil:
        for r in range(rows):
            for k in range(half):
                xv[r, 2 * k] = lv[r, k] - ((hv[r, _wrap(k - 1, half)] + hv[r, k] + 2) >> 2)
            for k in range(half):
                xv[r, 2 * k + 1] = hv[r, k] + ((xv[r, 2 * k] + xv[r, _wrap(2 * k + 2, 2 * half)]) >> 1)
    return out
