# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: pivoted QR, Hessenberg reduction, shifted QR eigenvalues,
winding count. Same signatures and semantics as ``_kernels_py``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, hypot, fabs

cnp.import_array()

cdef double EPS = np.finfo(float).eps


cdef inline double cabs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef inline double cabs(double complex z) nogil:
    return hypot(z.real, z.imag)


cdef inline double complex conj(double complex z) nogil:
    return z.real - 1j * z.imag


cdef inline double complex csqrt_(double complex z) nogil:
    cdef double r = cabs(z)
    cdef double re = sqrt(0.5 * (r + z.real))
    cdef double im = sqrt(0.5 * (r - z.real))
    if z.imag < 0:
        im = -im
    return re + 1j * im


def pivoted_qr(a, double tol, double floor=0.0):
    # column-major storage: every inner loop below runs down a column
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] r_arr = np.array(a, dtype=np.complex128, order="F", copy=True)
    cdef Py_ssize_t m = r_arr.shape[0], n = r_arr.shape[1]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] q_arr = np.asfortranarray(np.eye(m, dtype=np.complex128))
    cdef cnp.ndarray[cnp.intp_t, ndim=1] perm_arr = np.arange(n, dtype=np.intp)
    cdef double complex[::1, :] r = r_arr
    cdef double complex[::1, :] q = q_arr
    cdef Py_ssize_t[::1] perm = perm_arr
    cdef double complex[::1] v = np.zeros(max(m, 1), dtype=np.complex128)
    cdef double complex[::1] w = np.zeros(max(m, 1), dtype=np.complex128)
    cdef Py_ssize_t i, j, k, p, t
    cdef int rank = 0
    cdef double best, top = 0.0, s, vn
    cdef double complex x0, phase, acc, tmp, vk
    with nogil:
        for j in range(min(m, n)):
            best = -1.0
            p = j
            for k in range(j, n):
                s = 0.0
                for i in range(j, m):
                    s = s + cabs2(r[i, k])
                if s > best:
                    best = s
                    p = k
            best = sqrt(best)
            if j == 0:
                top = best
            if best == 0.0 or best <= tol * top or best <= floor:
                break
            if p != j:
                for i in range(m):
                    tmp = r[i, j]
                    r[i, j] = r[i, p]
                    r[i, p] = tmp
                t = perm[j]
                perm[j] = perm[p]
                perm[p] = t
            x0 = r[j, j]
            if cabs(x0) != 0.0:
                phase = x0 / cabs(x0)
            else:
                phase = 1.0
            vn = 0.0
            for i in range(j, m):
                v[i] = r[i, j]
            v[j] = v[j] + phase * best
            for i in range(j, m):
                vn = vn + cabs2(v[i])
            vn = sqrt(vn)
            if vn > 0.0:
                for i in range(j, m):
                    v[i] = v[i] / vn
                # r <- (e - 2 v v^*) r, one column at a time
                for k in range(j, n):
                    acc = 0.0
                    for i in range(j, m):
                        acc = acc + conj(v[i]) * r[i, k]
                    for i in range(j, m):
                        r[i, k] = r[i, k] - 2.0 * v[i] * acc
                # q <- q (e - 2 v v^*): w = q v, then rank-one update by columns
                for i in range(m):
                    w[i] = 0.0
                for k in range(j, m):
                    vk = v[k]
                    for i in range(m):
                        w[i] = w[i] + q[i, k] * vk
                for k in range(j, m):
                    vk = 2.0 * conj(v[k])
                    for i in range(m):
                        q[i, k] = q[i, k] - w[i] * vk
            for i in range(j + 1, m):
                r[i, j] = 0.0
            rank += 1
    return q_arr, r_arr, perm_arr, rank


def hessenberg(a):
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] h_arr = np.array(a, dtype=np.complex128, order="F", copy=True)
    cdef double complex[::1, :] h = h_arr
    cdef Py_ssize_t n = h_arr.shape[0]
    cdef double complex[::1] v = np.zeros(max(n, 1), dtype=np.complex128)
    cdef double complex[::1] w = np.zeros(max(n, 1), dtype=np.complex128)
    cdef Py_ssize_t i, j, k
    cdef double alpha, vn
    cdef double complex x0, phase, acc, vk
    with nogil:
        for j in range(n - 2):
            alpha = 0.0
            for i in range(j + 1, n):
                alpha = alpha + cabs2(h[i, j])
            alpha = sqrt(alpha)
            if alpha == 0.0:
                continue
            x0 = h[j + 1, j]
            if cabs(x0) != 0.0:
                phase = x0 / cabs(x0)
            else:
                phase = 1.0
            for i in range(j + 1, n):
                v[i] = h[i, j]
            v[j + 1] = v[j + 1] + phase * alpha
            vn = 0.0
            for i in range(j + 1, n):
                vn = vn + cabs2(v[i])
            vn = sqrt(vn)
            for i in range(j + 1, n):
                v[i] = v[i] / vn
            for k in range(j, n):
                acc = 0.0
                for i in range(j + 1, n):
                    acc = acc + conj(v[i]) * h[i, k]
                for i in range(j + 1, n):
                    h[i, k] = h[i, k] - 2.0 * v[i] * acc
            for i in range(n):
                w[i] = 0.0
            for k in range(j + 1, n):
                vk = v[k]
                for i in range(n):
                    w[i] = w[i] + h[i, k] * vk
            for k in range(j + 1, n):
                vk = 2.0 * conj(v[k])
                for i in range(n):
                    h[i, k] = h[i, k] - w[i] * vk
            for i in range(j + 2, n):
                h[i, j] = 0.0
    return h_arr


cdef inline double complex wilkinson(double complex a, double complex b,
                                     double complex c, double complex d) nogil:
    cdef double complex half = 0.5 * (a - d)
    cdef double complex disc = csqrt_(half * half + b * c)
    cdef double complex mu1 = d, mu2 = d
    if half + disc != 0:
        mu1 = d - b * c / (half + disc)
    if half - disc != 0:
        mu2 = d - b * c / (half - disc)
    if cabs(mu1 - d) <= cabs(mu2 - d):
        return mu1
    return mu2


def hessenberg_eigvals(h_in, int maxiter):
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] h_arr = np.array(h_in, dtype=np.complex128, order="C", copy=True)
    cdef double complex[:, ::1] h = h_arr
    cdef Py_ssize_t n = h_arr.shape[0]
    cdef double complex[:, ::1] rot = np.zeros((max(n, 1), 2), dtype=np.complex128)
    cdef double[::1] rnorm = np.zeros(max(n, 1))
    cdef Py_ssize_t hi = n - 1, lo, k, i, top
    cdef int its = 0, total = 0, failed = 0
    cdef double s, rr
    cdef double complex mu, x, y, u, w
    with nogil:
        while hi > 0:
            lo = hi
            while lo > 0:
                s = cabs(h[lo, lo]) + cabs(h[lo - 1, lo - 1])
                if s == 0.0:
                    for i in range(hi + 1):
                        for k in range(hi + 1):
                            s = s + cabs(h[i, k])
                if cabs(h[lo, lo - 1]) <= EPS * s:
                    h[lo, lo - 1] = 0.0
                    break
                lo -= 1
            if lo == hi:
                hi -= 1
                its = 0
                continue
            if its >= maxiter:
                failed = 1
                break
            its += 1
            total += 1
            if its % 11 == 10:
                mu = h[hi, hi] + 0.75 * cabs(h[hi, hi - 1])
            else:
                mu = wilkinson(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
            for k in range(lo, hi + 1):
                h[k, k] = h[k, k] - mu
            for k in range(lo, hi):
                x = h[k, k]
                y = h[k + 1, k]
                rr = hypot(cabs(x), cabs(y))
                rnorm[k] = rr
                if rr == 0.0:
                    continue
                rot[k, 0] = x
                rot[k, 1] = y
                for i in range(k, hi + 1):
                    u = h[k, i]
                    w = h[k + 1, i]
                    h[k, i] = (conj(x) * u + conj(y) * w) / rr
                    h[k + 1, i] = (-y * u + x * w) / rr
            for k in range(lo, hi):
                rr = rnorm[k]
                if rr == 0.0:
                    continue
                x = rot[k, 0]
                y = rot[k, 1]
                top = k + 2
                if top > hi:
                    top = hi
                for i in range(lo, top + 1):
                    u = h[i, k]
                    w = h[i, k + 1]
                    h[i, k] = (u * x + w * y) / rr
                    h[i, k + 1] = (-u * conj(y) + w * conj(x)) / rr
            for k in range(lo, hi + 1):
                h[k, k] = h[k, k] + mu
    if failed:
        return np.diag(h_arr).copy(), -1
    return np.diag(h_arr).copy(), total


def winding_number(re_in, im_in):
    cdef double[::1] re = np.ascontiguousarray(re_in, dtype=np.float64)
    cdef double[::1] im = np.ascontiguousarray(im_in, dtype=np.float64)
    cdef Py_ssize_t n = re.shape[0], i, prev
    cdef long count = 0
    cdef double x0, y0, x1, y1, xc
    with nogil:
        for i in range(n):
            prev = i - 1 if i > 0 else n - 1
            x0 = re[prev]
            y0 = im[prev]
            x1 = re[i]
            y1 = im[i]
            if (y0 < 0.0) != (y1 < 0.0):
                xc = x0 - y0 * (x1 - x0) / (y1 - y0)
                if xc > 0.0:
                    if y1 >= 0.0:
                        count += 1
                    else:
                        count -= 1
    return int(count)
