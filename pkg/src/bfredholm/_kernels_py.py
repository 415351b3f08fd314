"""Pure-Python (numpy) implementations of the hot kernels.

These mirror ``_kernels.pyx`` function for function and are used when the
compiled extension is unavailable or ``BF_PURE_PYTHON=1`` is set.
"""

import numpy as np

EPS = np.finfo(float).eps


def pivoted_qr(a, tol, floor=0.0):
    """Householder QR with column pivoting, stopped at the numerical rank.

    Parameters
    ----------
    a : ndarray, shape (m, n), complex128
    tol : float
        Relative threshold: elimination stops once the largest remaining
        column norm is ``<= tol * |r_00|``.
    floor : float
        Absolute threshold; columns with norm ``<= floor`` are also dropped.

    Returns
    -------
    q : ndarray (m, m)
    r : ndarray (m, n)
    perm : ndarray of int (n,)
        ``a[:, perm] == q @ r`` up to rounding.
    rank : int
    """
    r = np.array(a, dtype=np.complex128, copy=True)
    m, n = r.shape
    q = np.eye(m, dtype=np.complex128)
    perm = np.arange(n)
    rank = 0
    top = 0.0
    for j in range(min(m, n)):
        norms = np.sum(np.abs(r[j:, j:]) ** 2, axis=0)
        p = j + int(np.argmax(norms))
        best = np.sqrt(norms[p - j])
        if j == 0:
            top = best
        if best == 0.0 or best <= tol * top or best <= floor:
            break
        if p != j:
            r[:, [j, p]] = r[:, [p, j]]
            perm[[j, p]] = perm[[p, j]]
        x = r[j:, j]
        x0 = x[0]
        phase = x0 / abs(x0) if x0 != 0 else 1.0
        v = x.copy()
        v[0] += phase * best
        vn = np.linalg.norm(v)
        if vn > 0:
            v /= vn
            r[j:, j:] -= 2.0 * np.outer(v, v.conj() @ r[j:, j:])
            q[:, j:] -= 2.0 * np.outer(q[:, j:] @ v, v.conj())
        r[j + 1:, j] = 0.0
        rank += 1
    return q, r, perm, rank


def hessenberg(a):
    """Reduce a square matrix to upper Hessenberg form by Householder similarity."""
    h = np.array(a, dtype=np.complex128, copy=True)
    n = h.shape[0]
    for j in range(n - 2):
        x = h[j + 1:, j]
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        x0 = x[0]
        phase = x0 / abs(x0) if x0 != 0 else 1.0
        v = x.copy()
        v[0] += phase * alpha
        v /= np.linalg.norm(v)
        h[j + 1:, j:] -= 2.0 * np.outer(v, v.conj() @ h[j + 1:, j:])
        h[:, j + 1:] -= 2.0 * np.outer(h[:, j + 1:] @ v, v.conj())
        h[j + 2:, j] = 0.0
    return h


def _wilkinson(a, b, c, d):
    half = 0.5 * (a - d)
    disc = np.sqrt(half * half + b * c + 0j)
    mu1 = d - b * c / (half + disc) if half + disc != 0 else d
    mu2 = d - b * c / (half - disc) if half - disc != 0 else d
    return mu1 if abs(mu1 - d) <= abs(mu2 - d) else mu2


def hessenberg_eigvals(h, maxiter):
    """Eigenvalues of an upper Hessenberg matrix by shifted QR iteration.

    Returns ``(eigvals, iterations)``; ``iterations`` is ``-1`` when some
    eigenvalue did not deflate within ``maxiter`` sweeps, in which case the
    returned diagonal is the last iterate.
    """
    h = np.array(h, dtype=np.complex128, copy=True)
    n = h.shape[0]
    hi = n - 1
    its = 0
    total = 0
    while hi > 0:
        lo = hi
        while lo > 0:
            s = abs(h[lo, lo]) + abs(h[lo - 1, lo - 1])
            if s == 0.0:
                s = np.abs(h[: hi + 1, : hi + 1]).sum()
            if abs(h[lo, lo - 1]) <= EPS * s:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            hi -= 1
            its = 0
            continue
        if its >= maxiter:
            return np.diag(h).copy(), -1
        its += 1
        total += 1
        if its % 11 == 10:
            mu = h[hi, hi] + 0.75 * abs(h[hi, hi - 1])
        else:
            mu = _wilkinson(h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi])
        idx = np.arange(lo, hi + 1)
        h[idx, idx] -= mu
        rots = []
        for k in range(lo, hi):
            x = h[k, k]
            y = h[k + 1, k]
            rr = np.hypot(abs(x), abs(y))
            if rr == 0.0:
                rots.append(None)
                continue
            g = np.array([[x.conjugate(), y.conjugate()], [-y, x]]) / rr
            h[k:k + 2, k:hi + 1] = g @ h[k:k + 2, k:hi + 1]
            rots.append(g)
        for k, g in zip(range(lo, hi), rots):
            if g is None:
                continue
            top = min(k + 2, hi) + 1
            h[lo:top, k:k + 2] = h[lo:top, k:k + 2] @ g.conj().T
        h[idx, idx] += mu
    return np.diag(h).copy(), total


def winding_number(re, im):
    """Signed count of crossings of the positive real axis by a closed polyline."""
    count = 0
    n = len(re)
    for i in range(n):
        x0, y0 = re[i - 1], im[i - 1]
        x1, y1 = re[i], im[i]
        if (y0 < 0.0) != (y1 < 0.0):
            xc = x0 - y0 * (x1 - x0) / (y1 - y0)
            if xc > 0.0:
                count += 1 if y1 >= 0.0 else -1
    return count
