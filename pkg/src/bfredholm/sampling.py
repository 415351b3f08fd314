"""Seeded random generators for property suites.

Everything takes a ``numpy.random.Generator`` so suites are reproducible
from a single seed.
"""

import numpy as np


def complex_gaussian(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def well_conditioned(rng, n, spread=4.0):
    """Random similarity with condition number at most ``spread``."""
    u, _ = np.linalg.qr(complex_gaussian(rng, (n, n)))
    v, _ = np.linalg.qr(complex_gaussian(rng, (n, n)))
    s = np.exp(rng.uniform(0.0, np.log(spread), n))
    return u @ np.diag(s) @ v.conj().T


def nilpotent(rng, n, index=None):
    """Random nilpotent matrix with nilpotency index ``index`` (default random)."""
    if n == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    index = index or int(rng.integers(1, n + 1))
    sizes = [index]
    while sum(sizes) < n:
        sizes.append(int(rng.integers(1, min(index, n - sum(sizes)) + 1)))
    jordan = np.zeros((n, n), dtype=np.complex128)
    pos = 0
    for s in sizes:
        for i in range(s - 1):
            jordan[pos + i, pos + i + 1] = 1.0
        pos += s
    sim = well_conditioned(rng, n)
    return sim @ jordan @ np.linalg.inv(sim)


def invertible_core(rng, n, low=0.5, high=2.0):
    """Random matrix whose eigenvalues have modulus in ``[low, high]``."""
    if n == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    mod = rng.uniform(low, high, n)
    arg = rng.uniform(0, 2 * np.pi, n)
    t = np.diag(mod * np.exp(1j * arg)) + np.triu(complex_gaussian(rng, (n, n)), 1) * 0.5
    sim = well_conditioned(rng, n)
    return sim @ t @ np.linalg.inv(sim)


def drazin_matrix(rng, n, core_dim=None, nil_index=None):
    """``S blockdiag(C, N) S^-1`` with C invertible and N nilpotent."""
    r = int(rng.integers(0, n + 1)) if core_dim is None else core_dim
    a = np.zeros((n, n), dtype=np.complex128)
    a[:r, :r] = invertible_core(rng, r)
    a[r:, r:] = nilpotent(rng, n - r, nil_index)
    sim = well_conditioned(rng, n)
    return sim @ a @ np.linalg.inv(sim)


def random_square(rng, n):
    """Mixture used by the Drazin corpus: generic, structured, rank-deficient."""
    kind = rng.integers(0, 3)
    if kind == 0:
        return complex_gaussian(rng, (n, n))
    if kind == 1:
        return drazin_matrix(rng, n)
    r = int(rng.integers(0, n))
    return complex_gaussian(rng, (n, r)) @ complex_gaussian(rng, (r, n))


def coprime_poly_pair(rng, roots_pool, max_deg=2):
    """Two monic polynomials (ascending coefficients) with disjoint root sets."""
    pool = list(roots_pool)
    rng.shuffle(pool)
    da = int(rng.integers(1, max_deg + 1))
    db = int(rng.integers(1, max_deg + 1))
    ra, rb = pool[:da], pool[da:da + db]
    return np.poly(ra)[::-1].astype(complex), np.poly(rb)[::-1].astype(complex)


def bezout(p, q):
    """Polynomials ``u, v`` with ``p u + q v = 1`` (ascending coefficients).

    Solved through the Sylvester system; ``p`` and ``q`` must be coprime.
    """
    p = np.trim_zeros(np.asarray(p, dtype=complex), "b")
    q = np.trim_zeros(np.asarray(q, dtype=complex), "b")
    dp, dq = len(p) - 1, len(q) - 1
    size = dp + dq
    if size == 0:
        return np.array([1.0 / p[0]]), np.array([0j])
    sylv = np.zeros((size, size), dtype=complex)
    for j in range(dq):
        sylv[j:j + dp + 1, j] = p
    for j in range(dp):
        sylv[j:j + dq + 1, dq + j] = q
    rhs = np.zeros(size, dtype=complex)
    rhs[0] = 1.0
    sol = np.linalg.solve(sylv, rhs)
    return sol[:dq], sol[dq:]
