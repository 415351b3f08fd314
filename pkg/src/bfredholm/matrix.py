"""Dense complex linear algebra with explicit rank control.

Matrices are plain ``numpy`` complex128 arrays; :func:`as_matrix` is the
single validation gate. The Drazin inverse is built from the core-nilpotent
splitting ``C^n = R(a^k) + N(a^k)``, which also yields the two spectral
idempotents.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import ConvergenceError, InputError, NumericalInstabilityError

DEFAULT_TOL = 1e-10
VERIFY_TOL = 1e-8


def as_matrix(m, *, square=False, name="matrix"):
    """Validate and convert to a 2-D complex128 array (always a copy)."""
    try:
        arr = np.array(m, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name}: not a numeric array ({exc})") from None
    if arr.ndim != 2:
        raise InputError(f"{name}: expected 2-D array, got ndim={arr.ndim}")
    if arr.size == 0:
        raise InputError(f"{name}: empty matrix")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name}: non-finite entries")
    if square and arr.shape[0] != arr.shape[1]:
        raise InputError(f"{name}: expected square matrix, got shape {arr.shape}")
    return arr


def matrix_to_json(m):
    m = np.asarray(m, dtype=np.complex128)
    flat = m.ravel()
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "re": [float(x) for x in flat.real],
        "im": [float(x) for x in flat.imag],
    }


def matrix_from_json(obj):
    """Inverse of :func:`matrix_to_json`; ``im`` may be omitted for real data."""
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", [0.0] * len(re)), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad matrix object: {exc}") from None
    if re.shape != (rows * cols,) or im.shape != (rows * cols,):
        raise InputError(f"matrix entries length must be rows*cols = {rows * cols}")
    return as_matrix((re + 1j * im).reshape(rows, cols))


def opnorm(m):
    """Spectral norm (largest singular value); 0 for empty input."""
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def _rel(resid, ref):
    r = opnorm(resid)
    return r / ref if ref > 0 else r


@dataclass(frozen=True)
class RankDecision:
    """Outcome of a numerical rank decision.

    ``null_basis`` and ``range_basis`` hold basis vectors as columns and are
    orthonormal.
    """

    tolerance: float
    rank: int
    null_basis: np.ndarray
    range_basis: np.ndarray

    @property
    def nullity(self):
        return self.null_basis.shape[1]


def numerical_rank(m, tol=DEFAULT_TOL, scale=0.0):
    """Rank, null basis and range basis by column-pivoted Householder QR.

    A pivot survives when its column norm exceeds ``tol`` times the larger
    of the first (largest) pivot and ``scale``. Pass ``scale`` when ``m`` is
    derived from a bigger matrix (powers, products) whose rounding noise
    would otherwise look like rank.
    """
    if tol < 0:
        raise InputError("tol must be non-negative")
    a = as_matrix(m)
    rows, cols = a.shape
    q, r, perm, rank = kernels.pivoted_qr(a, float(tol), float(tol * scale))
    range_basis = q[:, :rank].copy()
    if rank == cols:
        null = np.zeros((cols, 0), dtype=np.complex128)
    else:
        r11 = r[:rank, :rank]
        r12 = r[:rank, rank:]
        x = np.linalg.solve(r11, -r12) if rank else np.zeros((0, cols - rank))
        v = np.vstack([x, np.eye(cols - rank)])
        basis = np.zeros_like(v)
        basis[perm] = v
        null, _ = np.linalg.qr(basis)
    return RankDecision(float(tol), int(rank), null, range_basis)


@dataclass(frozen=True)
class Splitting:
    """Core-nilpotent splitting of a square matrix.

    In the basis ``basis = [range(a^k) | null(a^k)]`` the matrix is
    ``blockdiag(core, nil)``; ``coupling`` records the size of the
    off-diagonal blocks relative to ``|a|``.
    """

    power: int
    rank: int
    basis: np.ndarray
    core: np.ndarray
    nil: np.ndarray
    coupling: float
    ok: bool


def core_nilpotent_split(a, tol=DEFAULT_TOL):
    """Find the smallest ``k`` with ``rank(a^k) == rank(a^(k+1))`` and split.

    ``ok`` is False when the combined basis is numerically singular; the
    caller decides whether that is fatal.
    """
    a = as_matrix(a, square=True, name="a")
    n = a.shape[0]
    cur = np.eye(n, dtype=np.complex128)
    dec = numerical_rank(cur, tol)
    na = opnorm(a)
    for k in range(n + 1):
        nxt = cur @ a
        dec_next = numerical_rank(nxt, tol, scale=na ** (k + 1))
        if dec_next.rank == dec.rank:
            break
        cur, dec = nxt, dec_next
    else:  # pragma: no cover - ranks are non-increasing and bounded by n
        raise AssertionError("rank of powers failed to stabilise within n steps")

    r = dec.rank
    basis = np.hstack([dec.range_basis, dec.null_basis])
    ok = numerical_rank(basis, tol).rank == n
    if not ok:
        empty = np.zeros((0, 0), dtype=np.complex128)
        return Splitting(k, r, basis, empty, empty, np.inf, False)
    m = np.linalg.solve(basis, a @ basis)
    scale = max(opnorm(a), np.finfo(float).tiny)
    coupling = max(opnorm(m[:r, r:]) if r < n else 0.0,
                   opnorm(m[r:, :r]) if r else 0.0) / scale
    return Splitting(k, r, basis, m[:r, :r], m[r:, r:], coupling, True)


@dataclass(frozen=True)
class DrazinResult:
    inverse: np.ndarray
    drazin_index: int
    p: np.ndarray
    q: np.ndarray
    residuals: dict = field(default_factory=dict)


def drazin_residuals(a, b, k, p=None, q=None):
    """Relative residuals of the Drazin axioms (and idempotent identities)."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    n = a.shape[0]
    eye = np.eye(n)
    na, nb = opnorm(a), opnorm(b)
    ak = np.linalg.matrix_power(a, k)
    ak1 = ak @ a
    res = {
        "bab-b": _rel(b @ a @ b - b, nb * na * nb + nb),
        "ab-ba": _rel(a @ b - b @ a, 2 * na * nb),
        # normalised by |a|^k: a computed power carries noise of that size
        "a^(k+1)b-a^k": _rel(ak1 @ b - ak, na ** k * (na * nb + 1.0)),
    }
    if p is not None and q is not None:
        np_, nq = opnorm(p), opnorm(q)
        res.update({
            "p^2-p": _rel(p @ p - p, np_ * np_ + np_),
            "q^2-q": _rel(q @ q - q, nq * nq + nq),
            "p+q-e": _rel(p + q - eye, 1.0 + np_ + nq),
            "pq": _rel(p @ q, np_ * nq),
            "qp": _rel(q @ p, np_ * nq),
            "p-ab": _rel(p - a @ b, np_ + na * nb),
        })
    return res


def drazin_inverse(a, tol=DEFAULT_TOL, verify_tol=VERIFY_TOL):
    """Drazin inverse via the core-nilpotent splitting.

    Parameters
    ----------
    a : array_like, square
    tol : float
        Relative rank threshold used for every rank decision.
    verify_tol : float
        Bound on each relative residual in :func:`drazin_residuals`.

    Returns
    -------
    DrazinResult
        ``inverse`` b, ``drazin_index`` k, idempotent ``p`` onto ``R(a^k)``
        along ``N(a^k)`` and ``q = e - p``.

    Raises
    ------
    NumericalInstabilityError
        If the splitting basis is singular or any residual exceeds
        ``verify_tol``; the residuals are attached.
    """
    a = as_matrix(a, square=True, name="a")
    n = a.shape[0]
    sp = core_nilpotent_split(a, tol)
    if not sp.ok:
        raise NumericalInstabilityError(
            "range and null space of a^k are not complementary at tolerance",
            {"splitting": np.inf},
        )
    r = sp.rank
    basis = sp.basis
    binv = np.linalg.inv(basis)
    mid = np.zeros((n, n), dtype=np.complex128)
    proj = np.zeros((n, n), dtype=np.complex128)
    if r:
        mid[:r, :r] = np.linalg.inv(sp.core)
        proj[:r, :r] = np.eye(r)
    b = basis @ mid @ binv
    p = basis @ proj @ binv
    q = basis @ (np.eye(n) - proj) @ binv
    res = drazin_residuals(a, b, sp.power, p, q)
    res["coupling"] = sp.coupling
    bad = {key: v for key, v in res.items() if not v <= verify_tol}
    if bad:
        raise NumericalInstabilityError(
            f"Drazin verification failed: {sorted(bad)}", res)
    return DrazinResult(b, sp.power, p, q, res)


@dataclass(frozen=True)
class EigenMultiset:
    """Eigenvalues with algebraic multiplicities, sorted by (re, im)."""

    pairs: tuple

    @property
    def values(self):
        return np.array([lam for lam, _ in self.pairs], dtype=np.complex128)

    @property
    def multiplicities(self):
        return [m for _, m in self.pairs]

    @property
    def dimension(self):
        return sum(self.multiplicities)

    def weighted_sum(self):
        return complex(sum(m * lam for lam, m in self.pairs))

    def __len__(self):
        return len(self.pairs)


def cluster_eigenvalues(eigs, scale, tol=DEFAULT_TOL, k_max=None):
    """Merge numerically split eigenvalues.

    A group of ``m`` computed eigenvalues is accepted as one eigenvalue of
    multiplicity ``m`` when all lie within ``scale * tol**(1/min(m, k_max))``
    of their mean, the spread expected from a defective eigenvalue with a
    Jordan chain of length ``m``. Candidate groups are the ``m`` nearest
    neighbours of each remaining point; the largest valid group (then the
    tightest) is taken first, until no group of two or more is valid.
    """
    pts = np.array([complex(e) for e in eigs], dtype=np.complex128)
    if pts.size == 0:
        return ()
    k_max = k_max or pts.size
    sizes = np.arange(1, pts.size + 1)
    radii = scale * tol ** (1.0 / np.minimum(sizes, k_max))
    pairs = []
    left = pts
    while left.size > 1:
        n = left.size
        best = None
        for i in range(n):
            order = np.argsort(np.abs(left - left[i]), kind="stable")
            near = left[order]
            means = np.cumsum(near) / sizes[:n]
            dev = np.abs(near[None, :] - means[:, None])
            dev[np.triu_indices(n, 1)] = 0.0
            spread = dev.max(axis=1)
            ok = np.nonzero(spread[1:] <= radii[1:n])[0]
            if ok.size:
                m = int(ok[-1]) + 2
                key = (m, -spread[m - 1])
                if best is None or key > best[0]:
                    best = (key, order[:m])
        if best is None:
            break
        idx = best[1]
        pairs.append((complex(np.mean(left[idx])), len(idx)))
        left = np.delete(left, idx)
    pairs.extend((complex(z), 1) for z in left)
    return tuple(sorted(pairs, key=lambda t: (round(t[0].real, 12), round(t[0].imag, 12))))


def eigenvalues(a, maxiter=100):
    """All eigenvalues (with repetition) by Hessenberg reduction + shifted QR."""
    a = as_matrix(a, square=True, name="a")
    h = kernels.hessenberg(a)
    vals, its = kernels.hessenberg_eigvals(h, int(maxiter))
    if its < 0:
        sub = np.abs(np.diag(h, -1)) if a.shape[0] > 1 else np.zeros(0)
        raise ConvergenceError(
            "shifted QR iteration did not converge",
            {"maxiter": maxiter, "dimension": a.shape[0],
             "max_subdiagonal_input": float(sub.max(initial=0.0)),
             "backend": kernels.BACKEND},
        )
    return vals


def eigen_multiset(a, tol=DEFAULT_TOL, k_max=None, maxiter=100):
    """Eigenvalues with algebraic multiplicities (see :func:`cluster_eigenvalues`)."""
    a = as_matrix(a, square=True, name="a")
    vals = eigenvalues(a, maxiter)
    scale = max(float(np.linalg.norm(a)), np.finfo(float).tiny)
    return EigenMultiset(cluster_eigenvalues(vals, scale, tol, k_max))


def poly_eval(a, coeffs):
    """Horner evaluation of ``sum(c_i a^i)``; ``coeffs[0]`` multiplies the identity."""
    a = as_matrix(a, square=True, name="a")
    n = a.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    out = np.zeros((n, n), dtype=np.complex128)
    for c in reversed(list(coeffs)):
        out = out @ a + complex(c) * eye
    return out
