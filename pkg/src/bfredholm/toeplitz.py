"""Toeplitz operators ``T = T_phi + F`` with a Laurent-polynomial symbol.

On the unilateral space ``l2(N)`` the matrix of ``T_phi`` is ``T[i, j] =
c_{i-j}``; ``F`` is a finite top-left block. Modulo finite-rank operators only
the symbol matters, so Fredholmness and the index are read off the symbol
(winding number), and finite sections give an independent check.

The bilateral space ``l2(Z)`` is used for the bilateral-shift example, where
Laurent operators are realised on periodic sections (circulants) of size
``2N + 1``.
"""

from dataclasses import dataclass, field
from enum import Enum
import math

import numpy as np

from . import kernels
from .errors import (
    BoundaryAmbiguousError,
    ConvergenceError,
    DomainError,
    InputError,
)
from .matrix import (
    DEFAULT_TOL,
    as_matrix,
    cluster_eigenvalues,
    drazin_inverse,
    matrix_from_json,
    matrix_to_json,
)
from .semisimple import ClassificationReport, hausdorff

MAX_DEGREE = 32
MAX_PERTURBATION = 64
# base tolerance for re-merging split multiple roots of the symbol
ROOT_CLUSTER_TOL = 1e-12


class Space(str, Enum):
    UNILATERAL = "unilateral"
    BILATERAL = "bilateral"


@dataclass(frozen=True)
class LaurentSymbol:
    """``phi(z) = sum_d c_d z^d`` over ``|d| <= 32``; zero coefficients dropped."""

    coeffs: dict

    def __post_init__(self):
        clean = {}
        for d, c in dict(self.coeffs).items():
            d = int(d)
            c = complex(c)
            if abs(d) > MAX_DEGREE:
                raise InputError(f"degree {d} exceeds the supported bound {MAX_DEGREE}")
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise InputError("non-finite symbol coefficient")
            if c != 0:
                clean[d] = c
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @classmethod
    def monomial(cls, degree, coeff=1.0):
        return cls({degree: coeff})

    @classmethod
    def from_poly(cls, coeffs, offset=0):
        """From ascending coefficients starting at degree ``offset``."""
        return cls({offset + i: c for i, c in enumerate(coeffs)})

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def is_constant(self):
        return set(self.coeffs) <= {0}

    @property
    def min_degree(self):
        return min(self.coeffs, default=0)

    @property
    def max_degree(self):
        return max(self.coeffs, default=0)

    @property
    def upper_band(self):
        """Number of nonzero subdiagonals of the Toeplitz matrix (``max(0, max degree)``)."""
        return max(0, self.max_degree)

    @property
    def lower_band(self):
        """Number of nonzero superdiagonals (``max(0, -min degree)``)."""
        return max(0, -self.min_degree)

    @property
    def bandwidth(self):
        return max(self.upper_band, self.lower_band)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        for d, c in self.coeffs.items():
            out = out + c * z ** d
        return out

    def __add__(self, other):
        if not isinstance(other, LaurentSymbol):
            other = LaurentSymbol({0: other})
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, 0) + c
        return LaurentSymbol(out)

    def __sub__(self, other):
        if not isinstance(other, LaurentSymbol):
            other = LaurentSymbol({0: other})
        return self + other * -1

    def __mul__(self, other):
        if not isinstance(other, LaurentSymbol):
            return LaurentSymbol({d: c * other for d, c in self.coeffs.items()})
        out = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                out[d1 + d2] = out.get(d1 + d2, 0) + c1 * c2
        return LaurentSymbol(out)

    __rmul__ = __mul__

    def power(self, k):
        out = LaurentSymbol({0: 1.0})
        for _ in range(k):
            out = out * self
        return out

    def compose(self, f):
        """``f o phi`` for a polynomial ``f`` given by ascending coefficients (Horner)."""
        out = LaurentSymbol({})
        for c in reversed(list(f)):
            out = out * self + c
        return out

    def conj_reflect(self):
        """Symbol of the adjoint: ``c*_d = conj(c_{-d})``."""
        return LaurentSymbol({-d: c.conjugate() for d, c in self.coeffs.items()})

    def to_json(self):
        return {str(d): [c.real, c.imag] for d, c in self.coeffs.items()}

    @classmethod
    def from_json(cls, obj):
        try:
            return cls({int(d): complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v)
                        for d, v in obj.items()})
        except (TypeError, ValueError, IndexError, AttributeError) as exc:
            raise InputError(f"bad symbol coefficients: {exc}") from None


def _as_poly(f):
    f = np.trim_zeros(np.asarray(list(f), dtype=complex), "b")
    return f


@dataclass(frozen=True, eq=False)
class ToeplitzElement:
    symbol: LaurentSymbol
    perturbation: np.ndarray = None
    space: Space = Space.UNILATERAL

    def __post_init__(self):
        if not isinstance(self.symbol, LaurentSymbol):
            object.__setattr__(self, "symbol", LaurentSymbol(self.symbol))
        object.__setattr__(self, "space", Space(self.space))
        if self.perturbation is None or np.size(self.perturbation) == 0:
            pert = np.zeros((0, 0), dtype=np.complex128)
        else:
            pert = as_matrix(self.perturbation, square=True, name="perturbation")
            if pert.shape[0] > MAX_PERTURBATION:
                raise InputError(f"perturbation larger than {MAX_PERTURBATION}x{MAX_PERTURBATION}")
        pert.setflags(write=False)
        object.__setattr__(self, "perturbation", pert)

    @property
    def pert_size(self):
        return self.perturbation.shape[0]

    @property
    def min_section(self):
        return self.pert_size + 2 * self.symbol.bandwidth

    def section(self, rows, cols=None):
        """Top-left ``rows x cols`` block of the operator's matrix."""
        cols = rows if cols is None else cols
        i = np.arange(rows)[:, None]
        j = np.arange(cols)[None, :]
        diff = i - j
        out = np.zeros((rows, cols), dtype=np.complex128)
        for d, c in self.symbol.coeffs.items():
            out[diff == d] = c
        m = min(self.pert_size, rows, cols)
        out[:m, :m] += self.perturbation[:m, :m]
        return out

    def adjoint(self):
        return ToeplitzElement(self.symbol.conj_reflect(), self.perturbation.conj().T, self.space)

    def minus(self, lam):
        """``T - lam I``."""
        return ToeplitzElement(self.symbol - lam, self.perturbation, self.space)

    def to_json(self):
        out = {"coeffs": self.symbol.to_json(), "space": self.space.value}
        if self.pert_size:
            out["perturbation"] = matrix_to_json(self.perturbation)
        return out

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or "coeffs" not in obj:
            raise InputError("toeplitz payload needs a 'coeffs' object")
        pert = obj.get("perturbation")
        try:
            space = Space(obj.get("space", "unilateral"))
        except ValueError:
            raise InputError(f"unknown space {obj.get('space')!r}") from None
        return cls(LaurentSymbol.from_json(obj["coeffs"]),
                   matrix_from_json(pert) if pert else None, space)


def matvec_truncated(t, v, n):
    """Apply the ``n x n`` finite section of ``t`` to ``v`` (zero-padded to length ``n``)."""
    if n < t.min_section:
        raise InputError(f"section size {n} below the minimum {t.min_section}")
    v = np.asarray(v, dtype=complex).ravel()
    if v.size > n:
        raise InputError("vector longer than the section")
    w = np.zeros(n, dtype=complex)
    w[:v.size] = v
    return t.section(n) @ w


# -- winding number and index -------------------------------------------------


def symbol_roots(s, cluster_tol=ROOT_CLUSTER_TOL):
    """Zeros of ``z^P phi(z)`` (``P`` = pole order at 0) with multiplicities.

    Roots come from ``numpy.roots``; an ``m``-fold root splits by about
    ``eps**(1/m)``, so split roots are merged back with
    :func:`bfredholm.matrix.cluster_eigenvalues` at scale ``max(1, |r|)``.
    Zero roots are stripped exactly beforehand.
    """
    p0 = s.lower_band
    poly = np.zeros(s.max_degree + p0 + 1, dtype=complex)
    for d, c in s.coeffs.items():
        poly[d + p0] = c
    low = 0
    while low < poly.size and poly[low] == 0:
        low += 1
    poly = poly[low:]
    pairs = [(0j, low)] if low else []
    if poly.size > 1:
        roots = np.roots(poly[::-1])
        scale = max(1.0, float(np.abs(roots).max()))
        pairs.extend(cluster_eigenvalues(roots, scale, cluster_tol))
    return pairs, p0


def winding_index(s, tol=DEFAULT_TOL):
    """Fredholm verdict and index of ``T_phi`` on ``l2(N)``.

    Returns ``(True, index)`` with ``index = -(zeros inside the disc - pole
    order at 0)``.

    Raises
    ------
    BoundaryAmbiguousError
        If some zero satisfies ``| |z| - 1 | <= tol``.
    """
    if s.is_zero:
        raise InputError("winding number of the zero symbol is undefined")
    roots, pole = symbol_roots(s)
    near = [z for z, _ in roots if abs(abs(z) - 1.0) <= tol]
    if near:
        raise BoundaryAmbiguousError(f"symbol zeros within {tol:g} of the unit circle: {near}", near)
    inside = sum(m for z, m in roots if abs(z) < 1.0)
    return True, -(inside - pole)


def curve_winding(s, samples=4096):
    """Winding number of the sampled curve ``phi(e^{i theta})`` about 0."""
    theta = 2 * np.pi * np.arange(samples) / samples
    w = s(np.exp(1j * theta))
    return kernels.winding_number(w.real, w.imag)


# -- finite-section oracle ----------------------------------------------------


@dataclass
class TruncationSeries:
    sizes: list
    kernel_dims: list
    cokernel_dims: list
    stabilized: bool

    @property
    def index(self):
        """Stabilised ``ker - coker`` (None when not stabilised)."""
        if not self.stabilized:
            return None
        return self.kernel_dims[-1] - self.cokernel_dims[-1]

    def to_json(self):
        return {"sizes": self.sizes, "kernel_dims": self.kernel_dims,
                "cokernel_dims": self.cokernel_dims, "stabilized": self.stabilized,
                "index": self.index}


def _nullity(m, rtol):
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return m.shape[1]
    return int(m.shape[1] - np.sum(s > rtol * s[0]))


def kernel_cokernel_oracle(t, sizes=(32, 64, 128, 256), rtol=1e-8):
    """Kernel and cokernel dimensions from rectangular finite sections.

    The kernel uses the ``(N + D+) x N`` section, which is ``T`` restricted
    to the first ``N`` basis vectors with nothing cut off; the cokernel is
    the kernel of the adjoint, computed the same way. Square sections would
    make the unilateral shift nilpotent and are not used. Nullity is
    decided by SVD against ``rtol * sigma_max``.
    """
    if t.space is not Space.UNILATERAL:
        raise InputError("the finite-section oracle is defined for the unilateral space")
    sizes = [int(n) for n in sizes]
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise InputError("sizes must be strictly increasing")
    if sizes and sizes[0] < max(t.min_section, 1):
        raise InputError(f"sizes must be at least {t.min_section}")
    adj = t.adjoint()
    ker, coker = [], []
    for n in sizes:
        ker.append(_nullity(t.section(n + t.symbol.upper_band, n), rtol))
        coker.append(_nullity(adj.section(n + adj.symbol.upper_band, n), rtol))
    stable = len(sizes) >= 3 and len(set(ker[-3:])) == 1 and len(set(coker[-3:])) == 1
    return TruncationSeries(sizes, ker, coker, stable)


# -- classification -------------------------------------------------------------


def classify_operator(t, tol=DEFAULT_TOL):
    """Fredholm / B-Fredholm / B-Weyl verdicts for ``T_phi + F``.

    * zero symbol: ``T`` is finite rank, its class in the quotient is 0,
      which is Drazin invertible; not Fredholm; index 0.
    * zero-free symbol on the circle: Fredholm with index ``-winding``
      (always 0 on the bilateral space).
    * symbol vanishing on the circle: 0 lies on the essential spectrum curve
      and is not isolated there, so neither Fredholm nor B-Fredholm.
    """
    s = t.symbol
    if s.is_zero:
        return ClassificationReport(
            fredholm=False, generalized_fredholm=True, b_fredholm=True, b_weyl=True,
            index=0, notes=["zero symbol: finite-rank element, zero in the quotient"])
    try:
        _, idx = winding_index(s, tol)
    except BoundaryAmbiguousError as exc:
        return ClassificationReport(
            fredholm=False, generalized_fredholm=False, b_fredholm=False, b_weyl=False,
            notes=[f"0 on the symbol curve ({exc})"])
    if t.space is Space.BILATERAL:
        idx = 0
    return ClassificationReport(
        fredholm=True, generalized_fredholm=True, b_fredholm=True, b_weyl=idx == 0,
        index=idx, notes=[f"winding number {-idx}"])


def operator_b_fredholm(t, tol=DEFAULT_TOL):
    """Operator-level B-Fredholm check for the multiplication operator.

    Fredholm operators qualify directly. For a finite-rank ``F`` there is an
    ``n`` (its Drazin index) such that ``F`` restricted to ``R(F^n)`` is
    invertible on that finite-dimensional space, which is the B-Fredholm
    property; this is verified from the Drazin splitting of the block.
    Returns ``(bool, detail)``.
    """
    rep = classify_operator(t, tol)
    if rep.fredholm:
        return True, {"reason": "Fredholm operator"}
    if t.symbol.is_zero:
        if t.pert_size == 0:
            return True, {"reason": "zero operator", "n": 1}
        res = drazin_inverse(t.perturbation, tol)
        core_rank = int(round(np.trace(res.p).real))
        return True, {"reason": "finite rank; invertible on R(F^n)",
                      "n": max(res.drazin_index, 1), "core_dim": core_rank}
    return False, {"reason": "0 on the essential spectrum curve"}


# -- trace-commutator index ------------------------------------------------------


def inverse_symbol(s, bandwidth, grid=4096):
    """Laurent coefficients ``|d| <= bandwidth`` of ``1/phi`` by FFT on the circle."""
    grid = max(grid, 4 * bandwidth + 8)
    z = np.exp(2j * np.pi * np.arange(grid) / grid)
    vals = s(z)
    if np.min(np.abs(vals)) == 0:
        raise DomainError("symbol vanishes on the circle")
    coef = np.fft.fft(1.0 / vals) / grid
    return LaurentSymbol({d: coef[d % grid] for d in range(-bandwidth, bandwidth + 1)})


def quotient_bandwidth(s, n):
    """Bandwidth of the truncated quotient inverse: ``ceil(log n) * degree``, at least the symbol bandwidth."""
    return max(math.ceil(math.log(max(n, 2))) * max(s.bandwidth, 1), s.bandwidth)


def commutator_trace(t, t0, n):
    """``trace`` of the ``n x n`` section of ``t t0 - t0 t`` (exact products)."""
    big = n + 2 * (t.symbol.bandwidth + t0.symbol.bandwidth) + t.pert_size + t0.pert_size
    a = t.section(big)
    b = t0.section(big)
    return complex(np.trace((a @ b - b @ a)[:n, :n]))


@dataclass
class TraceIndexResult:
    value: complex
    ladder: dict
    n0: int
    bandwidths: dict = field(default_factory=dict)


def trace_commutator_index(t, n=64, tol=DEFAULT_TOL, conv_tol=1e-6):
    """Index as ``trace [t, t0]`` with ``t0`` a truncated quotient inverse.

    Evaluated on the ladder ``n, 2n, 4n``; ``value`` is the ``n``-section
    trace. ``n0`` is the first ladder size from which all later values agree
    with the largest-size value to ``conv_tol``.

    Raises
    ------
    DomainError
        If ``t`` is not Fredholm.
    ConvergenceError
        If the ladder values spread by more than ``conv_tol``.
    """
    rep = classify_operator(t, tol)
    if not rep.fredholm:
        raise DomainError("trace-commutator index needs a Fredholm element")
    if t.space is not Space.UNILATERAL:
        raise InputError("trace-commutator index is computed on the unilateral space")
    ladder, bands = {}, {}
    for size in (n, 2 * n, 4 * n):
        bw = quotient_bandwidth(t.symbol, size)
        t0 = ToeplitzElement(inverse_symbol(t.symbol, bw))
        ladder[size] = commutator_trace(t, t0, size)
        bands[size] = bw
    final = ladder[4 * n]
    spread = max(abs(v - final) for v in ladder.values())
    if spread > conv_tol:
        raise ConvergenceError("trace-commutator index did not converge",
                               {"ladder": {k: [v.real, v.imag] for k, v in ladder.items()},
                                "spread": spread})
    n0 = 4 * n
    for size in sorted(ladder, reverse=True):
        if abs(ladder[size] - final) <= conv_tol:
            n0 = size
        else:
            break
    return TraceIndexResult(ladder[n], ladder, n0, bands)


# -- spectra ---------------------------------------------------------------------------


def circle_samples(samples):
    return np.exp(2j * np.pi * np.arange(samples) / samples)


@dataclass
class CurveSpectra:
    sigma_f: np.ndarray
    sigma_bf: np.ndarray
    coincide: bool


def bf_spectrum_curve(t, samples=1024):
    """Sampled Fredholm and B-Fredholm spectra: both are the symbol curve."""
    if t.symbol.is_constant:
        raise InputError("bf_spectrum_curve needs a nonconstant symbol")
    pts = t.symbol(circle_samples(samples))
    return CurveSpectra(pts.copy(), pts.copy(), True)


def symbol_power_discrepancy(s, f, n=48):
    """Numerical rank of the ``n x n`` section of ``f(T_phi) - T_{f o phi}``.

    ``f(T_phi)`` is formed from a section large enough that the top-left
    ``n x n`` block is exact. Returns ``(rank, bound)`` with
    ``bound = (deg f - 1) * min(D+, D-)``.
    """
    f = _as_poly(f)
    deg = len(f) - 1
    big = n + deg * s.bandwidth + 1
    ts = ToeplitzElement(s).section(big)
    acc = np.zeros_like(ts)
    for c in reversed(list(f)):
        acc = acc @ ts + c * np.eye(big)
    diff = acc[:n, :n] - ToeplitzElement(s.compose(f)).section(n)
    sv = np.linalg.svd(diff, compute_uv=False)
    scale = max(1.0, float(np.abs(acc).max()))
    rank = int(np.sum(sv > 1e-9 * scale))
    return rank, max(deg - 1, 0) * min(s.upper_band, s.lower_band)


@dataclass
class CurveMappingReport:
    hausdorff: float
    tol: float
    discrepancy_rank: int
    discrepancy_bound: int
    passed: bool

    def to_json(self):
        return {"hausdorff": self.hausdorff, "tol": self.tol,
                "discrepancy_rank": self.discrepancy_rank,
                "discrepancy_bound": self.discrepancy_bound, "passed": self.passed}


def spectral_mapping_bf_check(t, f, tol=1e-6, samples=1024):
    """``f(sigma_BF(T_phi))`` against ``sigma_BF(f(T_phi))`` as sampled curves.

    ``f(T_phi)`` differs from ``T_{f o phi}`` by a finite-rank operator, so
    its B-Fredholm spectrum is the curve of ``f o phi``; that finite-rank
    discrepancy is measured on sections and must respect its rank bound.
    """
    f = _as_poly(f)
    if len(f) < 2:
        raise InputError("f must be non-constant")
    if t.pert_size and np.any(t.perturbation != 0):
        raise InputError("spectral_mapping_bf_check expects a pure Toeplitz element")
    if t.symbol.is_constant:
        raise InputError("symbol must be nonconstant")
    z = circle_samples(samples)
    lhs = np.polynomial.polynomial.polyval(t.symbol(z), f)
    rhs = t.symbol.compose(f)(z)
    dist = hausdorff(lhs, rhs)
    rank, bound = symbol_power_discrepancy(t.symbol, f)
    return CurveMappingReport(dist, tol, rank, bound, dist <= tol and rank <= bound)


# -- bilateral shift example ------------------------------------------------------


def circulant_section(s, n):
    """Laurent operator with symbol ``s`` on the periodic section of size ``2n + 1``."""
    size = 2 * n + 1
    if size <= 2 * s.bandwidth:
        raise InputError("periodic section too small for the symbol bandwidth")
    out = np.zeros((size, size), dtype=complex)
    idx = np.arange(size)
    for d, c in s.coeffs.items():
        out[(idx + d) % size, idx] += c
    return out


def _grid_points(check_radius, grid):
    n_ang = max(4, int(round(math.sqrt(grid))))
    n_rad = max(2, grid // n_ang)
    n_in = n_rad // 2
    inner = np.linspace(check_radius / n_in, 0.9, n_in) if n_in > 1 else np.array([check_radius])
    inner = np.unique(np.append(inner, check_radius))[:n_in]
    outer = np.linspace(1.5, 3.0, n_rad - n_in)
    ang = 2 * np.pi * (np.arange(n_ang) + 0.5) / n_ang
    pts = [r * np.exp(1j * a) for r in np.concatenate([inner, outer]) for a in ang]
    return np.array(pts[:grid])


def membership_witness(lam, n=128):
    """Test whether ``(T - lam)^{-1}`` can belong to the algebra generated by
    the bilateral shift ``T`` and the compacts.

    That algebra only contains symbol parts with non-negative Fourier
    modes, so the inverse is a member only when its coefficients live on the
    non-negative side. The coefficients are read from column 0 of the
    inverse periodic section. Returns a dict with the negative-side mass
    fraction, the fitted geometric decay rate and the verdict.
    """
    shift = LaurentSymbol.monomial(1)
    sec = circulant_section(shift - lam, n)
    smin = np.linalg.svd(sec, compute_uv=False)[-1]
    if smin < 1e-12:
        return {"lambda": [lam.real, lam.imag], "invertible_operator": False,
                "verdict": "inconclusive"}
    col = np.linalg.solve(sec, np.eye(sec.shape[0])[:, 0])
    size = sec.shape[0]
    # entry k of column 0 is the coefficient of z^k (k taken mod size, centred)
    degrees = (np.arange(size) + n) % size - n
    mag2 = np.abs(col) ** 2
    neg = float(mag2[degrees < 0].sum())
    total = float(mag2.sum())
    frac = neg / total
    side = degrees < 0 if frac > 0.5 else degrees >= 0
    d = np.abs(degrees[side])
    m = np.abs(col[side])
    keep = (m > 1e-13 * m.max()) & (d <= 40)
    rate = float(np.exp(np.polyfit(d[keep], np.log(m[keep]), 1)[0])) if keep.sum() >= 2 else 0.0
    if frac <= 1e-6:
        verdict = "member"
    elif frac >= 1 - 1e-6:
        verdict = "not_member"
    else:
        verdict = "inconclusive"
    return {"lambda": [lam.real, lam.imag], "invertible_operator": True,
            "fredholm_index": 0, "min_singular_value": float(smin),
            "negative_mass_fraction": frac, "decay_rate": rate, "verdict": verdict}


@dataclass
class BilateralReport:
    operator_invertible: bool
    points: list
    zero_non_isolated: str
    conclusion: str

    def to_json(self):
        return {"operator_invertible": self.operator_invertible, "points": self.points,
                "zero_non_isolated": self.zero_non_isolated, "conclusion": self.conclusion}


def bilateral_shift_example(check_radius=0.5, grid=64, n=128):
    """Numerical reproduction of the bilateral-shift counterexample.

    (i) The bilateral shift is unitary on ``l2(Z)`` (checked on the periodic
    section), hence a B-Fredholm operator. (ii) For every grid point
    ``lam`` off the unit circle, ``T - lam`` is an invertible operator, yet
    ``(T - lam)^{-1}`` is one-sided on the negative modes when ``|lam| < 1``,
    so ``lam`` lies in the spectrum of ``T`` within the generated algebra.
    (iii) Every grid point with ``0 < |lam| <= check_radius`` is in that
    spectrum, so 0 is not isolated there and ``T`` is not a B-Fredholm
    element of the algebra. The result is a numerical witness and is
    reported as consistency, not proof.
    """
    if not 0 < check_radius < 1:
        raise InputError("check_radius must lie in (0, 1)")
    sec = circulant_section(LaurentSymbol.monomial(1), n)
    unitary = float(np.abs(sec.conj().T @ sec - np.eye(sec.shape[0])).max()) < 1e-12
    points = []
    for lam in _grid_points(check_radius, grid):
        w = membership_witness(complex(lam), n)
        w["in_spectrum_A"] = {"member": False, "not_member": True}.get(w["verdict"])
        points.append(w)
    near = [p for p in points if 0 < abs(complex(*p["lambda"])) <= check_radius]
    if not near or any(p["in_spectrum_A"] is None for p in near):
        zero = "inconclusive"
    elif all(p["in_spectrum_A"] for p in near):
        zero = "non_isolated"
    else:
        zero = "isolated"
    conclusive = unitary and zero == "non_isolated" and all(
        p["in_spectrum_A"] == (abs(complex(*p["lambda"])) < 1) for p in points
        if p["in_spectrum_A"] is not None)
    return BilateralReport(unitary, points, zero, "consistent" if conclusive else "inconclusive")
