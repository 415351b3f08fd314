"""The finite-dimensional carrier ``A = M_{n_1}(C) + ... + M_{n_r}(C)``.

Every two-sided ideal of ``A`` is a sum of whole blocks, so an ideal is a set
of block indices and the canonical projection onto ``A/J`` deletes those
blocks. Quotient questions (invertibility, Drazin invertibility) therefore
reduce to questions about the surviving blocks.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConsistencyError,
    DomainError,
    EquivalenceViolation,
    InputError,
)
from .matrix import (
    DEFAULT_TOL,
    VERIFY_TOL,
    as_matrix,
    core_nilpotent_split,
    drazin_inverse,
    drazin_residuals,
    eigen_multiset,
    matrix_from_json,
    matrix_to_json,
    numerical_rank,
    opnorm,
    poly_eval,
)


@dataclass(frozen=True)
class BlockAlgebra:
    block_sizes: tuple

    def __post_init__(self):
        sizes = tuple(int(n) for n in self.block_sizes)
        if not sizes or any(n < 1 for n in sizes):
            raise InputError(f"block sizes must be a nonempty list of positive ints, got {self.block_sizes!r}")
        object.__setattr__(self, "block_sizes", sizes)

    def __len__(self):
        return len(self.block_sizes)

    @property
    def dimension(self):
        """Sum of block sizes (size of the faithful matrix representation)."""
        return sum(self.block_sizes)

    def element(self, blocks):
        return BlockElement(self, blocks)

    def identity(self):
        return BlockElement(self, [np.eye(n) for n in self.block_sizes])

    def zero(self):
        return BlockElement(self, [np.zeros((n, n)) for n in self.block_sizes])

    def scalar(self, lam):
        return BlockElement(self, [lam * np.eye(n) for n in self.block_sizes])


@dataclass(frozen=True)
class IdealSpec:
    member_blocks: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "member_blocks", frozenset(int(i) for i in self.member_blocks))

    def check(self, algebra):
        bad = [i for i in self.member_blocks if not 0 <= i < len(algebra)]
        if bad:
            raise InputError(f"ideal block indices out of range: {sorted(bad)}")
        return self

    def kept(self, algebra):
        """Indices of blocks that survive in the quotient, ascending."""
        self.check(algebra)
        return tuple(i for i in range(len(algebra)) if i not in self.member_blocks)

    @classmethod
    def full(cls, algebra):
        return cls(frozenset(range(len(algebra))))


@dataclass(frozen=True, eq=False)
class BlockElement:
    algebra: BlockAlgebra
    blocks: tuple

    def __post_init__(self):
        if len(self.blocks) != len(self.algebra):
            raise InputError(f"expected {len(self.algebra)} blocks, got {len(self.blocks)}")
        out = []
        for i, (b, n) in enumerate(zip(self.blocks, self.algebra.block_sizes)):
            m = as_matrix(b, square=True, name=f"block {i}")
            if m.shape[0] != n:
                raise InputError(f"block {i} must be {n}x{n}, got {m.shape}")
            m.setflags(write=False)
            out.append(m)
        object.__setattr__(self, "blocks", tuple(out))

    def _combine(self, other, op):
        if not isinstance(other, BlockElement):
            return NotImplemented
        if other.algebra != self.algebra:
            raise InputError("elements belong to different algebras")
        return BlockElement(self.algebra, [op(x, y) for x, y in zip(self.blocks, other.blocks)])

    def __add__(self, other):
        return self._combine(other, np.add)

    def __sub__(self, other):
        return self._combine(other, np.subtract)

    def __matmul__(self, other):
        return self._combine(other, np.matmul)

    def __mul__(self, lam):
        if isinstance(lam, BlockElement):
            return NotImplemented
        return BlockElement(self.algebra, [complex(lam) * b for b in self.blocks])

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def power(self, n):
        return BlockElement(self.algebra, [np.linalg.matrix_power(b, n) for b in self.blocks])

    def poly(self, coeffs):
        return BlockElement(self.algebra, [poly_eval(b, coeffs) for b in self.blocks])

    def norm(self):
        """Operator norm: the largest block operator norm."""
        return max(opnorm(b) for b in self.blocks)

    def allclose(self, other, atol):
        return all(np.allclose(x, y, rtol=0, atol=atol) for x, y in zip(self.blocks, other.blocks))

    def to_json(self):
        return [matrix_to_json(b) for b in self.blocks]


def element_from_json(algebra, blocks):
    return BlockElement(algebra, [matrix_from_json(b) for b in blocks])


def _check_pair(a, ideal):
    if not isinstance(a, BlockElement):
        raise InputError("expected a BlockElement")
    if ideal is None:
        ideal = IdealSpec()
    return ideal.check(a.algebra)


def lift(algebra, ideal, kept_blocks, ideal_blocks=None):
    """Element with ``kept_blocks`` outside ``ideal`` and ``ideal_blocks`` (default zero) inside."""
    kept = ideal.kept(algebra)
    blocks = []
    it = iter(kept_blocks)
    for i, n in enumerate(algebra.block_sizes):
        if i in ideal.member_blocks:
            blocks.append(np.zeros((n, n)) if ideal_blocks is None else ideal_blocks[i])
        else:
            blocks.append(next(it))
    if len(kept) and next(it, None) is not None:
        raise InputError("too many kept blocks")
    return BlockElement(algebra, blocks)


# -- projection and predicates ----------------------------------------------


@dataclass(frozen=True)
class Projection:
    """Image of an element in ``A/J``: the surviving blocks and their indices."""

    blocks: tuple
    kept: tuple
    deleted: tuple

    @property
    def is_zero_ring(self):
        return not self.kept


def project(a, ideal):
    ideal = _check_pair(a, ideal)
    kept = ideal.kept(a.algebra)
    return Projection(tuple(a.blocks[i] for i in kept), kept, tuple(sorted(ideal.member_blocks)))


def _invertible(m, tol, scale=0.0):
    return numerical_rank(m, tol, scale).rank == m.shape[0]


def is_fredholm(a, ideal=None, tol=DEFAULT_TOL, scale=0.0):
    """``pi(a)`` invertible in ``A/J``: every surviving block has full numerical rank.

    ``scale`` sets the rank noise floor for elements that were computed as
    products or powers (pass the product of the factor norms).
    """
    return all(_invertible(b, tol, scale) for b in project(a, ideal).blocks)


@dataclass
class ClassificationReport:
    fredholm: bool
    generalized_fredholm: bool
    b_fredholm: bool
    b_weyl: bool
    witness_n: int = None
    witness_c: object = None
    quotient_drazin: dict = field(default_factory=dict)
    index: complex = None
    residuals: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_json(self):
        def num(z):
            if z is None:
                return None
            z = complex(z)
            return [z.real, z.imag]

        wc = self.witness_c
        if isinstance(wc, BlockElement):
            wc = wc.to_json()
        return {
            "fredholm": bool(self.fredholm),
            "generalized_fredholm": bool(self.generalized_fredholm),
            "b_fredholm": bool(self.b_fredholm),
            "b_weyl": bool(self.b_weyl),
            "witness_n": self.witness_n,
            "witness_c": wc,
            "quotient_drazin": {
                str(i): {"drazin_index": d.drazin_index,
                         "inverse": matrix_to_json(d.inverse),
                         "residuals": d.residuals}
                for i, d in sorted(self.quotient_drazin.items())
            },
            "index": num(self.index),
            "residuals": self.residuals,
            "notes": list(self.notes),
        }


def quotient_drazin(a, ideal=None, tol=DEFAULT_TOL):
    """Drazin data of every surviving block, keyed by block index."""
    proj = project(a, ideal)
    return {i: drazin_inverse(b, tol) for i, b in zip(proj.kept, proj.blocks)}


def theorem4_witness(a, ideal, drazin, tol=DEFAULT_TOL):
    """Constructive witness ``(n, c)`` with ``c`` the lift of ``b^n``.

    ``n`` is the largest block Drazin index (at least 1); returns the
    witness and the residuals of ``a^n c a^n - a^n`` on the surviving blocks.
    """
    n = max([d.drazin_index for d in drazin.values()] + [1])
    kept = ideal.kept(a.algebra)
    c = lift(a.algebra, ideal, [np.linalg.matrix_power(drazin[i].inverse, n) for i in kept])
    an = a.power(n)
    worst = 0.0
    ok = True
    for i in kept:
        x = an.blocks[i]
        ci = c.blocks[i]
        ref = a.norm() ** n * (1.0 + a.norm() ** n * opnorm(ci))
        worst = max(worst, opnorm(x @ ci @ x - x) / ref if ref else 0.0)
        t = np.eye(x.shape[0]) - x @ ci - ci @ x
        ok = ok and _invertible(t, tol, 1.0)
    return n, c, ok and worst <= VERIFY_TOL, worst


def is_b_fredholm(a, ideal=None, tol=DEFAULT_TOL):
    """``pi(a)`` Drazin invertible in ``A/J`` (direct route).

    Always true in this model; the report carries the per-block Drazin data,
    the constructive witness ``(n, c = b^n)`` and the index.
    """
    ideal = _check_pair(a, ideal)
    drazin = quotient_drazin(a, ideal, tol)
    n, c, ok, resid = theorem4_witness(a, ideal, drazin, tol)
    if not ok:
        raise ConsistencyError(f"constructive witness failed (residual {resid:.3e})")
    idx = index(a, ideal, tol, drazin=drazin)
    fred = all(d.drazin_index == 0 for d in drazin.values())
    return ClassificationReport(
        fredholm=fred,
        generalized_fredholm=all(d.drazin_index <= 1 for d in drazin.values()),
        b_fredholm=True,
        b_weyl=abs(idx) <= 1e-8,
        witness_n=n,
        witness_c=c,
        quotient_drazin=drazin,
        index=idx,
        residuals={"witness": resid},
    )


def _mp_witness(x, tol, noise):
    """Moore-Penrose inverse of ``x`` with singular values below
    ``tol * max(s_max, noise)`` discarded."""
    u, s, vh = np.linalg.svd(x)
    cut = tol * max(s[0] if s.size else 0.0, noise)
    keep = s > cut
    return (vh[keep].conj().T / s[keep]) @ u[:, keep].conj().T


def generalized_witness_check(x, c, tol=DEFAULT_TOL, scale=1.0):
    """Test ``x c x = x`` and ``e - xc - cx`` invertible for a single block."""
    ref = scale * (1.0 + scale * opnorm(c))
    resid = opnorm(x @ c @ x - x) / ref if ref else 0.0
    t = np.eye(x.shape[0]) - x @ c - c @ x
    # e sets the scale: a t made only of rounding noise must read as singular
    return resid <= VERIFY_TOL and _invertible(t, tol, 1.0), resid


def is_generalized_fredholm(a, ideal=None, tol=DEFAULT_TOL):
    """Search for ``b`` with ``aba - a`` in J and ``e - ab - ba`` Fredholm mod J.

    The Moore-Penrose inverse of each surviving block is tried first. If it
    fails, the decision falls to the core-nilpotent criterion: ``pi(a)`` is
    generalized Fredholm iff every surviving block has Drazin index at most
    one, and then the group inverse is a witness.

    Returns
    -------
    (bool, BlockElement or None)
    """
    ideal = _check_pair(a, ideal)
    proj = project(a, ideal)
    scales = [opnorm(x) for x in proj.blocks]
    mp = [_mp_witness(x, tol, sc) for x, sc in zip(proj.blocks, scales)]
    if all(generalized_witness_check(x, c, tol, sc)[0] for x, c, sc in zip(proj.blocks, mp, scales)):
        return True, lift(a.algebra, ideal, mp)
    splits = [core_nilpotent_split(x, tol) for x in proj.blocks]
    if not all(sp.power <= 1 for sp in splits):
        return False, None
    group = [drazin_inverse(x, tol).inverse for x in proj.blocks]
    if not all(generalized_witness_check(x, c, tol, sc)[0]
               for x, c, sc in zip(proj.blocks, group, scales)):
        raise ConsistencyError("group inverse failed as generalized-Fredholm witness")
    return True, lift(a.algebra, ideal, group)


def witness_route(a, ideal=None, tol=DEFAULT_TOL, n_max=None):
    """Smallest ``n`` for which ``a^n`` is generalized Fredholm mod J.

    Uses only SVD-based Moore-Penrose candidates, never the Drazin splitting,
    so it is an independent check of the direct route. Returns ``(n, c)`` or
    ``(None, None)`` when no ``n <= n_max`` works.
    """
    ideal = _check_pair(a, ideal)
    proj = project(a, ideal)
    n_max = n_max or max(a.algebra.dimension, 1)
    # per-block noise scale |x|^n, matching the rank floor of the direct route
    scales = [opnorm(x) for x in proj.blocks]
    for n in range(1, n_max + 1):
        xs = [np.linalg.matrix_power(x, n) for x in proj.blocks]
        cs = [_mp_witness(x, tol, sc ** n) for x, sc in zip(xs, scales)]
        if all(generalized_witness_check(x, c, tol, sc ** n)[0]
               for x, c, sc in zip(xs, cs, scales)):
            return n, lift(a.algebra, ideal, cs)
    return None, None


def classify(a, ideal=None, tol=DEFAULT_TOL):
    """Full classification with both evaluation routes cross-checked.

    Raises
    ------
    EquivalenceViolation
        If the quotient-Drazin route and the witness route disagree on
        B-Fredholmness or on the minimal power ``n``.
    """
    ideal = _check_pair(a, ideal)
    report = is_b_fredholm(a, ideal, tol)
    n_w, c_w = witness_route(a, ideal, tol)
    direct_n = report.witness_n
    if (n_w is not None) != report.b_fredholm or n_w != direct_n:
        raise EquivalenceViolation(
            f"direct route: b_fredholm={report.b_fredholm}, n={direct_n}; "
            f"witness route: n={n_w}",
            direct=(report.b_fredholm, direct_n), witness=n_w)
    gf, _ = is_generalized_fredholm(a, ideal, tol)
    if gf != report.generalized_fredholm:
        raise EquivalenceViolation("generalized-Fredholm criterion disagrees with Drazin indices",
                                   direct=report.generalized_fredholm, witness=gf)
    fred = is_fredholm(a, ideal, tol)
    if fred != report.fredholm:
        raise EquivalenceViolation("rank test and Drazin index disagree on Fredholmness",
                                   direct=report.fredholm, witness=fred)
    report.notes.append(f"witness route confirmed n={n_w}")
    return report


# -- trace, index, decomposition --------------------------------------------


def in_ideal(a, ideal, tol=DEFAULT_TOL, scale=None):
    """All blocks outside the ideal vanish to within ``tol * max(1, scale)``."""
    ideal = _check_pair(a, ideal)
    scale = a.norm() if scale is None else scale
    bound = tol * max(1.0, scale)
    return all(opnorm(b) <= bound for b in project(a, ideal).blocks)


def socle_trace(a, ideal=None, tol=DEFAULT_TOL, scale=None):
    """Sum of ``m(lambda) * lambda`` over the spectrum of an ideal element.

    Raises
    ------
    DomainError
        If ``a`` is not in the ideal at tolerance.
    ConsistencyError
        If the eigenvalue sum disagrees with the sum of block traces.
    """
    ideal = _check_pair(a, ideal)
    if not in_ideal(a, ideal, tol, scale):
        raise DomainError("trace is only defined on the ideal; a has nonzero blocks outside J")
    total = 0j
    plain = 0j
    for i in sorted(ideal.member_blocks):
        ms = eigen_multiset(a.blocks[i], tol)
        total += ms.weighted_sum()
        plain += np.trace(a.blocks[i])
    ref = max(1.0, a.norm() * a.algebra.dimension)
    if abs(total - plain) > 1e-8 * ref:
        raise ConsistencyError(f"spectral trace {total} != matrix trace {plain}")
    return complex(total)


def drazin_lift(a, ideal, drazin=None, ideal_fill=None, tol=DEFAULT_TOL):
    """A Drazin inverse of ``a`` modulo J: block Drazin inverses outside J,
    ``ideal_fill`` (default zero) inside."""
    ideal = _check_pair(a, ideal)
    drazin = drazin if drazin is not None else quotient_drazin(a, ideal, tol)
    kept = ideal.kept(a.algebra)
    return lift(a.algebra, ideal, [drazin[i].inverse for i in kept], ideal_fill)


def index(a, ideal=None, tol=DEFAULT_TOL, drazin=None, ideal_fill=None):
    """Index ``tau([a, a0])`` for a Drazin inverse ``a0`` of ``a`` modulo J.

    ``ideal_fill`` chooses the ideal blocks of ``a0``; the result does not
    depend on it.
    """
    ideal = _check_pair(a, ideal)
    a0 = drazin_lift(a, ideal, drazin, ideal_fill, tol)
    comm = a @ a0 - a0 @ a
    scale = a.norm() * a0.norm()
    if not in_ideal(comm, ideal, VERIFY_TOL, scale):
        raise ConsistencyError("commutator [a, a0] is not in the ideal")
    return socle_trace(comm, ideal, tol, scale)


def b_weyl_decompose(a, ideal=None, tol=DEFAULT_TOL):
    """Split ``a = b + c`` with ``b`` Drazin invertible in A and ``c`` in J.

    ``b`` keeps the blocks outside J and is zero on J; ``c`` is the J part.
    """
    ideal = _check_pair(a, ideal)
    zeros = [np.zeros((n, n)) for n in a.algebra.block_sizes]
    b = BlockElement(a.algebra, [zeros[i] if i in ideal.member_blocks else a.blocks[i]
                                 for i in range(len(a.algebra))])
    c = BlockElement(a.algebra, [a.blocks[i] if i in ideal.member_blocks else zeros[i]
                                 for i in range(len(a.algebra))])
    if not all(np.array_equal(x + y, z) for x, y, z in zip(b.blocks, c.blocks, a.blocks)):
        raise ConsistencyError("a != b + c")
    if not all(np.all(c.blocks[i] == 0) for i in ideal.kept(a.algebra)):
        raise ConsistencyError("c is not in J")
    for blk in b.blocks:
        drazin_inverse(blk, tol)
    return b, c


def verify_drazin_element(b, tol=DEFAULT_TOL):
    """Drazin data for ``b`` in A itself (all blocks), with residuals."""
    results = [drazin_inverse(blk, tol) for blk in b.blocks]
    k = max(r.drazin_index for r in results)
    inv = BlockElement(b.algebra, [r.inverse for r in results])
    res = {}
    for blk, r in zip(b.blocks, results):
        for key, v in drazin_residuals(blk, r.inverse, k).items():
            res[key] = max(res.get(key, 0.0), v)
    return inv, k, res


# -- spectra -------------------------------------------------------------------


def fredholm_spectrum(a, ideal=None, tol=DEFAULT_TOL):
    """Eigenvalues of the surviving blocks (distinct, multiplicity-merged)."""
    proj = project(a, ideal)
    pts = []
    for b in proj.blocks:
        pts.extend(lam for lam, _ in eigen_multiset(b, tol).pairs)
    return tuple(sorted(pts, key=lambda z: (z.real, z.imag)))


def b_fredholm_spectrum(a, ideal=None, tol=DEFAULT_TOL):
    """Empty: every element of a finite-dimensional algebra is B-Fredholm."""
    _check_pair(a, ideal)
    return ()


def hausdorff(x, y):
    """Symmetric Hausdorff distance between finite point sets in C (0 if both empty)."""
    x = np.asarray(list(x), dtype=complex)
    y = np.asarray(list(y), dtype=complex)
    if x.size == 0 and y.size == 0:
        return 0.0
    if x.size == 0 or y.size == 0:
        return float("inf")
    d = np.abs(x[:, None] - y[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))


def poly_values(coeffs, z):
    return np.polynomial.polynomial.polyval(np.asarray(z, dtype=complex), np.asarray(coeffs, dtype=complex))


@dataclass
class SpectralMappingReport:
    lhs: tuple
    rhs: tuple
    hausdorff: float
    threshold: float
    bf_lhs: tuple
    bf_rhs: tuple
    passed: bool

    def to_json(self):
        pts = lambda s: [[complex(z).real, complex(z).imag] for z in s]
        return {"f_sigma_F": pts(self.lhs), "sigma_F_f": pts(self.rhs),
                "hausdorff": self.hausdorff, "threshold": self.threshold,
                "f_sigma_BF": pts(self.bf_lhs), "sigma_BF_f": pts(self.bf_rhs),
                "passed": self.passed}


def spectral_mapping_check(a, ideal, coeffs, tol=DEFAULT_TOL, match_tol=None):
    """Compare ``f(sigma_F(a))`` with ``sigma_F(f(a))`` for a polynomial ``f``.

    Both sides use multiplicity-merged eigenvalues: a cluster mean is
    accurate to working precision even for defective eigenvalues, where the
    individual computed eigenvalues scatter by ``eps**(1/m)``.
    ``match_tol`` defaults to ``1e-8 * max(1, |a|)**deg f``.
    """
    coeffs = np.trim_zeros(np.asarray(coeffs, dtype=complex), "b")
    if len(coeffs) < 2:
        raise InputError("f must be a non-constant polynomial")
    ideal = _check_pair(a, ideal)
    fa = a.poly(coeffs)
    lhs = tuple(poly_values(coeffs, fredholm_spectrum(a, ideal, tol)))
    rhs = fredholm_spectrum(fa, ideal, tol)
    dist = hausdorff(lhs, rhs)
    thr = match_tol if match_tol is not None else 1e-8 * max(1.0, a.norm()) ** (len(coeffs) - 1)
    bf_l = tuple(poly_values(coeffs, b_fredholm_spectrum(a, ideal)))
    bf_r = b_fredholm_spectrum(fa, ideal)
    return SpectralMappingReport(lhs, rhs, dist, thr, bf_l, bf_r,
                                 dist <= thr and hausdorff(bf_l, bf_r) == 0.0)
