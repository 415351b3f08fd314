import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bfredholm import kernels
from bfredholm.sampling import complex_gaussian


def test_both_backends_share_signatures():
    for mod in kernels.backends().values():
        for name in ("pivoted_qr", "hessenberg", "hessenberg_eigvals", "winding_number"):
            assert callable(getattr(mod, name))


def test_dispatch_reports_backend():
    assert kernels.BACKEND in kernels.backends()


def test_pivoted_qr_reconstructs(backend, rng):
    a = complex_gaussian(rng, (7, 5))
    q, r, perm, rank = backend.pivoted_qr(a, 1e-12)
    assert rank == 5
    assert np.allclose(q @ r, a[:, perm], atol=1e-12)
    assert np.allclose(q.conj().T @ q, np.eye(7), atol=1e-12)
    assert np.allclose(np.tril(r, -1), 0)
    # pivots are non-increasing in magnitude
    d = np.abs(np.diag(r))
    assert np.all(d[:-1] >= d[1:] - 1e-12)


def test_pivoted_qr_rank_deficient(backend, rng):
    a = complex_gaussian(rng, (6, 2)) @ complex_gaussian(rng, (2, 6))
    assert backend.pivoted_qr(a, 1e-10)[3] == 2
    assert backend.pivoted_qr(np.zeros((3, 3)), 1e-10)[3] == 0


def test_pivoted_qr_floor_drops_noise(backend):
    a = np.diag([1.0, 1e-13])
    assert backend.pivoted_qr(a, 1e-15)[3] == 2
    assert backend.pivoted_qr(a, 1e-15, 1e-12)[3] == 1


def test_hessenberg_similarity(backend, rng):
    a = complex_gaussian(rng, (6, 6))
    h = backend.hessenberg(a)
    assert np.allclose(np.tril(h, -2), 0)
    assert np.isclose(np.trace(h), np.trace(a))
    assert np.isclose(np.linalg.norm(h), np.linalg.norm(a))
    assert np.allclose(np.sort_complex(np.linalg.eigvals(h)), np.sort_complex(np.linalg.eigvals(a)))


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 9), seed=st.integers(0, 2**31))
def test_eigvals_match_lapack(n, seed):
    rng = np.random.default_rng(seed)
    a = complex_gaussian(rng, (n, n))
    ref = np.linalg.eigvals(a)
    for mod in kernels.backends().values():
        vals, its = mod.hessenberg_eigvals(mod.hessenberg(a), 100)
        assert its >= 0
        # every reference eigenvalue is matched
        d = np.abs(vals[:, None] - ref[None, :])
        assert d.min(axis=0).max() < 1e-9 * max(1.0, np.abs(ref).max())
        assert np.isclose(vals.sum(), np.trace(a))


def test_eigvals_real_rotation(backend):
    vals, _ = backend.hessenberg_eigvals(backend.hessenberg(np.array([[0, 1], [-1, 0]])), 100)
    assert np.allclose(sorted(vals, key=lambda z: z.imag), [-1j, 1j])


def test_eigvals_zero_maxiter_reports_failure(backend):
    a = np.array([[1.0, 2.0], [3.0, 4.0]])
    assert backend.hessenberg_eigvals(a, 0)[1] == -1


def test_backends_agree(rng):
    mods = kernels.backends()
    if len(mods) < 2:
        pytest.skip("compiled backend not built")
    a = complex_gaussian(rng, (8, 8))
    py, cy = mods["python"], mods["cython"]
    assert np.allclose(py.hessenberg(a), cy.hessenberg(a), atol=1e-13)
    assert np.allclose(py.hessenberg_eigvals(py.hessenberg(a), 100)[0],
                       cy.hessenberg_eigvals(cy.hessenberg(a), 100)[0], atol=1e-12)
    for x, y in zip(py.pivoted_qr(a, 1e-12), cy.pivoted_qr(a, 1e-12)):
        assert np.allclose(x, y, atol=1e-12)


@pytest.mark.parametrize("k", [-2, -1, 0, 1, 3])
def test_winding_number_monomials(backend, k):
    z = np.exp(2j * np.pi * np.arange(512) / 512)
    w = 0.5 + z ** k if k == 0 else z ** k
    assert backend.winding_number(w.real, w.imag) == k


def test_winding_number_off_origin(backend):
    z = np.exp(2j * np.pi * np.arange(256) / 256)
    w = 3 + z
    assert backend.winding_number(w.real, w.imag) == 0
