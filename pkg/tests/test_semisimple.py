import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bfredholm import sampling
from bfredholm.errors import DomainError, InputError
from bfredholm.matrix import drazin_inverse
from bfredholm.properties import random_algebra, random_block_element, random_ideal, random_pool_element
from bfredholm.semisimple import (
    BlockAlgebra,
    BlockElement,
    IdealSpec,
    b_fredholm_spectrum,
    b_weyl_decompose,
    classify,
    element_from_json,
    fredholm_spectrum,
    hausdorff,
    index,
    is_b_fredholm,
    is_fredholm,
    is_generalized_fredholm,
    project,
    socle_trace,
    spectral_mapping_check,
    verify_drazin_element,
    witness_route,
)
from conftest import jordan

M2M3 = BlockAlgebra((2, 3))
M2M2 = BlockAlgebra((2, 2))


def brute_generalized_fredholm(x, rng, tries=300):
    """Search the solution set of ``x b x = x`` for ``e - xb - bx`` invertible.

    Every solution is ``x^+ + (e - x^+ x) Y + Z (e - x x^+)``.
    """
    xp = np.linalg.pinv(x, rcond=1e-10)
    e = np.eye(x.shape[0])
    cands = [xp]
    for _ in range(tries):
        y, z = (sampling.complex_gaussian(rng, x.shape) * 3 for _ in range(2))
        cands.append(xp + (e - xp @ x) @ y + z @ (e - x @ xp))
    for b in cands:
        if np.abs(np.linalg.det(e - x @ b - b @ x)) > 1e-6:
            return True
    return False


# -- structure ----------------------------------------------------------------------


def test_bad_block_sizes():
    with pytest.raises(InputError):
        BlockAlgebra(())
    with pytest.raises(InputError):
        BlockAlgebra((2, 0))


def test_element_shape_checked():
    with pytest.raises(InputError):
        BlockElement(M2M3, [np.eye(2), np.eye(2)])
    with pytest.raises(InputError):
        BlockElement(M2M3, [np.eye(2)])


def test_ideal_out_of_range():
    with pytest.raises(InputError):
        project(M2M3.identity(), IdealSpec({2}))


def test_blocks_read_only():
    a = M2M3.identity()
    with pytest.raises(ValueError):
        a.blocks[0][0, 0] = 5


def test_algebra_operations(rng):
    a, b = random_block_element(rng, M2M3), random_block_element(rng, M2M3)
    prod = a @ b
    for i in range(2):
        assert np.allclose(prod.blocks[i], a.blocks[i] @ b.blocks[i])
        assert np.allclose((a + b).blocks[i], a.blocks[i] + b.blocks[i])
        assert np.allclose(a.power(3).blocks[i], np.linalg.matrix_power(a.blocks[i], 3))
    assert (a @ M2M3.identity()).allclose(a, 1e-14)


def test_element_json_round_trip(rng):
    a = random_block_element(rng, M2M3)
    assert element_from_json(M2M3, a.to_json()).allclose(a, 0)


# -- projection, Fredholm ---------------------------------------------------------


def test_project_cases():
    a = M2M3.identity()
    assert len(project(a, IdealSpec()).blocks) == 2
    assert project(a, IdealSpec.full(M2M3)).is_zero_ring
    p = project(a, IdealSpec({1}))
    assert p.kept == (0,) and p.blocks[0].shape == (2, 2) and p.deleted == (1,)


def test_is_fredholm_examples():
    assert is_fredholm(M2M3.identity(), IdealSpec({0}))
    assert not is_fredholm(BlockElement(M2M3, [jordan(0, 2), np.eye(3)]), IdealSpec())
    assert is_fredholm(BlockElement(M2M2, [np.zeros((2, 2)), np.eye(2)]), IdealSpec({0}))


# -- B-Fredholm ------------------------------------------------------------------------


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**31))
def test_every_element_b_fredholm(seed):
    rng = np.random.default_rng(seed)
    alg = random_algebra(rng)
    a = random_block_element(rng, alg)
    rep = is_b_fredholm(a, random_ideal(rng, alg))
    assert rep.b_fredholm and rep.witness_n >= 1 and rep.witness_c is not None
    if rep.fredholm:
        assert rep.b_fredholm
    if rep.b_weyl:
        assert rep.b_fredholm


def test_b_fredholm_2x2_brute_force(rng):
    """Each 2x2 block admits b with bab = b, ab = ba, a^(k+1) b = a^k (Drazin axioms)."""
    for a in (jordan(0, 2), np.diag([0.0, 3.0]), np.array([[1.0, 1.0], [1.0, 1.0]]), jordan(2, 2)):
        res = drazin_inverse(a)
        b, k = res.inverse, res.drazin_index
        assert np.allclose(b @ a @ b, b) and np.allclose(a @ b, b @ a)
        assert np.allclose(np.linalg.matrix_power(a, k + 1) @ b, np.linalg.matrix_power(a, k))


def test_invertible_element():
    a = BlockElement(M2M3, [np.diag([1.0, 2.0]), np.diag([3.0, 4.0, 5.0])])
    rep = classify(a, IdealSpec())
    assert rep.fredholm and rep.generalized_fredholm and rep.b_fredholm and rep.b_weyl
    assert abs(rep.index) < 1e-12 and rep.witness_n == 1


def test_nilpotent_single_block():
    a = BlockElement(BlockAlgebra((3,)), [jordan(0, 3)])
    rep = classify(a, IdealSpec())
    assert not rep.fredholm and rep.b_fredholm
    assert rep.witness_n == 3


def test_quotient_sees_only_kept_block(rng):
    a = BlockElement(M2M2, [jordan(0, 2), sampling.complex_gaussian(rng, (2, 2))])
    rep = classify(a, IdealSpec({1}))
    assert rep.b_fredholm and rep.witness_n == 2 and not rep.generalized_fredholm


# -- generalized Fredholm ------------------------------------------------------------------


def test_generalized_fredholm_idempotent():
    a = BlockElement(BlockAlgebra((2,)), [np.diag([1.0, 0.0])])
    ok, c = is_generalized_fredholm(a)
    assert ok
    x, b = a.blocks[0], c.blocks[0]
    assert np.allclose(x @ b @ x, x)
    assert abs(np.linalg.det(np.eye(2) - x @ b - b @ x)) > 0.5


def test_generalized_fredholm_invertible(rng):
    x = sampling.invertible_core(rng, 3)
    ok, c = is_generalized_fredholm(BlockElement(BlockAlgebra((3,)), [x]))
    assert ok and np.allclose(c.blocks[0], np.linalg.inv(x))


def test_generalized_fredholm_jordan_false():
    assert is_generalized_fredholm(BlockElement(BlockAlgebra((2,)), [jordan(0, 2)]))[0] is False


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**31), kind=st.integers(0, 3))
def test_generalized_fredholm_2x2_brute_force(seed, kind):
    rng = np.random.default_rng(seed)
    x = [sampling.complex_gaussian(rng, (2, 2)),
         sampling.nilpotent(rng, 2, 2),
         np.outer(sampling.complex_gaussian(rng, 2), sampling.complex_gaussian(rng, 2)),
         np.zeros((2, 2))][kind]
    got, _ = is_generalized_fredholm(BlockElement(BlockAlgebra((2,)), [x]))
    assert got == brute_generalized_fredholm(x, rng)


# -- witness route, classify ---------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**31))
def test_witness_route_matches_direct(seed):
    rng = np.random.default_rng(seed)
    alg = random_algebra(rng)
    a = random_block_element(rng, alg)
    ideal = random_ideal(rng, alg)
    rep = is_b_fredholm(a, ideal)
    n, c = witness_route(a, ideal)
    assert n == rep.witness_n
    an = a.power(n)
    for i in ideal.kept(alg):
        x, ci = an.blocks[i], c.blocks[i]
        assert np.allclose(x @ ci @ x, x, atol=1e-7 * max(1, np.linalg.norm(x)) ** 2)


def test_classify_full_ideal(rng):
    a = random_block_element(rng, M2M3)
    rep = classify(a, IdealSpec.full(M2M3))
    assert rep.fredholm and rep.b_fredholm and rep.witness_n == 1


# -- trace and index ---------------------------------------------------------------------


def test_socle_trace_rank_one_idempotent(rng):
    v, w = sampling.complex_gaussian(rng, 3), sampling.complex_gaussian(rng, 3)
    p = np.outer(v, w.conj()) / (w.conj() @ v)
    a = BlockElement(M2M3, [np.zeros((2, 2)), p])
    assert np.isclose(socle_trace(a, IdealSpec({1})), 1.0)


def test_socle_trace_zero_and_diag():
    assert socle_trace(M2M3.zero(), IdealSpec({1})) == 0
    a = BlockElement(M2M2, [np.zeros((2, 2)), np.diag([2.0, 3.0])])
    assert np.isclose(socle_trace(a, IdealSpec({1})), 5.0)


def test_socle_trace_outside_ideal():
    with pytest.raises(DomainError):
        socle_trace(M2M3.identity(), IdealSpec({1}))


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**31))
def test_index_zero_and_lift_independent(seed):
    rng = np.random.default_rng(seed)
    alg = random_algebra(rng)
    a = random_block_element(rng, alg)
    ideal = random_ideal(rng, alg)
    fill = [sampling.complex_gaussian(rng, (n, n)) for n in alg.block_sizes]
    i0, i1 = index(a, ideal), index(a, ideal, ideal_fill=fill)
    assert abs(i0) <= 1e-10 and abs(i1 - i0) <= 1e-10


def test_index_invertible(rng):
    a = BlockElement(M2M3, [sampling.invertible_core(rng, 2), sampling.invertible_core(rng, 3)])
    assert index(a, IdealSpec()) == 0


# -- B-Weyl decomposition ------------------------------------------------------------------


def test_decompose_invertible(rng):
    a = BlockElement(M2M3, [sampling.invertible_core(rng, 2), sampling.invertible_core(rng, 3)])
    b, c = b_weyl_decompose(a, IdealSpec())
    assert b.allclose(a, 0) and c.allclose(M2M3.zero(), 0)


def test_decompose_full_ideal(rng):
    a = random_block_element(rng, M2M3)
    b, c = b_weyl_decompose(a, IdealSpec.full(M2M3))
    assert b.allclose(M2M3.zero(), 0) and c.allclose(a, 0)


def test_decompose_jordan(rng):
    x = sampling.complex_gaussian(rng, (2, 2))
    a = BlockElement(M2M2, [jordan(0, 2), x])
    b, c = b_weyl_decompose(a, IdealSpec({1}))
    assert np.array_equal(b.blocks[0], jordan(0, 2)) and np.all(b.blocks[1] == 0)
    assert np.all(c.blocks[0] == 0) and np.array_equal(c.blocks[1], x)
    inv, k, res = verify_drazin_element(b)
    assert k == 2 and max(res.values()) <= 1e-12


# -- spectra ------------------------------------------------------------------------------


def test_fredholm_spectrum_examples():
    assert np.allclose(fredholm_spectrum(M2M3.identity(), IdealSpec()), [1])
    assert fredholm_spectrum(M2M3.identity(), IdealSpec.full(M2M3)) == ()
    a = BlockElement(BlockAlgebra((2, 1)), [np.diag([1.0, 2.0]), np.diag([3.0])])
    assert np.allclose(fredholm_spectrum(a, IdealSpec()), [1, 2, 3])
    assert b_fredholm_spectrum(a, IdealSpec()) == ()


def test_spectral_mapping_examples():
    a = BlockElement(BlockAlgebra((2,)), [np.diag([1.0, -1.0])])
    rep = spectral_mapping_check(a, IdealSpec(), [0, 0, 1])
    assert rep.passed and hausdorff(rep.lhs, [1]) < 1e-12 and hausdorff(rep.rhs, [1]) < 1e-12
    assert spectral_mapping_check(a, IdealSpec(), [0, 1]).passed
    assert rep.bf_lhs == () and rep.bf_rhs == ()


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**31))
def test_spectral_mapping_property(seed):
    rng = np.random.default_rng(seed)
    alg = random_algebra(rng)
    a = random_pool_element(rng, alg)
    f = list(rng.integers(-2, 3, size=3)) + [1]
    assert spectral_mapping_check(a, random_ideal(rng, alg), f).passed


def test_hausdorff():
    assert hausdorff([], []) == 0.0
    assert hausdorff([0], []) == float("inf")
    assert hausdorff([0, 1], [0]) == 1.0
