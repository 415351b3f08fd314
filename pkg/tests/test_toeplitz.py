import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bfredholm import sampling
from bfredholm.errors import BoundaryAmbiguousError, DomainError, InputError
from bfredholm.toeplitz import (
    LaurentSymbol,
    ToeplitzElement,
    bf_spectrum_curve,
    bilateral_shift_example,
    classify_operator,
    commutator_trace,
    curve_winding,
    inverse_symbol,
    kernel_cokernel_oracle,
    matvec_truncated,
    membership_witness,
    operator_b_fredholm,
    spectral_mapping_bf_check,
    symbol_power_discrepancy,
    trace_commutator_index,
    winding_index,
)

Z = LaurentSymbol({1: 1})
SHIFT = ToeplitzElement(Z)


def random_symbol(rng, max_deg=6):
    """``c z^-p prod (z - r)`` with zeros well away from the circle."""
    deg = int(rng.integers(1, max_deg + 1))
    mod = np.where(rng.random(deg) < 0.5, rng.uniform(0.1, 0.6, deg), rng.uniform(1.6, 4.0, deg))
    roots = mod * np.exp(2j * np.pi * rng.random(deg))
    pole = int(rng.integers(0, deg + 1))
    poly = np.poly(roots)[::-1]
    return LaurentSymbol.from_poly(poly / np.abs(poly).max(), offset=-pole), roots, pole


# -- symbols ---------------------------------------------------------------------------


def test_symbol_validation():
    with pytest.raises(InputError):
        LaurentSymbol({33: 1})
    with pytest.raises(InputError):
        LaurentSymbol({0: float("nan")})
    assert LaurentSymbol({0: 0, 2: 1}).coeffs == {2: 1}


def test_symbol_algebra():
    s = LaurentSymbol({1: 1, -1: 1})
    z = np.exp(1j * np.linspace(0, 6, 7))
    assert np.allclose((s * s)(z), s(z) ** 2)
    assert np.allclose(s.compose([0, -1, 1])(z), s(z) ** 2 - s(z))
    assert np.allclose((s - 2)(z), s(z) - 2)
    assert s.conj_reflect().coeffs == {-1: 1, 1: 1}


def test_element_validation():
    with pytest.raises(InputError):
        ToeplitzElement(Z, np.zeros((65, 65)))
    with pytest.raises(InputError):
        ToeplitzElement.from_json({"coeffs": {"1": [1, 0]}, "space": "torus"})


def test_element_json_round_trip(rng):
    t = ToeplitzElement(LaurentSymbol({-1: 1 + 2j, 3: -1}), sampling.complex_gaussian(rng, (3, 3)))
    back = ToeplitzElement.from_json(t.to_json())
    assert back.symbol == t.symbol and np.array_equal(back.perturbation, t.perturbation)


def test_section_matches_definition():
    t = ToeplitzElement(LaurentSymbol({-1: 2, 0: 3, 1: 5}))
    sec = t.section(4)
    assert sec[1, 0] == 5 and sec[0, 1] == 2 and sec[2, 2] == 3 and sec[3, 0] == 0


# -- matvec -------------------------------------------------------------------------------


def test_matvec_shift():
    assert np.array_equal(matvec_truncated(SHIFT, [1], 4), [0, 1, 0, 0])


def test_matvec_zero_symbol(rng):
    f = sampling.complex_gaussian(rng, (3, 3))
    v = sampling.complex_gaussian(rng, 3)
    out = matvec_truncated(ToeplitzElement(LaurentSymbol({}), f), v, 5)
    assert np.allclose(out[:3], f @ v) and np.all(out[3:] == 0)


def test_matvec_two_sided():
    out = matvec_truncated(ToeplitzElement(LaurentSymbol({1: 1, -1: 1})), [1], 4)
    assert np.array_equal(out, [0, 1, 0, 0])


def test_matvec_too_small():
    with pytest.raises(InputError):
        matvec_truncated(ToeplitzElement(Z, np.eye(3)), [1], 4)


# -- winding index ----------------------------------------------------------------------


@pytest.mark.parametrize("sym, expected", [
    (Z, -1), (LaurentSymbol({0: -2, 1: 1}), 0), (LaurentSymbol({2: 1}), -2),
    (LaurentSymbol({-1: 1}), 1), (LaurentSymbol({0: 5}), 0),
    (LaurentSymbol({-2: 1, 0: -3.5, 1: 1}), 0),
])
def test_winding_index_examples(sym, expected):
    assert winding_index(sym) == (True, expected)


def test_winding_boundary_ambiguous():
    with pytest.raises(BoundaryAmbiguousError) as exc:
        winding_index(LaurentSymbol({0: -1, 1: 1}))
    assert exc.value.roots


def test_winding_zero_symbol():
    with pytest.raises(InputError):
        winding_index(LaurentSymbol({}))


def test_winding_repeated_roots():
    # (z - 0.5)^3 (z - 2)^2: split roots must not drift across the circle
    poly = np.poly([0.5, 0.5, 0.5, 2, 2])[::-1]
    assert winding_index(LaurentSymbol.from_poly(poly)) == (True, -3)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**31))
def test_winding_matches_zero_count_and_curve(seed):
    sym, roots, pole = random_symbol(np.random.default_rng(seed))
    expected = -(int(np.sum(np.abs(roots) < 1)) - pole)
    assert winding_index(sym) == (True, expected)
    assert curve_winding(sym) == -expected


def test_winding_matches_oracle_corpus():
    rng = np.random.default_rng(11)
    for _ in range(200):
        sym, _, _ = random_symbol(rng)
        series = kernel_cokernel_oracle(ToeplitzElement(sym), sizes=(48, 64, 80))
        assert series.stabilized
        assert series.index == winding_index(sym)[1]


# -- oracle -------------------------------------------------------------------------------


def test_oracle_shift():
    s = kernel_cokernel_oracle(SHIFT, sizes=(8, 16, 32))
    assert s.kernel_dims == [0, 0, 0] and s.cokernel_dims == [1, 1, 1] and s.stabilized


def test_square_sections_mislead_for_shift():
    sec = SHIFT.section(8)
    assert np.allclose(np.linalg.matrix_power(sec, 8), 0)
    assert 8 - np.linalg.matrix_rank(sec) == 1  # ker = coker = 1 on the square section


def test_oracle_invertible_symbol():
    s = kernel_cokernel_oracle(ToeplitzElement(LaurentSymbol({0: -2, 1: 1})), sizes=(8, 16, 32))
    assert s.kernel_dims == [0, 0, 0] and s.cokernel_dims == [0, 0, 0]


def test_oracle_perturbed_shift_keeps_index():
    f = np.zeros((2, 2))
    f[1, 0] = -1.0  # cancels S e0, so e0 enters the kernel
    s = kernel_cokernel_oracle(ToeplitzElement(Z, f), sizes=(8, 16, 32))
    assert s.kernel_dims[-1] == 1 and s.cokernel_dims[-1] == 2 and s.index == -1


def test_oracle_not_stabilized_reported():
    s = kernel_cokernel_oracle(ToeplitzElement(LaurentSymbol({-1: 1, 0: -0.999})), sizes=(8, 16, 32))
    assert s.index is None or s.stabilized


def test_oracle_input_errors():
    with pytest.raises(InputError):
        kernel_cokernel_oracle(SHIFT, sizes=(16, 8))
    with pytest.raises(InputError):
        kernel_cokernel_oracle(ToeplitzElement(Z, space="bilateral"))


# -- classification --------------------------------------------------------------------


def test_classify_shift():
    rep = classify_operator(SHIFT)
    assert rep.fredholm and rep.index == -1 and not rep.b_weyl


def test_classify_finite_rank_only(rng):
    rep = classify_operator(ToeplitzElement(LaurentSymbol({}), sampling.complex_gaussian(rng, (4, 4))))
    assert rep.b_fredholm and not rep.fredholm


def test_classify_circle_zero():
    rep = classify_operator(ToeplitzElement(LaurentSymbol({0: -1, 1: 1})))
    assert not rep.fredholm and not rep.b_fredholm


def test_classify_bilateral_index_zero():
    rep = classify_operator(ToeplitzElement(Z, space="bilateral"))
    assert rep.fredholm and rep.index == 0


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**31), rank=st.integers(1, 3))
def test_finite_rank_perturbation_invariance(seed, rank):
    rng = np.random.default_rng(seed)
    sym, _, _ = random_symbol(rng)
    size = int(rng.integers(rank, 8))
    f = sampling.complex_gaussian(rng, (size, rank)) @ sampling.complex_gaussian(rng, (rank, size))
    a, b = classify_operator(ToeplitzElement(sym)), classify_operator(ToeplitzElement(sym, f))
    assert (a.fredholm, a.b_fredholm, a.b_weyl, a.index) == (b.fredholm, b.b_fredholm, b.b_weyl, b.index)


def test_perturbation_invariance_against_oracle(rng):
    f = sampling.complex_gaussian(rng, (5, 3)) @ sampling.complex_gaussian(rng, (3, 5))
    t = ToeplitzElement(LaurentSymbol({2: 1, 0: 0.1}), f)
    assert kernel_cokernel_oracle(t, sizes=(32, 48, 64)).index == classify_operator(t).index == -2


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**31))
def test_index_additive_on_products(seed):
    rng = np.random.default_rng(seed)
    s1, _, _ = random_symbol(rng, 3)
    s2, _, _ = random_symbol(rng, 3)
    i = lambda s: winding_index(s)[1]
    assert i(s1 * s2) == i(s1) + i(s2)


def test_sum_converse_b_weyl(rng):
    sym = LaurentSymbol.from_poly(np.poly([2.0, -1.5j])[::-1])
    for _ in range(10):
        f = sampling.complex_gaussian(rng, (6, 3)) @ sampling.complex_gaussian(rng, (3, 6))
        rep = classify_operator(ToeplitzElement(sym, f))
        assert rep.b_weyl and rep.index == 0


def test_operator_b_fredholm(rng):
    assert operator_b_fredholm(SHIFT)[0]
    ok, detail = operator_b_fredholm(ToeplitzElement(LaurentSymbol({}), sampling.nilpotent(rng, 4, 2)))
    assert ok and detail["n"] == 2 and detail["core_dim"] == 0
    assert not operator_b_fredholm(ToeplitzElement(LaurentSymbol({0: -1, 1: 1})))[0]


# -- trace-commutator index --------------------------------------------------------------


def test_shift_commutator_is_rank_one():
    back = ToeplitzElement(LaurentSymbol({-1: 1}))
    n = 10
    big = 16
    a, b = SHIFT.section(big), back.section(big)
    comm = (a @ b - b @ a)[:n, :n]
    ref = np.zeros((n, n))
    ref[0, 0] = -1
    assert np.array_equal(comm, ref)
    assert commutator_trace(SHIFT, back, n) == -1


def test_inverse_symbol_of_shift():
    inv = inverse_symbol(Z, 4)
    assert abs(inv.coeffs[-1] - 1) < 1e-14
    assert all(abs(c) < 1e-14 for d, c in inv.coeffs.items() if d != -1)


@pytest.mark.parametrize("sym, expected", [(Z, -1), (LaurentSymbol({0: -2, 1: 1}), 0), (LaurentSymbol({2: 1}), -2)])
def test_trace_commutator_examples(sym, expected):
    res = trace_commutator_index(ToeplitzElement(sym), 32)
    assert abs(res.value - expected) < 1e-6 and res.n0 <= 512


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**31))
def test_trace_commutator_converges_to_winding(seed):
    sym, _, _ = random_symbol(np.random.default_rng(seed), 4)
    res = trace_commutator_index(ToeplitzElement(sym), 64)
    assert abs(res.ladder[res.n0] - winding_index(sym)[1]) < 1e-6


def test_trace_commutator_with_perturbation(rng):
    f = sampling.complex_gaussian(rng, (3, 3))
    res = trace_commutator_index(ToeplitzElement(LaurentSymbol({2: 1}), f), 32)
    assert abs(res.value + 2) < 1e-6


def test_trace_commutator_requires_fredholm():
    with pytest.raises(DomainError):
        trace_commutator_index(ToeplitzElement(LaurentSymbol({0: -1, 1: 1})), 16)


# -- spectra and mapping ------------------------------------------------------------------


def test_curve_unit_circle():
    c = bf_spectrum_curve(SHIFT, 64)
    assert np.allclose(np.abs(c.sigma_f), 1) and np.array_equal(c.sigma_f, c.sigma_bf) and c.coincide


def test_curve_cosine():
    c = bf_spectrum_curve(ToeplitzElement(LaurentSymbol({1: 1, -1: 1})), 64)
    assert np.allclose(c.sigma_f.imag, 0, atol=1e-14) and np.isclose(c.sigma_f.real.max(), 2)


def test_curve_constant_rejected():
    with pytest.raises(InputError):
        bf_spectrum_curve(ToeplitzElement(LaurentSymbol({0: 3})), 8)


@pytest.mark.parametrize("sym", [Z, LaurentSymbol({1: 1, -1: 1}), LaurentSymbol({1: 2, 2: 1})])
def test_sigma_f_equals_sigma_bf_by_sweep(sym):
    """classify_operator(t - lam) fails exactly on the curve (checked at 1e-3 offsets)."""
    t = ToeplitzElement(sym)
    theta = 2 * np.pi * np.arange(32) / 32 + 0.1
    z = np.exp(1j * theta)
    on = sym(z)
    for lam in on:
        rep = classify_operator(t.minus(lam))
        assert not rep.fredholm and not rep.b_fredholm
    dense = sym(np.exp(2j * np.pi * np.arange(20000) / 20000))
    rng = np.random.default_rng(0)
    probes = rng.uniform(-4, 4, 200) + 1j * rng.uniform(-4, 4, 200)
    for lam in probes:
        d = np.abs(dense - lam).min()
        if d < 1e-3:
            continue
        rep = classify_operator(t.minus(lam))
        assert rep.fredholm and rep.b_fredholm


@pytest.mark.parametrize("f", [[0, 1], [0, 0, 1], [0, -1, 1], [0, 0, 0, 1]])
@pytest.mark.parametrize("sym", [Z, LaurentSymbol({1: 1, -1: 1}), LaurentSymbol({1: 2, 2: 1})])
def test_spectral_mapping_curves(f, sym):
    rep = spectral_mapping_bf_check(ToeplitzElement(sym), f)
    assert rep.passed and rep.hausdorff <= 1e-6


def test_square_discrepancy_rank():
    sym = LaurentSymbol({1: 1, -1: 1})
    rank, bound = symbol_power_discrepancy(sym, [0, 0, 1])
    assert rank == 1 and bound == 1
    assert symbol_power_discrepancy(Z, [0, 0, 1]) == (0, 0)


def test_mapping_rejects_perturbation():
    with pytest.raises(InputError):
        spectral_mapping_bf_check(ToeplitzElement(Z, np.eye(2)), [0, 0, 1])
    with pytest.raises(InputError):
        spectral_mapping_bf_check(SHIFT, [3])


# -- bilateral shift ---------------------------------------------------------------------


def test_membership_inside_and_outside():
    inside = membership_witness(0.5 + 0j)
    outside = membership_witness(2.0 + 0j)
    assert inside["verdict"] == "not_member" and abs(inside["decay_rate"] - 0.5) < 1e-6
    assert outside["verdict"] == "member" and abs(outside["decay_rate"] - 0.5) < 1e-6


def test_membership_zero_is_operator_invertible():
    w = membership_witness(0j)
    assert w["invertible_operator"] and w["verdict"] == "not_member"


def test_bilateral_report():
    rep = bilateral_shift_example(0.5, 64)
    assert rep.operator_invertible and rep.conclusion == "consistent"
    assert rep.zero_non_isolated == "non_isolated" and len(rep.points) == 64
    for p in rep.points:
        r = abs(complex(*p["lambda"]))
        assert p["in_spectrum_A"] == (r < 1)
    assert rep.to_json()["conclusion"] == "consistent"


def test_bilateral_rejects_radius():
    with pytest.raises(InputError):
        bilateral_shift_example(1.0)
