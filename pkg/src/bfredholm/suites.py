"""Seeded verification suites shared by ``bfred verify`` and the test suite.

Each suite returns a JSON-ready dict with a ``passed`` flag; violations are
collected, never raised, except for :class:`EquivalenceViolation`, which
signals an internal inconsistency and propagates.
"""

import numpy as np

from . import sampling
from .errors import NumericalInstabilityError
from .matrix import drazin_inverse, drazin_residuals
from .properties import (
    SampleConfig,
    check_closure_props,
    check_regularity_axioms,
    random_algebra,
    random_block_element,
    random_ideal,
    random_pool_element,
)
from .semisimple import (
    BlockAlgebra,
    IdealSpec,
    b_weyl_decompose,
    classify,
    index,
    spectral_mapping_check,
    verify_drazin_element,
)
from .toeplitz import (
    LaurentSymbol,
    ToeplitzElement,
    bilateral_shift_example,
    classify_operator,
    kernel_cokernel_oracle,
    operator_b_fredholm,
    spectral_mapping_bf_check,
    trace_commutator_index,
    winding_index,
)

MAPPING_FUNCTIONS = {"z^2": [0, 0, 1], "z^2-z": [0, -1, 1], "z^3": [0, 0, 0, 1]}
MAPPING_SYMBOLS = {
    "z": LaurentSymbol({1: 1}),
    "z+1/z": LaurentSymbol({1: 1, -1: 1}),
    "2z+z^2": LaurentSymbol({1: 2, 2: 1}),
}
INDEX_SYMBOLS = {"z": LaurentSymbol({1: 1}), "z^2": LaurentSymbol({2: 1}), "z-2": LaurentSymbol({0: -2, 1: 1})}
INDEX_EXPECTED = {"z": -1, "z^2": -2, "z-2": 0}


def _summary(name, checks, violations, **extra):
    out = {"suite": name, "checks": checks, "violations": violations[:20],
           "violation_count": len(violations), "passed": not violations}
    out.update(extra)
    return out


def drazin_suite(seed=0, samples=1000, max_dim=8, verify_tol=1e-8):
    """Drazin axioms and the splitting/inverse agreement on random matrices."""
    rng = np.random.default_rng(seed)
    bad = []
    worst = 0.0
    for s in range(samples):
        a = sampling.random_square(rng, int(rng.integers(1, max_dim + 1)))
        try:
            res = drazin_inverse(a)
        except NumericalInstabilityError as exc:
            bad.append({"sample": s, "error": str(exc)})
            continue
        r = drazin_residuals(a, res.inverse, res.drazin_index, res.p, res.q)
        if not r["p-ab"] <= verify_tol:
            bad.append({"sample": s, "p-ab": r["p-ab"]})
        worst = max(worst, max(r[k] for k in ("bab-b", "ab-ba", "a^(k+1)b-a^k")))
    if worst > verify_tol:
        bad.append({"worst_residual": worst})
    return _summary("drazin", samples, bad, worst_residual=worst)


def equivalence_suite(seed=0, samples=1000):
    """Quotient-Drazin and witness verdicts on random block elements (``classify`` cross-checks)."""
    rng = np.random.default_rng(seed)
    counts = {}
    for _ in range(samples):
        alg = random_algebra(rng)
        a = random_block_element(rng, alg)
        rep = classify(a, random_ideal(rng, alg))
        counts[rep.witness_n] = counts.get(rep.witness_n, 0) + 1
    return _summary("equivalence", samples, [], witness_n_counts={str(k): v for k, v in sorted(counts.items())})


def regularity_suite(seed=0, samples=500):
    reports = {}
    for name in ("fredholm", "b_fredholm"):
        reports[name] = check_regularity_axioms(name, SampleConfig(samples=samples, seed=seed)).to_json()
    violations = [v for r in reports.values() for v in r["violations"]]
    return _summary("regularity", 2 * samples, violations, predicates=reports)


def closure_suite(seed=0, samples=200):
    rng = np.random.default_rng(seed)
    alg = BlockAlgebra((2, 3, 1))
    ideal = IdealSpec({1})
    tally = {}
    bad = []
    for s in range(samples):
        a1 = random_pool_element(rng, alg)
        # commuting partner half of the time: a polynomial in a1
        a2 = a1.poly(rng.integers(-2, 3, size=3)) if rng.random() < 0.5 else random_pool_element(rng, alg)
        rep = check_closure_props(a1, a2, ideal)
        for key, item in rep.items.items():
            tally.setdefault(key, {}).setdefault(item["status"], 0)
            tally[key][item["status"]] += 1
            if item["status"] == "fail":
                bad.append({"sample": s, "item": key})
    return _summary("closure", samples, bad, tally=tally)


def index_suite(seed=0, samples=300, n=64):
    """Block-model index (always 0, independent of the lift) and Toeplitz integer indices."""
    rng = np.random.default_rng(seed)
    bad = []
    worst = 0.0
    for s in range(samples):
        alg = random_algebra(rng)
        ideal = random_ideal(rng, alg)
        a = random_block_element(rng, alg)
        fill = [sampling.complex_gaussian(rng, (k, k)) for k in alg.block_sizes]
        i0 = index(a, ideal)
        i1 = index(a, ideal, ideal_fill=fill)
        worst = max(worst, abs(i0), abs(i1 - i0))
        if abs(i0) > 1e-10 or abs(i1 - i0) > 1e-10:
            bad.append({"sample": s, "index": [i0.real, i0.imag], "other_lift": [i1.real, i1.imag]})
    toeplitz = {}
    for name, sym in INDEX_SYMBOLS.items():
        t = ToeplitzElement(sym)
        _, w = winding_index(sym)
        oracle = kernel_cokernel_oracle(t)
        tr = trace_commutator_index(t, n)
        toeplitz[name] = {"winding_index": w, "oracle_index": oracle.index,
                          "trace": [tr.value.real, tr.value.imag], "n0": tr.n0}
        exp = INDEX_EXPECTED[name]
        if w != exp or oracle.index != exp or tr.n0 > 512 or abs(tr.value - exp) > 1e-6:
            bad.append({"symbol": name, **toeplitz[name]})
    return _summary("index", samples + len(INDEX_SYMBOLS), bad, worst_block_index=worst, toeplitz=toeplitz)


def mapping_suite(seed=0, samples=300):
    rng = np.random.default_rng(seed)
    bad = []
    worst = 0.0
    for s in range(samples):
        alg = random_algebra(rng)
        a = random_pool_element(rng, alg)
        f = rng.integers(-2, 3, size=int(rng.integers(2, 4)) + 1).astype(complex)
        f[-1] = 1.0
        rep = spectral_mapping_check(a, random_ideal(rng, alg), f, match_tol=1e-8 * max(1.0, a.norm()) ** (len(f) - 1))
        worst = max(worst, rep.hausdorff)
        if not rep.passed:
            bad.append({"sample": s, "hausdorff": rep.hausdorff, "threshold": rep.threshold})
    curves = {}
    for fname, f in MAPPING_FUNCTIONS.items():
        for pname, sym in MAPPING_SYMBOLS.items():
            rep = spectral_mapping_bf_check(ToeplitzElement(sym), f)
            curves[f"{fname} o {pname}"] = rep.to_json()
            if not rep.passed:
                bad.append({"f": fname, "phi": pname, **rep.to_json()})
    return _summary("mapping", samples + len(curves), bad, worst_block_hausdorff=worst, curves=curves)


def _random_finite_rank(rng, size, rank):
    return sampling.complex_gaussian(rng, (size, rank)) @ sampling.complex_gaussian(rng, (rank, size))


def thm31_suite(seed=0, samples=500):
    """``a = b + c`` decomposition in the block model; converse on Toeplitz elements."""
    rng = np.random.default_rng(seed)
    bad = []
    for s in range(samples):
        alg = random_algebra(rng)
        ideal = random_ideal(rng, alg)
        a = random_block_element(rng, alg)
        b, c = b_weyl_decompose(a, ideal)
        _, _, res = verify_drazin_element(b)
        exact = all(np.array_equal(x + y, z) for x, y, z in zip(b.blocks, c.blocks, a.blocks))
        in_j = all(np.all(c.blocks[i] == 0) for i in ideal.kept(alg))
        if not (exact and in_j and max(res[k] for k in ("bab-b", "ab-ba", "a^(k+1)b-a^k")) <= 1e-8):
            bad.append({"sample": s, "exact": exact, "c_in_J": in_j})
    converse = 0
    for s in range(50):
        # invertible symbol of winding 0: zeros outside the disc, poles inside
        outer = 1.5 + rng.random(2)
        sym = LaurentSymbol.from_poly(np.poly(outer)[::-1]) * (1 + rng.random())
        size = int(rng.integers(3, 9))
        t = ToeplitzElement(sym, _random_finite_rank(rng, size, int(rng.integers(1, 4))))
        rep = classify_operator(t)
        converse += 1
        if not (rep.b_weyl and rep.index == 0):
            bad.append({"converse_sample": s, "b_weyl": rep.b_weyl, "index": rep.index})
    return _summary("thm31", samples + converse, bad)


def example_suite(seed=0, samples=64):
    """Finite-rank-only element and the bilateral-shift counterexample."""
    rng = np.random.default_rng(seed)
    bad = []
    f = _random_finite_rank(rng, 5, 2)
    t = ToeplitzElement(LaurentSymbol({}), f)
    rep = classify_operator(t)
    op_ok, detail = operator_b_fredholm(t)
    if not (rep.b_fredholm and not rep.fredholm and op_ok):
        bad.append({"finite_rank": rep.to_json()})
    bil = bilateral_shift_example(0.5, samples)
    false_out = [p for p in bil.points if abs(complex(*p["lambda"])) <= 0.9 and p["in_spectrum_A"] is False]
    false_in = [p for p in bil.points if abs(complex(*p["lambda"])) >= 1.5 and p["in_spectrum_A"] is True]
    if bil.conclusion != "consistent" or false_out or false_in:
        bad.append({"bilateral": bil.conclusion, "false_not_in": len(false_out), "false_in": len(false_in)})
    return _summary("example", 1 + len(bil.points), bad,
                    finite_rank={"b_fredholm": rep.b_fredholm, "fredholm": rep.fredholm,
                                 "operator_b_fredholm": op_ok, "detail": detail},
                    bilateral={"operator_invertible": bil.operator_invertible,
                               "zero_non_isolated": bil.zero_non_isolated,
                               "conclusion": bil.conclusion, "grid": len(bil.points)})


SUITES = {
    "regularity": regularity_suite,
    "closure": closure_suite,
    "index": index_suite,
    "mapping": mapping_suite,
    "thm31": thm31_suite,
    "example": example_suite,
    "drazin": drazin_suite,
    "equivalence": equivalence_suite,
}
