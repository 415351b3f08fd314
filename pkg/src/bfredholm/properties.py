"""Randomised property harnesses over the block-algebra model.

Regularity axioms (power axiom, commuting-factorisation axiom), closure of
B-Fredholm elements under sums, products and ideal perturbations.
"""

from dataclasses import dataclass, field

import numpy as np

from . import sampling
from .matrix import DEFAULT_TOL, opnorm
from .semisimple import BlockAlgebra, BlockElement, IdealSpec, classify, is_fredholm, quotient_drazin

# eigenvalues drawn from a small set so polynomial roots can hit them exactly
ROOT_POOL = (0.0, 1.0, -1.0, 2.0, 1j, -2j)


def _pool_block(rng, n):
    diag = rng.choice(np.array(ROOT_POOL, dtype=complex), size=n)
    order = np.argsort(diag.real + 10 * diag.imag, kind="stable")
    diag = diag[order]
    t = np.diag(diag)
    # superdiagonal couplings only inside equal-eigenvalue runs keep Jordan structure
    for i in range(n - 1):
        if diag[i] == diag[i + 1] and rng.random() < 0.6:
            t[i, i + 1] = 1.0
    s = sampling.well_conditioned(rng, n, spread=3.0)
    return s @ t @ np.linalg.inv(s)


def random_pool_element(rng, algebra):
    """Block element whose blocks have eigenvalues in ``ROOT_POOL`` (possibly defective)."""
    return BlockElement(algebra, [_pool_block(rng, n) for n in algebra.block_sizes])


def random_block_element(rng, algebra):
    """Generic-or-structured random element: each block from ``sampling.random_square``."""
    return BlockElement(algebra, [sampling.random_square(rng, n) for n in algebra.block_sizes])


def random_algebra(rng, max_blocks=3, max_dim=6):
    sizes = [int(rng.integers(1, max_dim + 1)) for _ in range(int(rng.integers(1, max_blocks + 1)))]
    return BlockAlgebra(sizes)


def random_ideal(rng, algebra):
    return IdealSpec(frozenset(i for i in range(len(algebra)) if rng.random() < 0.4))


def fredholm_predicate(ideal, tol=DEFAULT_TOL):
    return lambda a, scale=0.0: is_fredholm(a, ideal, tol, scale)


def b_fredholm_predicate(ideal, tol=DEFAULT_TOL):
    def pred(a, scale=0.0):
        quotient_drazin(a, ideal, tol)  # raises if any surviving block fails
        return True
    return pred


PREDICATES = {"fredholm": fredholm_predicate, "b_fredholm": b_fredholm_predicate}


@dataclass
class SampleConfig:
    block_sizes: tuple = (2, 3, 1)
    ideal: frozenset = frozenset({1})
    samples: int = 500
    seed: int = 0
    max_power: int = 4


@dataclass
class RegularityReport:
    predicate: str
    power_checks: int = 0
    commuting_checks: int = 0
    filtered_out: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations

    def to_json(self):
        return {"predicate": self.predicate, "power_checks": self.power_checks,
                "commuting_checks": self.commuting_checks, "filtered_out": self.filtered_out,
                "violations": self.violations, "passed": self.passed}


def check_regularity_axioms(predicate, config=None, name=None):
    """Run both regularity axioms on seeded samples.

    ``predicate`` is a callable ``(BlockElement, scale) -> bool`` or one of
    the names in ``PREDICATES`` (bound to ``config.ideal``). ``scale`` is the
    product of the norms of the factors an element was computed from, i.e.
    its rounding-noise scale. Violations are recorded, never raised.
    Non-emptiness is checked on the identity.
    """
    config = config or SampleConfig()
    algebra = BlockAlgebra(config.block_sizes)
    ideal = IdealSpec(config.ideal).check(algebra)
    if isinstance(predicate, str):
        name = name or predicate
        predicate = PREDICATES[predicate](ideal)
    report = RegularityReport(name or getattr(predicate, "__name__", "predicate"))
    rng = np.random.default_rng(config.seed)

    if not predicate(algebra.identity(), 1.0):
        report.violations.append({"axiom": "nonempty", "detail": "identity not in R"})

    for s in range(config.samples):
        a = random_pool_element(rng, algebra)
        n = int(rng.integers(1, config.max_power + 1))
        in_a, in_an = predicate(a, a.norm()), predicate(a.power(n), a.norm() ** n)
        report.power_checks += 1
        if in_a != in_an:
            report.violations.append({"axiom": "power", "sample": s, "n": n,
                                      "a_in_R": bool(in_a), "a^n_in_R": bool(in_an)})

        m = random_pool_element(rng, algebra)
        p, q = sampling.coprime_poly_pair(rng, ROOT_POOL)
        u, v = sampling.bezout(p, q)
        ea, eb, ec, ed = m.poly(p), m.poly(q), m.poly(u), m.poly(v)
        bez = ea @ ec + eb @ ed - algebra.identity()
        scale = 1.0 + max(ea.norm() * ec.norm(), eb.norm() * ed.norm())
        if max(opnorm(blk) for blk in bez.blocks) > 1e-8 * scale:
            report.filtered_out += 1
            continue
        report.commuting_checks += 1
        lhs = predicate(ea @ eb, ea.norm() * eb.norm())
        rhs = predicate(ea, ea.norm()) and predicate(eb, eb.norm())
        if lhs != rhs:
            report.violations.append({"axiom": "commuting", "sample": s,
                                      "ab_in_R": bool(lhs), "a_and_b_in_R": bool(rhs)})
    return report


@dataclass
class ClosureReport:
    items: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(v["status"] != "fail" for v in self.items.values())

    def to_json(self):
        return {"items": self.items, "passed": self.passed}


def check_closure_props(a1, a2, ideal=None, tol=DEFAULT_TOL):
    """Closure of B-Fredholm elements mod J under the three operations.

    (i) ``a1 + a2`` when ``a1 a2`` and ``a2 a1`` lie in J; (ii) ``a1 a2``
    when they commute; (iii) ``a1 + j`` for ``j`` the J-part of ``a2``.
    Items whose hypothesis fails are reported as skipped.
    """
    ideal = ideal or IdealSpec()
    from .semisimple import in_ideal, lift, project

    report = ClosureReport()
    for name, x in (("a1", a1), ("a2", a2)):
        if not classify(x, ideal, tol).b_fredholm:
            report.items["precondition"] = {"status": "skipped", "reason": f"{name} not B-Fredholm"}
            return report
    scale = a1.norm() * a2.norm()

    def verdict(x):
        return "pass" if classify(x, ideal, tol).b_fredholm else "fail"

    if in_ideal(a1 @ a2, ideal, 1e-8, scale) and in_ideal(a2 @ a1, ideal, 1e-8, scale):
        report.items["sum"] = {"status": verdict(a1 + a2)}
    else:
        report.items["sum"] = {"status": "skipped", "reason": "a1 a2 or a2 a1 not in J"}

    comm = a1 @ a2 - a2 @ a1
    if max(opnorm(b) for b in comm.blocks) <= 1e-8 * max(scale, 1.0):
        report.items["product"] = {"status": verdict(a1 @ a2)}
    else:
        report.items["product"] = {"status": "skipped", "reason": "a1 and a2 do not commute"}

    j = a2 - lift(a2.algebra, ideal, project(a2, ideal).blocks)
    report.items["ideal_perturbation"] = {"status": verdict(a1 + j)}
    return report
