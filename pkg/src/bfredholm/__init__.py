"""B-Fredholm elements of rings and algebras, computed in two concrete models.

* :mod:`bfredholm.matrix`: Drazin inverses, numerical rank and eigenvalue
  multisets for dense complex matrices.
* :mod:`bfredholm.semisimple`: block algebras ``M_n1 + ... + M_nk`` with
  ideals given by block subsets; Fredholm, B-Fredholm and B-Weyl tests,
  trace and index.
* :mod:`bfredholm.toeplitz`: Toeplitz operators with Laurent-polynomial
  symbols plus finite-rank perturbations.
"""

__version__ = "0.1.0"

from .errors import (
    BFError,
    BoundaryAmbiguousError,
    ConsistencyError,
    ConvergenceError,
    DomainError,
    EquivalenceViolation,
    InputError,
    NumericalInstabilityError,
)
from .matrix import (
    DrazinResult,
    EigenMultiset,
    RankDecision,
    core_nilpotent_split,
    drazin_inverse,
    eigen_multiset,
    numerical_rank,
)
from .semisimple import (
    BlockAlgebra,
    BlockElement,
    ClassificationReport,
    IdealSpec,
    b_weyl_decompose,
    classify,
    index,
    is_b_fredholm,
    is_fredholm,
    is_generalized_fredholm,
    project,
    socle_trace,
    spectral_mapping_check,
)
from .properties import check_closure_props, check_regularity_axioms
from .toeplitz import (
    LaurentSymbol,
    ToeplitzElement,
    TruncationSeries,
    bf_spectrum_curve,
    bilateral_shift_example,
    classify_operator,
    kernel_cokernel_oracle,
    matvec_truncated,
    spectral_mapping_bf_check,
    trace_commutator_index,
    winding_index,
)
