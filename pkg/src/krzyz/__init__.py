"""Numerical toolkit for the Krzyz coefficient problem.

Building blocks for studying max |f_n| over bounded nonvanishing functions:
truncated power series, Caratheodory-Toeplitz coefficient-body tests,
Riesz-Fejer spectral factorization, candidate extremal functions built from
Herglotz-kernel atoms, their variational optimality conditions, and a
deterministic multi-start search that reproduces the sharp bound 2/e for
small indices.
"""

from . import errors
from .caratheodory import MinorReport, membership, recover_atoms, toeplitz_minors
from .extremal import (
    Candidate,
    ConditionReport,
    build_candidate,
    reference_extremal,
    rotate_to_positive,
    verify_conditions,
)
from .optimize import (
    TWO_OVER_E,
    RestartRecord,
    SearchConfig,
    SearchResult,
    gradient,
    objective,
    search,
)
from .series import (
    AtomSet,
    CoeffVec,
    herglotz_coeffs,
    kernel_coeffs,
    pairing,
    series_exp_neg,
    series_product,
)
from .trigpoly import (
    SpectralFactor,
    TrigPoly,
    autocorrelate,
    factor_residual,
    fejer_riesz,
    from_poly_real_part,
    global_min,
    is_extremal_form,
)

__version__ = "0.1.0"

__all__ = [
    "AtomSet",
    "Candidate",
    "CoeffVec",
    "ConditionReport",
    "MinorReport",
    "RestartRecord",
    "SearchConfig",
    "SearchResult",
    "SpectralFactor",
    "TrigPoly",
    "TWO_OVER_E",
    "autocorrelate",
    "build_candidate",
    "errors",
    "factor_residual",
    "fejer_riesz",
    "from_poly_real_part",
    "global_min",
    "gradient",
    "herglotz_coeffs",
    "is_extremal_form",
    "kernel_coeffs",
    "membership",
    "objective",
    "pairing",
    "recover_atoms",
    "reference_extremal",
    "rotate_to_positive",
    "search",
    "series_exp_neg",
    "series_product",
    "toeplitz_minors",
    "verify_conditions",
]
