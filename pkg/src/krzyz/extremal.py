"""Candidate extremal functions for the coefficient problem.

A candidate is f = exp(-h) with h a positive combination of Herglotz
kernels.  From its truncated coefficients the polynomial
H(z) = f_n + 2 f_{n-1} z + ... + 2 f_0 z^n is assembled (stored in the same
h-convention used by :mod:`krzyz.trigpoly`, i.e. as (f_n, f_{n-1}, ..., f_0)),
and the first-order optimality conditions are evaluated numerically:
Re H >= 0 on the circle, Re H(e^{i phi_k}) = 0 at the atom angles, and the
coefficient pairing of f against kernel combinations being >= 0 with
equality at h itself.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import CannotNormalizeError, DomainError
from .series import AtomSet, CoeffVec, herglotz_coeffs, pairing, series_exp_neg
from .trigpoly import _min_real_trig, from_poly_real_part, global_min

# sample count for the kernel-angle scan and the Re H profile
KERNEL_GRID = 4096

DEFAULT_TOL = 1e-8


@dataclass(frozen=True)
class Candidate:
    """Atom set together with f = exp(-h) and H, truncated at ``order``."""

    atoms: AtomSet
    order: int
    f: CoeffVec
    H: CoeffVec


@dataclass(frozen=True)
class ConditionReport:
    """Numerical check of the necessary optimality conditions at a candidate."""

    h_in_c: bool
    h_in_c_margin: float
    boundary_zero_residuals: tuple
    pairing_value: float
    min_pairing_over_kernels: float
    tol: float

    def to_dict(self) -> dict:
        return {
            "h_in_c": self.h_in_c,
            "h_in_c_margin": self.h_in_c_margin,
            "boundary_zero_residuals": list(self.boundary_zero_residuals),
            "pairing_value": self.pairing_value,
            "min_pairing_over_kernels": self.min_pairing_over_kernels,
            "tol": self.tol,
        }


def build_candidate(atoms: AtomSet, order: int) -> Candidate:
    """Candidate with f = exp(-herglotz(atoms)) truncated at ``order``."""
    if not isinstance(atoms, AtomSet):
        atoms = AtomSet.from_pairs(atoms)
    if atoms.m > order:
        warnings.warn(
            f"{atoms.m} atoms exceed the target index n={order}; "
            "such candidates are exploratory only",
            stacklevel=2,
        )
    f = series_exp_neg(herglotz_coeffs(atoms, order))
    return Candidate(atoms=atoms, order=order, f=f, H=CoeffVec(f.coeffs[::-1]))


def reference_extremal(n: int, t: float) -> Candidate:
    """The rotation-symmetric candidate exp(-t (1 - z^n)/(1 + z^n)).

    Atoms (t/n, (pi + 2 pi k)/n) for k = 0..n-1; its coefficients are
    (e^{-t}, 0, ..., 0, 2t e^{-t}).
    """
    if n < 1:
        raise DomainError("need n >= 1")
    if t <= 0:
        raise DomainError("mass t must be positive")
    k = np.arange(n)
    atoms = AtomSet(np.full(n, t / n), (np.pi + 2.0 * np.pi * k) / n)
    return build_candidate(atoms, n)


def rotate_to_positive(cand: Candidate) -> Candidate:
    """Rotate z -> e^{i theta} z so the rebuilt candidate has f_n real > 0."""
    fn = cand.f.coeffs[-1]
    if fn == 0:
        raise CannotNormalizeError("f_n = 0: no rotation makes it positive")
    theta = -np.angle(fn) / cand.order
    return build_candidate(cand.atoms.rotated(theta), cand.order)


def verify_conditions(cand: Candidate, tol: float = DEFAULT_TOL) -> ConditionReport:
    """Evaluate every first-order condition at ``cand``; reports, never judges.

    Expects the candidate rotated so f_n is (numerically) real; the margin is
    the global minimum of Re H on the circle, residuals are |Re H(e^{i phi_k})|
    per atom, and the pairing entries probe the variational inequality.
    """
    t = from_poly_real_part(cand.H)
    _, margin = global_min(t)
    residuals = tuple(float(abs(t.eval(p))) for p in cand.atoms.phis)
    pair_self = pairing(cand.f, herglotz_coeffs(cand.atoms, cand.order))

    # pairing(f, kernel_phi) as a trig function of phi, minimized on its own grid
    w = cand.f.coeffs[::-1].copy()
    w[1:] *= 2.0
    _, min_pair = _min_real_trig(w, KERNEL_GRID)

    return ConditionReport(
        h_in_c=bool(margin >= -tol),
        h_in_c_margin=float(margin),
        boundary_zero_residuals=residuals,
        pairing_value=float(pair_self),
        min_pairing_over_kernels=float(min_pair),
        tol=float(tol),
    )


def real_part_profile(cand: Candidate, grid: int = KERNEL_GRID):
    """(phi, Re H(e^{i phi})) sampled on a uniform grid; used by reports."""
    t = from_poly_real_part(cand.H)
    phi = np.arange(grid) * (2.0 * np.pi / grid)
    return phi, t.eval(phi)
