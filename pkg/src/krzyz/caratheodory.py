"""Caratheodory-Toeplitz machinery.

A coefficient vector (h_0..h_n) with h_0 > 0 heads a function with positive
real part on the disk iff the Hermitian Toeplitz minors M_1..M_n are all
positive, or positive up to some index m and zero from there on.  In the
boundary case the extension is unique: a positive combination of m Herglotz
kernels, which ``recover_atoms`` reconstructs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ConditioningError, DomainError, NotOnBoundaryError, NumericError
from .series import AtomSet, CoeffVec, _as_coeffvec

DEFAULT_TOL = 1e-10

# condition-number ceiling for the weight-recovery moment system
COND_LIMIT = 1e12


@dataclass(frozen=True)
class MinorReport:
    """Minor sequence M_1..M_n plus the membership classification.

    ``kind`` is one of "Interior", "Boundary", "Outside"; ``rank`` carries
    the unique-extension atom count m in the boundary case.
    """

    minors: tuple
    kind: str
    rank: int | None
    tol: float

    @property
    def classification(self) -> str:
        if self.kind == "Boundary":
            return f"Boundary({self.rank})"
        return self.kind


def _toeplitz_matrix(h: np.ndarray) -> np.ndarray:
    row = np.concatenate(([2.0 * h[0].real + 0j], h[1:]))
    return scipy.linalg.toeplitz(c=np.conj(row), r=row)


def _real_det(mat: np.ndarray, scale: float) -> float:
    det = np.linalg.det(mat)
    if abs(det.imag) > 1e-10 * abs(det) + 1e-12 * scale:
        raise NumericError("determinant of a Hermitian matrix drifted off the real axis")
    return float(det.real)


def _ldl_pivots(t: np.ndarray, breakdown_tol: float):
    """Pivots of the unpivoted LDL^* sweep; stops at the first tiny pivot.

    Returns (pivots, breakdown_index); breakdown_index is None when the sweep
    completed.  Cumulative pivot products are the leading principal minors.
    """
    a = np.array(t, dtype=complex)
    size = a.shape[0]
    d0 = a[0, 0].real
    pivots = []
    for j in range(size):
        piv = a[j, j]
        if abs(piv.imag) > 1e-10 * abs(piv) + 1e-12 * d0:
            raise NumericError("LDL pivot drifted off the real axis")
        pr = piv.real
        if abs(pr) <= breakdown_tol:
            return np.asarray(pivots), j
        if j + 1 < size:
            col = a[j + 1 :, j]
            a[j + 1 :, j + 1 :] -= np.outer(col, np.conj(col)) / pr
        pivots.append(pr)
    return np.asarray(pivots), None


def toeplitz_minors(h, tol: float = DEFAULT_TOL) -> MinorReport:
    """Minors M_1..M_n of the Hermitian Toeplitz matrix with first row
    (2h_0, h_1, ..., h_n), plus the coefficient-body classification.

    Positivity is decided on the normalized LDL pivots d_k / (2h_0) (these
    are invariant under h -> c*h); minors at and past a pivot breakdown are
    recomputed directly and tested against tol * (2h_0)^(k+1).
    """
    h = _as_coeffvec(h)
    n = h.order
    if n < 1:
        raise DomainError("need order n >= 1")
    h0 = h.coeffs[0]
    if abs(h0.imag) > 1e-12 * max(1.0, abs(h0)):
        raise DomainError("h_0 must be real")
    if h0.real <= 0:
        raise DomainError("h_0 must be positive")

    t = _toeplitz_matrix(h.coeffs)
    d0 = 2.0 * h0.real
    pivots, breakdown = _ldl_pivots(t, tol * d0)

    minors = np.empty(n + 1, dtype=float)  # slot k holds M_k; M_0 = 2h_0
    minors[: len(pivots)] = np.cumprod(pivots)
    first_direct = len(pivots)
    for k in range(first_direct, n + 1):
        minors[k] = _real_det(t[: k + 1, : k + 1], d0 ** (k + 1))

    if breakdown is None:
        kind = "Interior" if np.all(pivots > 0) else "Outside"
        rank = None
    else:
        m = breakdown  # pivots 0..m-1 survived
        zero_tail = all(
            abs(minors[k]) <= tol * d0 ** (k + 1) for k in range(m, n + 1)
        )
        if np.all(pivots > 0) and zero_tail and m >= 1:
            kind, rank = "Boundary", m
        else:
            kind, rank = "Outside", None

    return MinorReport(
        minors=tuple(float(v) for v in minors[1:]),
        kind=kind,
        rank=rank,
        tol=float(tol),
    )


def membership(h, tol: float = DEFAULT_TOL) -> str:
    """Classification only: "Interior", "Boundary(m)" or "Outside"."""
    return toeplitz_minors(h, tol).classification


def recover_atoms(h, tol: float = DEFAULT_TOL) -> AtomSet:
    """Unique boundary representation of a Boundary(m) coefficient vector.

    Angles come from the roots of the polynomial built from the null vector
    of the rank-m leading Toeplitz block (Pisarenko-style retrieval); weights
    solve the resulting moment system in the least-squares sense.
    """
    h = _as_coeffvec(h)
    report = toeplitz_minors(h, tol)
    if report.kind != "Boundary":
        raise NotOnBoundaryError(f"classification is {report.classification}, not Boundary")
    m = report.rank
    n = h.order

    t = _toeplitz_matrix(h.coeffs)[: m + 1, : m + 1]
    eigvals, eigvecs = np.linalg.eigh(t)
    q = eigvecs[:, int(np.argmin(np.abs(eigvals)))]
    roots = np.roots(q[::-1])
    if len(roots) != m:
        raise NumericError("null-vector polynomial lost its degree")
    phis = np.mod(np.angle(roots), 2.0 * np.pi)

    # moment system: h_0 = sum alpha_k, h_j = 2 sum alpha_k e^{i j phi_k}
    j = np.arange(n + 1)
    a = np.exp(1j * np.outer(j, phis))
    a[1:, :] *= 2.0
    a_real = np.vstack([a.real, a.imag])
    b_real = np.concatenate([h.coeffs.real, h.coeffs.imag])
    cond = np.linalg.cond(a_real)
    if cond > COND_LIMIT:
        raise ConditioningError(f"moment system condition {cond:.3g} exceeds {COND_LIMIT:.0e}")
    alphas, *_ = np.linalg.lstsq(a_real, b_real, rcond=None)

    try:
        return AtomSet(alphas, phis)
    except DomainError as exc:
        raise NumericError(f"recovered weights are not all positive: {exc}") from exc
