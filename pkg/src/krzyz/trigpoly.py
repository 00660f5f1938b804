"""Nonnegative trigonometric polynomials on the unit circle.

T(phi) = a_0 + sum_k (a_k cos k*phi - b_k sin k*phi) is the restriction to
the circle of Re H for H(z) = h_0 + 2 sum h_k z^k with h_k = (a_k + i b_k)/2.
This module evaluates such polynomials, finds their global minimum, factors
nonnegative ones as |P(e^{i phi})|^2 with all roots of P outside the open
unit disk (Riesz-Fejer), and maps P back through the autocorrelation
h_k = sum_j p_{j+k} conj(p_j).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NotNonnegativeError, NumericError
from .series import CoeffVec, _as_coeffvec

TWO_PI = 2.0 * np.pi

# |root| within this band of 1 counts as a circle root of the Laurent lift
CIRCLE_BAND = 1e-7
# circle roots closer than this angle belong to one zero of T
CLUSTER_ANGLE_TOL = 1e-3
# pre-factorization nonnegativity slack, relative to the coefficient scale
NONNEG_TOL = 1e-9
# factorization is rejected outright past this grid residual
RESIDUAL_GATE = 1e-6
# slack on the outer-root invariant of a spectral factor
OUTER_SLACK = 1e-8

_RESIDUAL_GRID = 4096


@dataclass(frozen=True, eq=False)
class TrigPoly:
    """Real trigonometric polynomial a_0 + sum_k (a_k cos k*phi - b_k sin k*phi).

    Trailing all-zero (a_k, b_k) terms are trimmed so the stored degree n
    satisfies a_n^2 + b_n^2 > 0 (degree 0 means a constant).
    """

    a0: float
    cos_coeffs: np.ndarray
    sin_coeffs: np.ndarray

    def __post_init__(self):
        a = np.atleast_1d(np.asarray(self.cos_coeffs, dtype=float))
        b = np.atleast_1d(np.asarray(self.sin_coeffs, dtype=float))
        if a.shape != b.shape or a.ndim != 1:
            raise DomainError("cos and sin coefficient lists must match")
        if not (np.isfinite(self.a0) and np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise DomainError("non-finite trig coefficients")
        nz = np.nonzero((a != 0) | (b != 0))[0]
        keep = nz[-1] + 1 if len(nz) else 0
        a, b = a[:keep].copy(), b[:keep].copy()
        a.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "cos_coeffs", a)
        object.__setattr__(self, "sin_coeffs", b)

    @classmethod
    def from_terms(cls, a0: float, terms) -> "TrigPoly":
        arr = np.asarray(list(terms), dtype=float).reshape(-1, 2)
        return cls(a0, arr[:, 0], arr[:, 1])

    @property
    def degree(self) -> int:
        return len(self.cos_coeffs)

    @property
    def terms(self) -> tuple:
        return tuple((float(a), float(b)) for a, b in zip(self.cos_coeffs, self.sin_coeffs))

    @property
    def coeff_scale(self) -> float:
        """Natural magnitude a_0 + sum(|a_k| + |b_k|) used by tolerances."""
        return abs(self.a0) + float(np.sum(np.abs(self.cos_coeffs)) + np.sum(np.abs(self.sin_coeffs)))

    def complex_coeffs(self) -> np.ndarray:
        """h_0..h_n with h_k = (a_k + i b_k)/2, so T(phi) = Re sum 2 h_k e^{ik phi} - h_0."""
        h = np.empty(self.degree + 1, dtype=complex)
        h[0] = self.a0
        h[1:] = (self.cos_coeffs + 1j * self.sin_coeffs) / 2.0
        return h

    def eval(self, phi):
        """Value(s) of the polynomial at angle(s) phi."""
        p = np.atleast_1d(np.asarray(phi, dtype=float))
        k = np.arange(1, self.degree + 1)
        kp = np.outer(p, k)
        vals = self.a0 + np.cos(kp) @ self.cos_coeffs - np.sin(kp) @ self.sin_coeffs
        return vals if np.ndim(phi) else float(vals[0])


def from_poly_real_part(h) -> TrigPoly:
    """TrigPoly of Re H(e^{i phi}) for H(z) = h_0 + 2 sum_{k>=1} h_k z^k.

    Requires a real constant term: a_0 = h_0, a_k = 2 Re h_k, b_k = 2 Im h_k.
    """
    h = _as_coeffvec(h)
    h0 = h.coeffs[0]
    if abs(h0.imag) > 1e-12 * max(1.0, abs(h0)):
        raise DomainError("constant coefficient h_0 must be real")
    return TrigPoly(h0.real, 2.0 * h.coeffs[1:].real, 2.0 * h.coeffs[1:].imag)


def _min_real_trig(w: np.ndarray, grid_size: int):
    """Global minimum of phi -> Re sum_j w_j e^{i j phi}.

    Dense sampling on ``grid_size`` points, then derivative bisection on
    every local basin down to an angle bracket below 1e-12.
    """
    deg = len(w) - 1
    if deg == 0:
        return 0.0, float(w[0].real)
    j = np.arange(deg + 1)
    dw = 1j * j * w

    def value(x):
        return float(np.sum(w * np.exp(1j * j * x)).real)

    def dvalue(x):
        return float(np.sum(dw * np.exp(1j * j * x)).real)

    phi = np.arange(grid_size) * (TWO_PI / grid_size)
    vals = np.exp(1j * np.outer(phi, j)) @ w
    vals = vals.real
    prev = np.roll(vals, 1)
    nxt = np.roll(vals, -1)
    local = np.nonzero((vals <= prev) & (vals <= nxt))[0]

    step = TWO_PI / grid_size
    best_phi, best_val = 0.0, float(vals[0])
    for i in local:
        lo, hi = phi[i] - step, phi[i] + step
        x, v = float(phi[i]), float(vals[i])
        if dvalue(lo) <= 0.0 <= dvalue(hi):
            while hi - lo > 1e-12:
                mid = 0.5 * (lo + hi)
                if dvalue(mid) < 0.0:
                    lo = mid
                else:
                    hi = mid
            x = 0.5 * (lo + hi)
            v = value(x)
        if v < best_val:
            best_phi, best_val = x % TWO_PI, v
    return best_phi, best_val


def global_min(t: TrigPoly):
    """(phi_min, value) of the global minimum of T over [0, 2*pi)."""
    if t.degree == 0:
        return 0.0, float(t.a0)
    w = t.complex_coeffs()
    w[1:] *= 2.0  # T(phi) = Re sum (2h_k) e^{ik phi} with the k=0 term once
    grid = max(16 * t.degree, 64)
    return _min_real_trig(w, grid)


@dataclass(frozen=True, eq=False)
class SpectralFactor:
    """Outer polynomial P(z) = sum p_k z^k with T(phi) = |P(e^{i phi})|^2.

    Normalized so p_0 is real and positive; every root has modulus
    >= 1 - OUTER_SLACK (circle roots occur exactly where T vanishes).
    """

    p: np.ndarray

    def __post_init__(self):
        p = np.atleast_1d(np.asarray(self.p, dtype=complex)).copy()
        if p.ndim != 1 or p.size == 0:
            raise DomainError("spectral factor must be a non-empty 1-D list")
        norm = float(np.linalg.norm(p))
        if norm == 0.0:
            raise DomainError("spectral factor must be nonzero")
        if abs(p[0].imag) > 1e-9 * norm or p[0].real <= 0:
            raise DomainError("normalization requires p_0 real and positive")
        if p[-1] == 0:
            raise DomainError("leading coefficient p_n must be nonzero")
        if len(p) > 1:
            moduli = np.abs(np.roots(p[::-1]))
            if np.any(moduli < 1.0 - OUTER_SLACK):
                raise DomainError("spectral factor has a root inside the unit disk")
        p.flags.writeable = False
        object.__setattr__(self, "p", p)

    @property
    def degree(self) -> int:
        return len(self.p) - 1

    def eval_abs2(self, phi):
        """|P(e^{i phi})|^2 at angle(s) phi."""
        z = np.exp(1j * np.atleast_1d(np.asarray(phi, dtype=float)))
        vals = np.abs(np.polyval(self.p[::-1], z)) ** 2
        return vals if np.ndim(phi) else float(vals[0])


def _refine_roots(coeffs_desc: np.ndarray, roots: np.ndarray) -> np.ndarray:
    dcoeffs = np.polyder(coeffs_desc)
    out = roots.copy()
    for i, r in enumerate(out):
        for _ in range(3):
            pv = np.polyval(coeffs_desc, r)
            dv = np.polyval(dcoeffs, r)
            if dv == 0:
                break
            r_new = r - pv / dv
            if abs(np.polyval(coeffs_desc, r_new)) < abs(pv):
                r = r_new
            else:
                break
        out[i] = r
    return out


def _cluster_circle_roots(angles: np.ndarray):
    """Group sorted circle-root angles into zeros of T; cyclic, tolerance-based."""
    order = np.argsort(angles)
    ang = angles[order]
    groups = [[ang[0]]]
    for a in ang[1:]:
        if a - groups[-1][-1] <= CLUSTER_ANGLE_TOL:
            groups[-1].append(a)
        else:
            groups.append([a])
    if len(groups) > 1 and (groups[0][0] + TWO_PI) - groups[-1][-1] <= CLUSTER_ANGLE_TOL:
        groups[0] = [a - TWO_PI for a in groups.pop()] + groups[0]
    return groups


def fejer_riesz(t: TrigPoly) -> SpectralFactor:
    """Spectral factor of a nonnegative trigonometric polynomial.

    Lifts T to the algebraic polynomial c(z) = z^n T(z) of degree 2n, takes
    its roots (companion matrix plus Newton polish), keeps one representative
    of modulus >= 1 from each 1/conj(z)-symmetric pair -- splitting circle
    pairs evenly -- and rebuilds P with the scale fixed by the mean value a_0
    and the phase fixed by p_0 > 0.
    """
    scale = t.coeff_scale
    _, tmin = global_min(t)
    if tmin < -NONNEG_TOL * scale:
        raise NotNonnegativeError(f"min T = {tmin:.3e} < {-NONNEG_TOL * scale:.3e}")

    n = t.degree
    if n == 0:
        if t.a0 <= 0:
            raise DomainError("cannot factor a nonpositive constant")
        return SpectralFactor(np.array([np.sqrt(t.a0)], dtype=complex))

    h = t.complex_coeffs()
    c = np.concatenate([np.conj(h[::-1]), h[1:]])  # ascending, c_{n+k} = h_k
    try:
        roots = np.roots(c[::-1])
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"root finding failed: {exc}") from exc

    # Circle roots of T are even-multiplicity zeros whose computed copies
    # scatter symmetrically; their cluster mean below cancels that scatter,
    # so only the simple off-circle roots get a Newton polish.
    moduli = np.abs(roots)
    on_circle = np.abs(moduli - 1.0) < CIRCLE_BAND
    outer = _refine_roots(c[::-1], roots[(~on_circle) & (moduli > 1.0)])
    inner = roots[(~on_circle) & (moduli < 1.0)]
    if len(outer) != len(inner):
        raise NumericError("roots of the Laurent lift failed to pair up")

    selected = list(outer)
    circle = roots[on_circle]
    if len(circle):
        for group in _cluster_circle_roots(np.mod(np.angle(circle), TWO_PI)):
            if len(group) % 2:
                raise NotNonnegativeError("circle root of odd multiplicity: T changes sign")
            rep = np.angle(np.mean(np.exp(1j * np.asarray(group))))
            selected.extend([np.exp(1j * rep)] * (len(group) // 2))
    if len(selected) != n:
        raise NumericError(f"selected {len(selected)} factor roots, expected {n}")

    q = np.poly(selected)[::-1]  # ascending, monic
    if t.a0 <= 0:
        raise NotNonnegativeError("mean value a_0 must be positive for a nonzero factor")
    p = q * np.sqrt(t.a0 / np.sum(np.abs(q) ** 2))
    p = p * np.exp(-1j * np.angle(p[0]))
    p[0] = p[0].real

    factor = SpectralFactor(p)
    if factor_residual(t, factor) > RESIDUAL_GATE * scale:
        raise NumericError("factorization residual exceeds the acceptance gate")
    return factor


def factor_residual(t: TrigPoly, factor: SpectralFactor, grid: int = _RESIDUAL_GRID) -> float:
    """max over a uniform grid of |T(phi) - |P(e^{i phi})|^2|."""
    phi = np.arange(grid) * (TWO_PI / grid)
    return float(np.max(np.abs(t.eval(phi) - factor.eval_abs2(phi))))


def autocorrelate(p) -> CoeffVec:
    """Coefficients h_k = sum_{j=0}^{n-k} p_{j+k} conj(p_j), k = 0..n.

    The polynomial H(z) = h_0 + 2 sum h_k z^k built from the result has
    nonnegative real part on the circle.
    """
    arr = p.p if isinstance(p, SpectralFactor) else np.atleast_1d(np.asarray(p, dtype=complex))
    if arr.ndim != 1 or arr.size == 0:
        raise DomainError("need a non-empty 1-D coefficient list")
    if not np.any(arr):
        raise DomainError("autocorrelation of the zero polynomial is undefined")
    n = len(arr) - 1
    h = np.array([np.dot(arr[k:], np.conj(arr[: n + 1 - k])) for k in range(n + 1)])
    return CoeffVec(h)


def is_extremal_form(h, tol: float = 1e-8) -> bool:
    """True iff H(z) = h_0 + 2 sum h_k z^k collapses to h_0 (1 + eta z^n).

    Checks h_1..h_{n-1} vanish within tol*h_0 and |h_0 - 2|h_n|| <= tol*h_0.
    """
    h = _as_coeffvec(h)
    n = h.order
    if n < 1:
        raise DomainError("need order n >= 1")
    h0 = h.coeffs[0]
    if h0.real <= 0 or abs(h0.imag) > tol * max(1.0, abs(h0)):
        return False
    ref = h0.real
    if np.any(np.abs(h.coeffs[1:n]) > tol * ref):
        return False
    return abs(ref - 2.0 * abs(h.coeffs[n])) <= tol * ref
