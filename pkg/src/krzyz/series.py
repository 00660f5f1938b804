"""Truncated power-series kernel.

Complex Taylor coefficient vectors c_0..c_n with an explicit order n,
finite positive combinations of Herglotz kernels
(1 + e^{i*phi} z)/(1 - e^{i*phi} z), truncated products, exponentials and
the real coefficient pairing used by the higher layers.  Operations never
extend the order silently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, EmptyAtomSetError, OrderMismatchError

TWO_PI = 2.0 * np.pi

# angles closer than this merge (weights summed) when an AtomSet is canonicalized
PHI_MERGE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class CoeffVec:
    """Taylor coefficients c_0..c_n of a function, truncated at order n."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex)).copy()
        if c.ndim != 1 or c.size == 0:
            raise DomainError("coefficient vector must be 1-D and non-empty")
        if not np.all(np.isfinite(c)):
            raise DomainError("coefficient vector has non-finite entries")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        return f"CoeffVec({list(self.coeffs)!r})"


def _as_coeffvec(x) -> CoeffVec:
    return x if isinstance(x, CoeffVec) else CoeffVec(np.asarray(x, dtype=complex))


@dataclass(frozen=True, eq=False)
class AtomSet:
    """Finite sum h(z) = sum_k alpha_k (1+e^{i phi_k}z)/(1-e^{i phi_k}z).

    Canonical form: phi strictly ascending in [0, 2*pi), weights positive;
    angles closer than ``PHI_MERGE_TOL`` (including across the 0/2*pi seam)
    are merged with their weights summed.
    """

    alphas: np.ndarray
    phis: np.ndarray

    def __post_init__(self):
        a = np.atleast_1d(np.asarray(self.alphas, dtype=float))
        p = np.atleast_1d(np.asarray(self.phis, dtype=float))
        if a.size == 0 or p.size == 0:
            raise EmptyAtomSetError("atom set must contain at least one atom")
        if a.shape != p.shape or a.ndim != 1:
            raise DomainError("weights and angles must be matching 1-D lists")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(p))):
            raise DomainError("non-finite atom parameters")
        if np.any(a <= 0):
            raise DomainError("atom weights must be positive")
        p = np.mod(p, TWO_PI)
        order = np.argsort(p, kind="stable")
        a, p = a[order], p[order]
        wa, wp = [a[0]], [p[0]]
        for weight, ang in zip(a[1:], p[1:]):
            if ang - wp[-1] < PHI_MERGE_TOL:
                wa[-1] += weight
            else:
                wa.append(weight)
                wp.append(ang)
        if len(wp) > 1 and wp[0] + TWO_PI - wp[-1] < PHI_MERGE_TOL:
            wa[0] += wa.pop()
            wp.pop()
        a = np.asarray(wa, dtype=float)
        p = np.asarray(wp, dtype=float)
        a.flags.writeable = False
        p.flags.writeable = False
        object.__setattr__(self, "alphas", a)
        object.__setattr__(self, "phis", p)

    @classmethod
    def from_pairs(cls, pairs) -> "AtomSet":
        """Build from an iterable of (alpha, phi) pairs."""
        arr = np.atleast_2d(np.asarray(list(pairs), dtype=float))
        if arr.size == 0:
            raise EmptyAtomSetError("atom set must contain at least one atom")
        if arr.shape[1] != 2:
            raise DomainError("atoms must be (alpha, phi) pairs")
        return cls(arr[:, 0], arr[:, 1])

    @property
    def m(self) -> int:
        """Number of atoms."""
        return len(self.alphas)

    @property
    def mass(self) -> float:
        """Total weight t = sum_k alpha_k."""
        return float(np.sum(self.alphas))

    @property
    def pairs(self) -> tuple:
        return tuple((float(a), float(p)) for a, p in zip(self.alphas, self.phis))

    def rotated(self, theta: float) -> "AtomSet":
        """Shift every angle by theta (mod 2*pi); weights unchanged."""
        return AtomSet(self.alphas, self.phis + theta)

    def __repr__(self):
        return f"AtomSet({self.pairs!r})"


def series_product(f, g) -> CoeffVec:
    """Cauchy product of two series, truncated at their common order.

    Entry k of the result is sum_{j=0}^{k} f_j g_{k-j}.
    """
    f, g = _as_coeffvec(f), _as_coeffvec(g)
    if f.order != g.order:
        raise OrderMismatchError(f"orders differ: {f.order} vs {g.order}")
    return CoeffVec(np.convolve(f.coeffs, g.coeffs)[: len(f.coeffs)])


def series_exp_neg(h) -> CoeffVec:
    """Coefficients of exp(-h(z)) truncated at the order of h.

    Uses the recurrence k*f_k = -sum_{j=1}^{k} j*h_j*f_{k-j} obtained from
    f' = -h'f, with f_0 = exp(-h_0).  O(n^2), stable for the orders (<= 64)
    this package targets.
    """
    h = _as_coeffvec(h)
    n = h.order
    hc = h.coeffs
    j = np.arange(n + 1)
    f = np.empty(n + 1, dtype=complex)
    f[0] = np.exp(-hc[0])
    for k in range(1, n + 1):
        f[k] = -np.dot(j[1 : k + 1] * hc[1 : k + 1], f[k - 1 :: -1]) / k
    return CoeffVec(f)


def herglotz_coeffs(atoms: AtomSet, order: int) -> CoeffVec:
    """Taylor coefficients of the kernel combination held by ``atoms``.

    h_0 = sum_k alpha_k and h_j = 2 sum_k alpha_k e^{i j phi_k} for j >= 1.
    """
    if not isinstance(atoms, AtomSet):
        atoms = AtomSet.from_pairs(atoms)
    if order < 1:
        raise DomainError("order must be >= 1")
    j = np.arange(order + 1)
    e = np.exp(1j * np.outer(j, atoms.phis))
    h = 2.0 * (e @ atoms.alphas.astype(complex))
    h[0] = atoms.mass
    return CoeffVec(h)


def kernel_coeffs(phi: float, order: int) -> CoeffVec:
    """Single Herglotz kernel (1, 2e^{i phi}, 2e^{2i phi}, ...) up to ``order``."""
    if order < 1:
        raise DomainError("order must be >= 1")
    k = np.exp(1j * phi * np.arange(order + 1)) * 2.0
    k[0] = 1.0
    return CoeffVec(k)


def pairing(f, g) -> float:
    """Real coefficient pairing Re sum_{k=0}^{n} f_{n-k} g_k."""
    f, g = _as_coeffvec(f), _as_coeffvec(g)
    if f.order != g.order:
        raise OrderMismatchError(f"orders differ: {f.order} vs {g.order}")
    return float(np.real(np.dot(f.coeffs[::-1], g.coeffs)))
