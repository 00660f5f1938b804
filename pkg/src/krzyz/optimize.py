"""Multi-start search for max |f_n| over the kernel-atom family.

Restart 0 always polishes the rotation-symmetric reference candidate with
total mass 1, so the known lower bound 2/e is never lost; every other
restart draws a start from its own deterministic generator (seed XOR
restart index) and runs bounded L-BFGS-B with analytic gradients.  Restarts
are independent; the merge is a deterministic reduction, so threaded and
serial runs agree bit for bit.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .errors import DomainError, NondifferentiableError
from .extremal import (
    ConditionReport,
    build_candidate,
    reference_extremal,
    rotate_to_positive,
    verify_conditions,
)
from .series import TWO_PI, AtomSet

TWO_OVER_E = 2.0 / math.e

_REPORT_TOL = 1e-8


@dataclass
class SearchConfig:
    """Knobs of one search run; identical configs give identical results."""

    n: int
    m_max: int | None = None  # defaults to n
    restarts: int = 50
    seed: int = 0
    max_iters: int = 200
    ftol: float = 1e-12
    alpha_min: float = 1e-4
    alpha_max: float = 6.0
    min_phi_gap: float = 0.05

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("need n >= 1")
        if self.restarts < 1:
            raise DomainError("need at least one restart")
        if self.m_max is None:
            self.m_max = self.n
        if self.m_max < 1:
            raise DomainError("need m_max >= 1")


@dataclass(frozen=True)
class RestartRecord:
    restart: int
    seed: int
    start: tuple  # canonical (alpha, phi) pairs of the starting point
    final_value: float
    iterations: int


@dataclass(frozen=True)
class SearchResult:
    n: int
    best_value: float
    best_atoms: AtomSet
    per_restart: tuple
    condition_report: ConditionReport
    gap_to_conjecture: float
    trace: tuple = field(default_factory=tuple)  # (restart, iter, value) rows


def _coeffs_from_params(alphas: np.ndarray, phis: np.ndarray, n: int):
    j = np.arange(n + 1)
    e = np.exp(1j * np.outer(j, phis))
    h = 2.0 * (e @ alphas.astype(complex))
    h[0] = alphas.sum()
    f = np.empty(n + 1, dtype=complex)
    f[0] = np.exp(-h[0])
    for k in range(1, n + 1):
        f[k] = -np.dot(j[1 : k + 1] * h[1 : k + 1], f[k - 1 :: -1]) / k
    return f, e


def _value_and_grad(alphas: np.ndarray, phis: np.ndarray, n: int):
    """|f_n| and its gradient in (alphas, phis).

    d f_n/d alpha_k = -(f * K_k)_n and d f_n/d phi_k = -alpha_k (f * K'_k)_n
    with K_k the kernel series at phi_k and K' its angle derivative; the
    modulus gradient follows by Re(conj(f_n)/|f_n| * d f_n).
    """
    f, e = _coeffs_from_params(alphas, phis, n)
    fn = f[n]
    r = abs(fn)
    m = len(alphas)
    if r == 0.0:
        return 0.0, np.zeros(2 * m)
    rf = f[::-1]
    w = rf.copy()
    w[1:] *= 2.0
    conv = w @ e  # (f * K_k)_n per atom
    dw = rf * (2j * np.arange(n + 1))
    dconv = dw @ e  # (f * K'_k)_n per atom
    phase = np.conj(fn) / r
    grad_alpha = -(phase * conv).real
    grad_phi = -alphas * (phase * dconv).real
    return r, np.concatenate([grad_alpha, grad_phi])


def objective(atoms: AtomSet, n: int) -> float:
    """|f_n| of the candidate built on ``atoms`` at order n."""
    cand = build_candidate(atoms, n)
    return float(abs(cand.f.coeffs[-1]))


def gradient(atoms: AtomSet, n: int) -> np.ndarray:
    """Analytic gradient of |f_n|: (d/d alpha_1.., d/d phi_1..), canonical order."""
    if not isinstance(atoms, AtomSet):
        atoms = AtomSet.from_pairs(atoms)
    r, g = _value_and_grad(atoms.alphas, atoms.phis, n)
    if r == 0.0:
        raise NondifferentiableError("|f_n| is not differentiable at f_n = 0")
    return g


def _thread_count() -> int:
    raw = os.environ.get("KRZYZ_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"KRZYZ_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise DomainError(f"KRZYZ_THREADS must be a positive integer, got {raw!r}")
    return value


def _draw_start(rng: np.random.Generator, cfg: SearchConfig):
    m = int(rng.integers(1, cfg.m_max + 1))
    alphas = np.exp(rng.uniform(np.log(cfg.alpha_min), np.log(cfg.alpha_max), m))
    phis = np.sort(rng.uniform(0.0, TWO_PI, m))
    if m > 1:
        for _ in range(200):
            gaps = np.diff(np.concatenate([phis, [phis[0] + TWO_PI]]))
            if gaps.min() >= cfg.min_phi_gap:
                break
            phis = np.sort(rng.uniform(0.0, TWO_PI, m))
    return alphas, phis


def _polish(alphas, phis, cfg: SearchConfig, trace_rows, restart_idx):
    """Bounded local ascent; atoms pinned at the weight floor are dropped
    and the point re-polished."""
    n = cfg.n
    iters = 0
    it_counter = [0]

    for _ in range(3):
        m = len(alphas)
        x0 = np.concatenate([alphas, phis])

        def negated(x, _m=m):
            value, grad = _value_and_grad(x[:_m], x[_m:], n)
            return -value, -grad

        callback = None
        if trace_rows is not None:

            def callback(xk, _m=m):
                value, _ = _value_and_grad(xk[:_m], xk[_m:], n)
                it_counter[0] += 1
                trace_rows.append((restart_idx, it_counter[0], value))

        res = minimize(
            negated,
            x0,
            jac=True,
            method="L-BFGS-B",
            bounds=[(cfg.alpha_min, cfg.alpha_max)] * m + [(None, None)] * m,
            options={"maxiter": cfg.max_iters, "ftol": cfg.ftol, "gtol": 1e-10},
            callback=callback,
        )
        iters += int(res.nit)
        alphas, phis = res.x[:m], np.mod(res.x[m:], TWO_PI)
        keep = alphas > cfg.alpha_min * (1.0 + 1e-9)
        if keep.all() or not keep.any():
            break
        alphas, phis = alphas[keep], phis[keep]

    value, _ = _value_and_grad(alphas, phis, n)
    return float(value), AtomSet(alphas, phis), iters


def _canonical_key(atoms: AtomSet) -> tuple:
    return tuple(v for pair in atoms.pairs for v in pair)


def search(cfg: SearchConfig, collect_trace: bool = False) -> SearchResult:
    """Multi-start maximization of |f_n|; deterministic for a given config.

    Ties within ``cfg.ftol`` of the maximum break toward the lexicographically
    smallest canonical atom vector.  All restart finals are reported; whether
    spurious local maxima exist for large n is an open empirical question.
    """
    ref_atoms = reference_extremal(cfg.n, 1.0).atoms

    def run_one(r: int):
        rows = [] if collect_trace else None
        if r == 0:
            start_a, start_p = ref_atoms.alphas.copy(), ref_atoms.phis.copy()
        else:
            rng = np.random.default_rng(cfg.seed ^ r)
            start_a, start_p = _draw_start(rng, cfg)
        start_pairs = AtomSet(start_a, start_p).pairs
        value, atoms, iters = _polish(start_a, start_p, cfg, rows, r)
        record = RestartRecord(
            restart=r,
            seed=cfg.seed ^ r,
            start=start_pairs,
            final_value=value,
            iterations=iters,
        )
        return record, atoms, rows or []

    workers = min(_thread_count(), cfg.restarts)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run_one, range(cfg.restarts)))
    else:
        outcomes = [run_one(r) for r in range(cfg.restarts)]

    records = tuple(rec for rec, _, _ in outcomes)
    trace = tuple(row for _, _, rows in outcomes for row in rows)

    best_value = max(rec.final_value for rec in records)
    near_best = [
        atoms for rec, atoms, _ in outcomes if rec.final_value >= best_value - cfg.ftol
    ]
    best_atoms = min(near_best, key=_canonical_key)

    cand = build_candidate(best_atoms, cfg.n)
    if cand.f.coeffs[-1] != 0:
        cand = rotate_to_positive(cand)
    report = verify_conditions(cand, tol=_REPORT_TOL)

    return SearchResult(
        n=cfg.n,
        best_value=best_value,
        best_atoms=best_atoms,
        per_restart=records,
        condition_report=report,
        gap_to_conjecture=best_value - TWO_OVER_E,
        trace=trace,
    )
