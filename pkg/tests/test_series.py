import math

import numpy as np
import pytest

from krzyz import (
    AtomSet,
    CoeffVec,
    herglotz_coeffs,
    kernel_coeffs,
    pairing,
    series_exp_neg,
    series_product,
)
from krzyz.errors import DomainError, EmptyAtomSetError, OrderMismatchError

from oracles import herglotz_fn, naive_product, taylor_coeffs_fft

E_INV = math.exp(-1.0)


class TestCoeffVec:
    def test_order(self):
        assert CoeffVec([1, 2, 3]).order == 2

    def test_rejects_nonfinite(self):
        with pytest.raises(DomainError):
            CoeffVec([1.0, np.nan])
        with pytest.raises(DomainError):
            CoeffVec([np.inf])

    def test_rejects_empty(self):
        with pytest.raises(DomainError):
            CoeffVec([])

    def test_immutable(self):
        v = CoeffVec([1, 2])
        with pytest.raises(ValueError):
            v.coeffs[0] = 5.0


class TestAtomSet:
    def test_canonical_order(self):
        atoms = AtomSet([1.0, 2.0], [3.0, 1.0])
        assert atoms.phis[0] == 1.0 and atoms.alphas[0] == 2.0

    def test_merges_near_duplicates(self):
        atoms = AtomSet([1.0, 2.0], [1.0, 1.0 + 1e-14])
        assert atoms.m == 1
        assert atoms.alphas[0] == pytest.approx(3.0)

    def test_merges_across_wraparound(self):
        atoms = AtomSet([1.0, 1.0], [0.0, 2.0 * np.pi - 1e-14])
        assert atoms.m == 1

    def test_mass(self):
        assert AtomSet([0.5, 0.25], [0.0, 1.0]).mass == pytest.approx(0.75)

    def test_rejects_nonpositive_weight(self):
        with pytest.raises(DomainError):
            AtomSet([0.0], [1.0])

    def test_rejects_empty(self):
        with pytest.raises(EmptyAtomSetError):
            AtomSet.from_pairs([])


class TestSeriesProduct:
    def test_identity(self):
        assert np.allclose(series_product([1, 0], [1, 0]).coeffs, [1, 0])

    def test_binomial_truncated(self):
        assert np.allclose(series_product([1, 1], [1, 1]).coeffs, [1, 2])

    def test_exp_times_exp_neg(self):
        # factorial series is the oracle here
        k = np.arange(5)
        fact = np.array([math.factorial(int(i)) for i in k], dtype=float)
        ez = 1.0 / fact
        ezm = (-1.0) ** k / fact
        got = series_product(ez, ezm).coeffs
        assert np.max(np.abs(got - np.eye(5)[0])) < 1e-12

    def test_order_mismatch(self):
        with pytest.raises(OrderMismatchError):
            series_product([1, 0], [1, 0, 0])

    def test_matches_naive_convolution(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            n = int(rng.integers(0, 12))
            f = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
            g = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
            assert np.allclose(series_product(f, g).coeffs, naive_product(f, g), atol=1e-12)

    def test_commutative_associative(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            n = int(rng.integers(0, 33))
            f, g, k = (rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1) for _ in range(3))
            fg = series_product(f, g).coeffs
            gf = series_product(g, f).coeffs
            scale = np.max(np.abs(fg)) + 1e-30
            assert np.max(np.abs(fg - gf)) <= 1e-12 * scale
            lhs = series_product(series_product(f, g), CoeffVec(k)).coeffs
            rhs = series_product(CoeffVec(f), series_product(g, k)).coeffs
            scale = np.max(np.abs(lhs)) + 1e-30
            assert np.max(np.abs(lhs - rhs)) <= 1e-12 * scale


class TestSeriesExpNeg:
    def test_exp_of_zero(self):
        got = series_exp_neg([0, 0, 0]).coeffs
        assert np.allclose(got, [1, 0, 0])

    def test_mobius_kernel_order_one(self):
        # (1 - z)/(1 + z) = 1 - 2z + ...; exp picks up e^{-1}(1 + 2z + ...)
        got = series_exp_neg([1.0, -2.0]).coeffs
        assert np.allclose(got, [E_INV, 2 * E_INV], atol=1e-15)

    def test_mobius_kernel_order_three(self):
        got = series_exp_neg([1.0, -2.0, 2.0, -2.0]).coeffs
        expected = [E_INV, 2 * E_INV, 0.0, -(2.0 / 3.0) * E_INV]
        assert np.allclose(got, expected, atol=1e-14)

    def test_against_fft_oracle(self):
        # tolerance reflects the oracle's own 1/radius^k noise amplification
        rng = np.random.default_rng(23)
        for _ in range(15):
            n = int(rng.integers(1, 17))
            h = rng.uniform(-1, 1, n + 1) + 1j * rng.uniform(-1, 1, n + 1)
            oracle = taylor_coeffs_fft(
                lambda z: np.exp(-np.polyval(h[::-1], z)), n, radius=0.8
            )
            got = series_exp_neg(h).coeffs
            scale = np.max(np.abs(oracle)) + 1e-30
            assert np.max(np.abs(got - oracle)) <= 1e-9 * scale

    def test_inverse_under_product(self):
        rng = np.random.default_rng(17)
        for _ in range(15):
            n = int(rng.integers(1, 33))
            h = rng.uniform(-2, 2, n + 1) + 1j * rng.uniform(-2, 2, n + 1)
            prod = series_product(series_exp_neg(h), series_exp_neg(-h)).coeffs
            assert np.max(np.abs(prod - np.eye(n + 1)[0])) <= 1e-10


class TestHerglotzCoeffs:
    def test_single_kernel_at_zero(self):
        got = herglotz_coeffs(AtomSet([1.0], [0.0]), 3).coeffs
        assert np.allclose(got, [1, 2, 2, 2])

    def test_two_opposite_kernels(self):
        got = herglotz_coeffs(AtomSet([0.5, 0.5], [0.0, np.pi]), 2).coeffs
        assert np.allclose(got, [1, 0, 2], atol=1e-15)

    def test_symmetric_orbit_matches_mobius_expansion(self):
        # n-fold symmetric orbit sums to t (1 - z^n)/(1 + z^n)
        for n in (2, 3, 5):
            for t in (0.5, 1.0, 2.0):
                k = np.arange(n)
                atoms = AtomSet(np.full(n, t / n), (np.pi + 2 * np.pi * k) / n)
                got = herglotz_coeffs(atoms, n).coeffs
                expected = np.zeros(n + 1)
                expected[0], expected[n] = t, -2.0 * t
                assert np.max(np.abs(got - expected)) < 1e-13
                oracle = taylor_coeffs_fft(herglotz_fn(atoms.alphas, atoms.phis), n)
                assert np.max(np.abs(got - oracle)) < 1e-12

    def test_coefficient_bound(self):
        # |h_j| <= 2 h_0; one ulp of slack for the unit-modulus rounding
        rng = np.random.default_rng(2)
        for _ in range(50):
            m = int(rng.integers(1, 8))
            atoms = AtomSet(rng.uniform(0.05, 3.0, m), rng.uniform(0, 2 * np.pi, m))
            h = herglotz_coeffs(atoms, 12).coeffs
            assert np.all(np.abs(h[1:]) <= 2.0 * h[0].real * (1 + 1e-14))

    def test_rotation_covariance(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            m = int(rng.integers(1, 6))
            atoms = AtomSet(rng.uniform(0.1, 2.0, m), rng.uniform(0, 2 * np.pi, m))
            theta = rng.uniform(0, 2 * np.pi)
            n = 10
            base = herglotz_coeffs(atoms, n).coeffs
            rotated = herglotz_coeffs(atoms.rotated(theta), n).coeffs
            twist = np.exp(1j * theta * np.arange(n + 1))
            assert np.max(np.abs(rotated - base * twist)) <= 1e-12 * np.max(np.abs(base))

    def test_empty_atoms_rejected(self):
        with pytest.raises(EmptyAtomSetError):
            herglotz_coeffs(AtomSet.from_pairs([]), 3)

    def test_order_zero_rejected(self):
        with pytest.raises(DomainError):
            herglotz_coeffs(AtomSet([1.0], [0.0]), 0)


class TestPairing:
    def test_orthogonality_at_first_extremal(self):
        assert pairing([E_INV, 2 * E_INV], [1.0, -2.0]) == pytest.approx(0.0, abs=1e-16)

    def test_constant_pair(self):
        assert pairing([1.0, 0.0], [1.0, 0.0]) == 0.0

    def test_top_coefficient_selects_g0(self):
        f = [0.0, 0.0, 0.0, 1.0]
        g = [2.5 + 1j, -3.0, 0.7, 9.0]
        assert pairing(f, g) == pytest.approx(2.5)

    def test_order_mismatch(self):
        with pytest.raises(OrderMismatchError):
            pairing([1.0], [1.0, 0.0])

    def test_real_bilinearity(self):
        rng = np.random.default_rng(31)
        n = 6
        f1, f2, g1, g2 = (
            rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1) for _ in range(4)
        )
        a, b = rng.normal(), rng.normal()
        lhs = pairing(a * f1 + b * f2, g1)
        rhs = a * pairing(f1, g1) + b * pairing(f2, g1)
        assert lhs == pytest.approx(rhs, abs=1e-12)
        lhs = pairing(f1, a * g1 + b * g2)
        rhs = a * pairing(f1, g1) + b * pairing(f1, g2)
        assert lhs == pytest.approx(rhs, abs=1e-12)


def test_kernel_coeffs_matches_herglotz():
    phi = 2.1
    assert np.allclose(
        kernel_coeffs(phi, 5).coeffs,
        herglotz_coeffs(AtomSet([1.0], [phi]), 5).coeffs,
    )
