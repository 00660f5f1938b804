import numpy as np
import pytest

from krzyz import (
    AtomSet,
    CoeffVec,
    herglotz_coeffs,
    membership,
    recover_atoms,
    toeplitz_minors,
)
from krzyz.caratheodory import _toeplitz_matrix
from krzyz.errors import DomainError, NotOnBoundaryError

from oracles import min_gap_angles


class TestToeplitzMinors:
    def test_constant_vector_is_interior(self):
        for n in (1, 3, 6):
            rep = toeplitz_minors([1.0] + [0.0] * n)
            assert rep.classification == "Interior"
            assert np.allclose(rep.minors, [2.0 ** (k + 1) for k in range(1, n + 1)])

    def test_closed_form_minors(self):
        # h = (t, 0, ..., 0, -2): M_k = 2^{k+1} t^{k+1} for k < n,
        # M_n = 2^{n+1} t^{n-1} (t^2 - 1)
        for t in (0.5, 1.0, 2.0):
            for n in (1, 2, 5, 12):
                h = np.zeros(n + 1)
                h[0], h[n] = t, -2.0
                rep = toeplitz_minors(h)
                for k in range(1, n):
                    expected = 2.0 ** (k + 1) * t ** (k + 1)
                    assert rep.minors[k - 1] == pytest.approx(expected, rel=1e-10)
                expected_last = 2.0 ** (n + 1) * t ** (n - 1) * (t * t - 1.0)
                scale = (2.0 * t) ** (n + 1)
                assert abs(rep.minors[n - 1] - expected_last) <= 1e-10 * max(
                    abs(expected_last), scale
                )

    def test_closed_form_classification(self):
        n = 4
        h = np.zeros(n + 1)
        h[0], h[n] = 1.0, -2.0
        assert toeplitz_minors(h).classification == f"Boundary({n})"
        h[0] = 0.5
        assert toeplitz_minors(h).classification == "Outside"
        h[0] = 2.0
        assert toeplitz_minors(h).classification == "Interior"

    def test_single_kernel_is_boundary_one(self):
        rep = toeplitz_minors([1.0, 2.0])
        assert rep.minors == (0.0,)
        assert rep.classification == "Boundary(1)"

    def test_rejects_bad_h0(self):
        with pytest.raises(DomainError):
            toeplitz_minors([-1.0, 0.0])
        with pytest.raises(DomainError):
            toeplitz_minors([1.0 + 0.5j, 0.0])
        with pytest.raises(DomainError):
            toeplitz_minors([1.0])

    def test_minors_are_real_by_construction(self):
        # literal realness bound on the raw determinants at unit scale
        rng = np.random.default_rng(41)
        for _ in range(20):
            n = int(rng.integers(1, 8))
            h = np.concatenate(
                [[1.0], 0.3 * (rng.normal(size=n) + 1j * rng.normal(size=n))]
            )
            t = _toeplitz_matrix(h)
            for k in range(1, n + 1):
                raw = np.linalg.det(t[: k + 1, : k + 1])
                assert abs(raw.imag) <= 1e-10 * abs(raw) + 1e-12
            rep = toeplitz_minors(CoeffVec(h))
            assert all(isinstance(v, float) for v in rep.minors)

    def test_scaling_law(self):
        rng = np.random.default_rng(13)
        for _ in range(10):
            n = int(rng.integers(1, 8))
            m = int(rng.integers(1, n + 1))
            atoms = AtomSet(rng.uniform(0.2, 2.0, m), min_gap_angles(rng, m))
            h = herglotz_coeffs(atoms, n).coeffs
            c = rng.uniform(0.3, 4.0)
            rep = toeplitz_minors(h)
            rep_scaled = toeplitz_minors(c * h)
            for k, (a, b) in enumerate(zip(rep.minors, rep_scaled.minors), start=1):
                scale = (2.0 * h[0].real) ** (k + 1)
                assert b == pytest.approx(c ** (k + 1) * a, abs=1e-9 * scale * c ** (k + 1))
            assert rep.classification == rep_scaled.classification

    def test_rotation_invariance(self):
        rng = np.random.default_rng(29)
        for _ in range(10):
            n = int(rng.integers(2, 9))
            h = np.concatenate([[2.0], rng.normal(size=n) + 1j * rng.normal(size=n)])
            theta = rng.uniform(0, 2 * np.pi)
            twisted = h * np.exp(1j * theta * np.arange(n + 1))
            rep = toeplitz_minors(h)
            rep_rot = toeplitz_minors(twisted)
            for a, b in zip(rep.minors, rep_rot.minors):
                assert b == pytest.approx(a, rel=1e-10, abs=1e-12)
            assert rep.classification == rep_rot.classification


class TestMembership:
    def test_interior(self):
        assert membership([1.0, 0.0]) == "Interior"

    def test_outside(self):
        assert membership([1.0, 3.0]) == "Outside"

    def test_rank_matches_atom_count(self):
        rng = np.random.default_rng(3)
        for _ in range(60):
            n = int(rng.integers(1, 13))
            m = int(rng.integers(1, n + 1))
            atoms = AtomSet(rng.uniform(0.1, 2.0, m), min_gap_angles(rng, m))
            h = herglotz_coeffs(atoms, n)
            assert membership(h) == f"Boundary({m})"

    def test_full_rank_when_atoms_exceed_order(self):
        rng = np.random.default_rng(19)
        for _ in range(25):
            n = int(rng.integers(1, 9))
            m = n + int(rng.integers(1, 3))
            atoms = AtomSet(rng.uniform(0.1, 2.0, m), min_gap_angles(rng, m))
            assert membership(herglotz_coeffs(atoms, n)) == "Interior"


class TestRecoverAtoms:
    def test_single_kernel(self):
        atoms = recover_atoms([1.0, 2.0, 2.0])
        assert atoms.m == 1
        assert atoms.alphas[0] == pytest.approx(1.0, abs=1e-10)
        assert atoms.phis[0] == pytest.approx(0.0, abs=1e-10)

    def test_two_opposite_kernels(self):
        atoms = recover_atoms([1.0, 0.0, 2.0])
        assert atoms.m == 2
        assert np.allclose(atoms.alphas, [0.5, 0.5], atol=1e-10)
        assert np.allclose(atoms.phis, [0.0, np.pi], atol=1e-10)

    def test_round_trip_on_random_atom_sets(self):
        rng = np.random.default_rng(101)
        worst = 0.0
        for _ in range(200):
            n = int(rng.integers(1, 13))
            m = int(rng.integers(1, n + 1))
            atoms = AtomSet(rng.uniform(0.1, 2.0, m), min_gap_angles(rng, m))
            rec = recover_atoms(herglotz_coeffs(atoms, n))
            assert rec.m == m
            err = max(
                np.max(np.abs(rec.alphas - atoms.alphas)),
                np.max(np.abs(rec.phis - atoms.phis)),
            )
            worst = max(worst, err)
        assert worst < 1e-6

    def test_reproduces_coefficients(self):
        rng = np.random.default_rng(59)
        for _ in range(30):
            n = int(rng.integers(1, 10))
            m = int(rng.integers(1, n + 1))
            atoms = AtomSet(rng.uniform(0.1, 2.0, m), min_gap_angles(rng, m))
            h = herglotz_coeffs(atoms, n)
            back = herglotz_coeffs(recover_atoms(h), n)
            assert np.max(np.abs(back.coeffs - h.coeffs)) <= 1e-8 * h.coeffs[0].real

    def test_rejects_interior_and_outside(self):
        with pytest.raises(NotOnBoundaryError):
            recover_atoms([1.0, 0.0])
        with pytest.raises(NotOnBoundaryError):
            recover_atoms([1.0, 3.0])
