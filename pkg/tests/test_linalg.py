import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from banach_sylvester.exceptions import ConvergenceFailure, SingularMatrix
from banach_sylvester.linalg import (
    det,
    eigenvalues,
    frobenius_norm,
    hessenberg,
    lu_solve,
    operator_norm_estimate,
    schur,
    spectra_distance,
)

from _builders import crandn


def faddeev_leverrier(m):
    """Characteristic polynomial coefficients, highest degree first."""
    n = m.shape[0]
    coeffs = [1.0 + 0j]
    mk = np.zeros_like(m)
    for k in range(1, n + 1):
        mk = m @ mk + coeffs[-1] * np.eye(n)
        coeffs.append(-np.trace(m @ mk) / k)
    return np.array(coeffs)


def durand_kerner(coeffs, iterations=2000):
    coeffs = coeffs / coeffs[0]
    n = len(coeffs) - 1
    roots = (0.4 + 0.9j) ** np.arange(n)
    for _ in range(iterations):
        prev = roots.copy()
        for i in range(n):
            others = np.delete(roots, i)
            roots[i] -= np.polyval(coeffs, roots[i]) / np.prod(roots[i] - others)
        if np.max(np.abs(roots - prev)) < 1e-15:
            break
    return roots


class TestLUSolve:
    def test_identity(self, rng):
        b = crandn(rng, 3, 2)
        np.testing.assert_allclose(lu_solve(np.eye(3), b), b, atol=0)

    def test_diagonal(self):
        x = lu_solve(np.diag([2.0, 4.0]), np.array([[2.0], [4.0]]))
        np.testing.assert_allclose(x, [[1.0], [1.0]])

    def test_multiply_back(self, rng):
        m = crandn(rng, 8, 8) + 4 * np.eye(8)
        x_star = crandn(rng, 8, 3)
        x = lu_solve(m, m @ x_star)
        assert np.max(np.abs(x - x_star)) <= 1e-10

    def test_residual_contract(self, rng):
        m = crandn(rng, 10, 10)
        rhs = crandn(rng, 10, 4)
        x = lu_solve(m, rhs)
        assert frobenius_norm(m @ x - rhs) <= 1e-12 * frobenius_norm(m) * frobenius_norm(x)

    def test_singular(self):
        with pytest.raises(SingularMatrix):
            lu_solve(np.array([[1.0, 2.0], [2.0, 4.0]]), np.ones((2, 1)))

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            lu_solve(np.eye(3), np.ones((2, 1)))

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            lu_solve(np.array([[np.nan]]), np.ones((1, 1)))


class TestHessenberg:
    def test_fixed_point(self, rng):
        m = np.triu(crandn(rng, 5, 5), -1)
        q, h = hessenberg(m)
        np.testing.assert_array_equal(q, np.eye(5))
        np.testing.assert_array_equal(h, m)

    def test_one_by_one(self):
        q, h = hessenberg(np.array([[3 - 1j]]))
        np.testing.assert_array_equal(q, [[1]])
        np.testing.assert_array_equal(h, [[3 - 1j]])

    def test_random_reconstruction(self, rng):
        m = crandn(rng, 6, 6)
        q, h = hessenberg(m)
        assert np.all(np.tril(h, -2) == 0)
        assert frobenius_norm(q @ h @ q.conj().T - m) <= 1e-12 * frobenius_norm(m)
        assert frobenius_norm(q @ q.conj().T - np.eye(6)) <= 1e-13


class TestSchur:
    def test_diagonal(self):
        d = np.diag([3.0, -1.0, 2j])
        sf = schur(d)
        assert spectra_distance(np.diag(sf.t), np.diag(d)) == 0
        assert np.allclose(np.abs(sf.q), np.abs(np.round(np.abs(sf.q))))

    def test_nilpotent(self):
        sf = schur(np.array([[0.0, 1.0], [0.0, 0.0]]))
        assert np.all(np.tril(sf.t, -1) == 0)
        np.testing.assert_array_equal(np.diag(sf.t), [0, 0])

    def test_matches_independent_root_finder(self, rng):
        m = crandn(rng, 7, 7)
        roots = durand_kerner(faddeev_leverrier(m))
        assert spectra_distance(eigenvalues(m), roots) <= 1e-8

    @pytest.mark.parametrize("n", [1, 2, 5, 12, 20])
    def test_unitary_and_reconstruction(self, rng, n):
        m = crandn(rng, n, n)
        sf = schur(m)
        assert np.all(np.tril(sf.t, -1) == 0)
        assert frobenius_norm(sf.q @ sf.q.conj().T - np.eye(n)) <= 1e-12 * n
        assert frobenius_norm(sf.q @ sf.t @ sf.q.conj().T - m) <= 1e-10 * frobenius_norm(m)

    def test_real_matrix_with_complex_pair(self):
        rot = np.array([[0.0, -1.0], [1.0, 0.0]])
        assert spectra_distance(eigenvalues(rot), [1j, -1j]) <= 1e-14

    def test_defective_matrix(self):
        jordan = np.diag([2.0] * 4) + np.diag([1.0] * 3, 1)
        rng = np.random.default_rng(0)
        p = crandn(rng, 4, 4) + 3 * np.eye(4)
        m = p @ jordan @ np.linalg.inv(p)
        # a 4x4 Jordan block spreads eigenvalues by ~eps^(1/4)
        assert spectra_distance(eigenvalues(m), [2.0] * 4) <= 1e-3

    def test_iteration_budget(self, rng):
        with pytest.raises(ConvergenceFailure):
            schur(crandn(rng, 6, 6), max_iterations=1)


class TestEigenvalues:
    def test_diagonal(self):
        assert spectra_distance(eigenvalues(np.diag([1.0, 2.0])), [1, 2]) == 0

    def test_nilpotent(self):
        np.testing.assert_array_equal(eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]])), [0, 0])

    def test_companion(self):
        companion = np.array([[3.0, -2.0], [1.0, 0.0]])
        assert spectra_distance(eigenvalues(companion), [1.0, 2.0]) <= 1e-12

    def test_similarity_invariance(self, rng):
        for n in (3, 6, 9):
            m = crandn(rng, n, n)
            p = crandn(rng, n, n) + 2 * np.sqrt(n) * np.eye(n)
            similar = p @ m @ lu_solve(p, np.eye(n))
            assert spectra_distance(eigenvalues(similar), eigenvalues(m)) <= 1e-7

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 12), st.integers(0, 2**32 - 1))
    def test_trace(self, n, seed):
        m = crandn(np.random.default_rng(seed), n, n)
        assert abs(np.trace(m) - eigenvalues(m).sum()) <= 1e-9 * n * frobenius_norm(m)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 10), st.integers(0, 2**32 - 1))
    def test_determinant(self, n, seed):
        m = crandn(np.random.default_rng(seed), n, n)
        d = det(m)
        assert abs(np.prod(eigenvalues(m)) - d) <= 1e-8 * abs(d)


class TestNorms:
    def test_identity(self):
        assert frobenius_norm(np.eye(2)) == pytest.approx(np.sqrt(2))
        assert operator_norm_estimate(np.eye(2)) == pytest.approx(1.0)

    def test_diagonal(self):
        assert operator_norm_estimate(np.diag([3.0, 4.0])) == pytest.approx(4.0, rel=1e-6)

    def test_matches_eigenvalue_oracle(self, rng):
        m = crandn(rng, 5, 5)
        oracle = np.sqrt(np.max(eigenvalues(m.conj().T @ m).real))
        assert operator_norm_estimate(m) == pytest.approx(oracle, rel=1e-6)

    def test_zero(self):
        assert operator_norm_estimate(np.zeros((3, 2))) == 0.0

    @settings(max_examples=50, deadline=None)
    @given(st.integers(1, 8), st.integers(1, 8), st.integers(0, 2**32 - 1))
    def test_bounded_by_frobenius(self, n, m, seed):
        mat = crandn(np.random.default_rng(seed), n, m)
        assert operator_norm_estimate(mat) <= frobenius_norm(mat)


class TestSpectraDistance:
    def test_order_free(self):
        assert spectra_distance([1, 2, 3], [3, 1, 2]) == 0

    def test_multiplicity(self):
        assert spectra_distance([1, 1, 2], [1, 2, 2]) == pytest.approx(1.0)

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            spectra_distance([1], [1, 2])
