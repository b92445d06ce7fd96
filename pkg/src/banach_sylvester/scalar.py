"""Sylvester equation ``AX - XB = C`` over the complex numbers.

Three independent solvers are provided:

* :func:`solve_kron` -- vectorization ``(I_m (x) A - B^T (x) I_n) vec(X) = vec(C)``,
  the brute-force reference;
* :func:`solve_bartels_stewart` -- Schur forms of A and B plus triangular
  substitution;
* :func:`solve_polynomial` -- the Cayley-Hamilton / Bezout route. Summing
  ``A^k X - X B^k = sum_j A^j C B^(k-1-j)`` against the coefficients of
  ``p_B`` gives ``p_B(A) X``, and ``p_B(A)^{-1} = q~(A)`` whenever
  ``q p_A + q~ p_B = 1``.
"""
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from ._validation import check_square, check_sylvester_shapes
from .exceptions import (
    DimensionTooLarge,
    NotCoprime,
    SingularMatrix,
    SpectraOverlap,
)
from .linalg import (
    frobenius_norm,
    lu_factor,
    lu_solve,
    lu_solve_factored,
    schur,
)

TOL_RES = 1e-10
DENOM_TOL = 1e-13
CHAR_POLY_MAX_DIM = 8
POLY_SOLVER_MAX_DIM = 5
KRON_COND_MAX_SIZE = 144


@dataclass(frozen=True)
class ScalarSeparation:
    """Eigenvalues of A and B and their closest cross pair."""

    eigs_a: np.ndarray
    eigs_b: np.ndarray
    min_gap: float
    witness_pair: tuple
    kron_sigma_min: float = None

    def separated(self, gap_tol):
        return self.min_gap > gap_tol


@dataclass(frozen=True)
class CharPoly:
    """Monic characteristic polynomial, coefficients in ascending degree."""

    coefficients: np.ndarray
    monic: bool = True

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def __call__(self, z):
        return P.polyval(z, self.coefficients)


@dataclass(frozen=True)
class BezoutPair:
    """Polynomials ``u, v`` (ascending coefficients) with ``u p + v q = 1``."""

    u: np.ndarray
    v: np.ndarray


def default_gap_tol(a, b):
    return 1e-8 * (1.0 + frobenius_norm(a) + frobenius_norm(b))


def kronecker_operator(a, b):
    """Matrix of ``X -> AX - XB`` acting on column-stacked ``vec(X)``."""
    n, m = a.shape[0], b.shape[0]
    return np.kron(np.eye(m), a) - np.kron(b.T, np.eye(n))


def kron_sigma_min(a, b, max_iterations=200, rtol=1e-8):
    """Smallest singular value of the Sylvester operator, by inverse iteration.

    Only defined for ``n * m <= 144``; returns 0 when the operator is singular.
    """
    a = check_square(a, "A")
    b = check_square(b, "B")
    size = a.shape[0] * b.shape[0]
    if size > KRON_COND_MAX_SIZE:
        raise DimensionTooLarge(f"n*m = {size} exceeds {KRON_COND_MAX_SIZE}")
    op = kronecker_operator(a, b)
    try:
        f = lu_factor(op)
        fh = lu_factor(op.conj().T)
    except SingularMatrix:
        return 0.0
    v = np.ones(size, dtype=np.complex128) / np.sqrt(size)
    lam = 0.0
    for _ in range(max_iterations):
        # w = (op^H op)^{-1} v
        w = lu_solve_factored(f, lu_solve_factored(fh, v))
        new = float(np.real(v.conj() @ w))
        v = w / np.linalg.norm(w)
        if abs(new - lam) <= rtol * abs(new):
            lam = new
            break
        lam = new
    return float(1.0 / np.sqrt(lam))


def spectral_separation(a, b, with_conditioning=False):
    """Minimal distance between the spectra of A and B.

    Parameters
    ----------
    a, b : square array_like
    with_conditioning : bool
        Also estimate the smallest singular value of the Kronecker operator
        (only for ``n * m <= 144``). The eigengap alone does not bound the
        conditioning of the equation.
    """
    a = check_square(a, "A")
    b = check_square(b, "B")
    ea = schur(a).eigenvalues
    eb = schur(b).eigenvalues
    return _separation_from_eigs(ea, eb, kron_sigma_min(a, b) if with_conditioning else None)


def _separation_from_eigs(ea, eb, sigma=None):
    d = np.abs(ea[:, None] - eb[None, :])
    i, j = np.unravel_index(np.argmin(d), d.shape)
    return ScalarSeparation(
        eigs_a=ea,
        eigs_b=eb,
        min_gap=float(d[i, j]),
        witness_pair=(complex(ea[i]), complex(eb[j])),
        kron_sigma_min=sigma,
    )


def solve_kron(a, b, c):
    """Solve ``AX - XB = C`` through the ``nm x nm`` Kronecker system.

    Raises
    ------
    SpectraOverlap
        If the Kronecker operator is numerically singular.
    """
    a, b, c = check_sylvester_shapes(a, b, c)
    n, m = c.shape
    try:
        vec_x = lu_solve(kronecker_operator(a, b), c.reshape(-1, order="F"))
    except SingularMatrix as exc:
        raise SpectraOverlap(f"Sylvester operator is singular: {exc}") from exc
    return vec_x.reshape((n, m), order="F")


def _triangular_sylvester(ta, tb, f, denom_tol):
    """Solve ``ta Y - Y tb = f`` for upper triangular ``ta``, ``tb``.

    Columns of Y are found left to right; column j needs
    ``(ta - tb[j, j] I) y_j = f_j + sum_{i<j} tb[i, j] y_i``.
    """
    n, m = f.shape
    y = np.zeros((n, m), dtype=np.complex128)
    da = np.diag(ta)
    for j in range(m):
        mu = tb[j, j]
        denom = da - mu
        bad = np.flatnonzero(np.abs(denom) <= denom_tol)
        if bad.size:
            i = int(bad[0])
            raise SpectraOverlap(
                f"|T_A[{i},{i}] - T_B[{j},{j}]| = {abs(denom[i]):.3e} <= {denom_tol:.3e}"
            )
        rhs = f[:, j] + y[:, :j] @ tb[:j, j]
        col = y[:, j]
        for i in range(n - 1, -1, -1):
            col[i] = (rhs[i] - ta[i, i + 1:] @ col[i + 1:]) / denom[i]
    return y


def bartels_stewart_from_schur(sa, sb, c, denom_tol):
    """Bartels-Stewart solve when Schur forms of A and B are already known."""
    f = sa.q.conj().T @ c @ sb.q
    y = _triangular_sylvester(sa.t, sb.t, f, denom_tol)
    return sa.q @ y @ sb.q.conj().T


def solve_bartels_stewart(a, b, c):
    """Solve ``AX - XB = C`` by the Bartels-Stewart algorithm (complex Schur).

    Raises
    ------
    SpectraOverlap
        If a diagonal denominator ``|T_A[i,i] - T_B[j,j]|`` is at most
        ``1e-13 * (||A||_F + ||B||_F)``.
    """
    a, b, c = check_sylvester_shapes(a, b, c)
    tol = DENOM_TOL * (frobenius_norm(a) + frobenius_norm(b))
    return bartels_stewart_from_schur(schur(a), schur(b), c, tol)


def char_poly(m):
    """Monic characteristic polynomial from the Schur eigenvalues.

    Expands ``prod_i (z - lambda_i)``; limited to ``n <= 8``.
    """
    m = check_square(m)
    n = m.shape[0]
    if n > CHAR_POLY_MAX_DIM:
        raise DimensionTooLarge(f"char_poly supports n <= {CHAR_POLY_MAX_DIM}, got {n}")
    coeffs = np.ones(1, dtype=np.complex128)
    for lam in schur(m).eigenvalues:
        shifted = np.zeros(coeffs.size + 1, dtype=np.complex128)
        shifted[1:] = coeffs
        shifted[:-1] -= lam * coeffs
        coeffs = shifted
    return CharPoly(coefficients=coeffs)


def matrix_polyval(coeffs, m):
    """Evaluate ``sum_k coeffs[k] m^k`` by Horner's rule."""
    m = check_square(m)
    out = np.zeros_like(m)
    eye = np.eye(m.shape[0], dtype=np.complex128)
    for ck in np.asarray(coeffs)[::-1]:
        out = out @ m + ck * eye
    return out


def _trim(p, tol):
    p = np.asarray(p, dtype=np.complex128)
    nz = np.flatnonzero(np.abs(p) > tol)
    if nz.size == 0:
        return np.zeros(1, dtype=np.complex128)
    return p[: nz[-1] + 1]


def bezout(p, q, rtol=1e-12):
    """Extended Euclidean algorithm over C[z].

    Returns ``BezoutPair(u, v)`` with ``u p + v q = 1``. Remainder
    coefficients below ``rtol`` times the dividend's largest coefficient are
    treated as zero.

    Raises
    ------
    NotCoprime
        If the remainder sequence vanishes before reaching a nonzero constant.
    """
    pc = np.asarray(getattr(p, "coefficients", p), dtype=np.complex128)
    qc = np.asarray(getattr(q, "coefficients", q), dtype=np.complex128)
    r0, r1 = _trim(pc, 0.0), _trim(qc, 0.0)
    s0, s1 = np.ones(1, complex), np.zeros(1, complex)
    t0, t1 = np.zeros(1, complex), np.ones(1, complex)
    if not np.any(r0) or not np.any(r1):
        raise NotCoprime("zero polynomial has no Bezout identity")
    while len(r1) > 1:
        quot, rem = P.polydiv(r0, r1)
        rem = _trim(rem, rtol * np.max(np.abs(r0)))
        r0, r1 = r1, rem
        s0, s1 = s1, P.polysub(s0, P.polymul(quot, s1))
        t0, t1 = t1, P.polysub(t0, P.polymul(quot, t1))
        if not np.any(r1):
            raise NotCoprime(
                f"Euclidean remainder vanished at degree {len(r0) - 1}; common root present"
            )
    g = r1[0]
    return BezoutPair(u=_trim(s1 / g, 0.0), v=_trim(t1 / g, 0.0))


def solve_polynomial(a, b, c, gap_tol=None):
    """Solve ``AX - XB = C`` with characteristic polynomials and a Bezout identity.

    ``X = q~(A) sum_{k=1}^{m} beta_k sum_{j=0}^{k-1} A^j C B^(k-1-j)`` where
    ``p_B = sum_k beta_k z^k`` and ``q p_A + q~ p_B = 1``. Restricted to
    ``n, m <= 5``: polynomial evaluation in powers of A loses accuracy fast.
    """
    a, b, c = check_sylvester_shapes(a, b, c)
    n, m = c.shape
    if max(n, m) > POLY_SOLVER_MAX_DIM:
        raise DimensionTooLarge(
            f"solve_polynomial supports n, m <= {POLY_SOLVER_MAX_DIM}, got {n}, {m}"
        )
    sep = spectral_separation(a, b)
    if gap_tol is None:
        gap_tol = default_gap_tol(a, b)
    if sep.min_gap <= gap_tol:
        raise NotCoprime(
            f"eigenvalues {sep.witness_pair[0]:.6g} and {sep.witness_pair[1]:.6g} "
            f"are within {gap_tol:.3e}"
        )
    p_a = char_poly(a)
    p_b = char_poly(b)
    pair = bezout(p_a, p_b)
    beta = p_b.coefficients
    # s_k = sum_{j<k} A^j C B^(k-1-j), with s_{k+1} = A s_k + C B^k
    s_k = c.copy()
    b_pow = b.copy()
    total = beta[1] * s_k
    for k in range(2, m + 1):
        s_k = a @ s_k + c @ b_pow
        b_pow = b_pow @ b
        total = total + beta[k] * s_k
    return matrix_polyval(pair.v, a) @ total


def residual(a, b, x, c):
    """Frobenius norm of ``AX - XB - C``."""
    a, b, c = check_sylvester_shapes(a, b, c)
    return frobenius_norm(a @ x - x @ b - c)
