"""Dense complex linear algebra.

LU with partial pivoting, Householder reduction to Hessenberg form, and the
complex Schur decomposition by single-shift (Wilkinson) QR iteration with
bottom-up deflation. Matrices are plain ``complex128`` numpy arrays.
"""
from dataclasses import dataclass

import numpy as np

from ._validation import as_complex_matrix, check_square
from .exceptions import ConvergenceFailure, ShapeMismatch, SingularMatrix

PIVOT_TOL = 1e-13
DEFLATION_EPS = 1e-14
NORM_RTOL = 1e-6


@dataclass(frozen=True)
class LUFactors:
    """Packed LU factors: ``m[perm] = L @ U`` with unit lower-triangular L."""

    lu: np.ndarray
    perm: np.ndarray
    sign: int


@dataclass(frozen=True)
class SchurForm:
    """Complex Schur form ``m = q @ t @ q^H`` with ``t`` upper triangular."""

    q: np.ndarray
    t: np.ndarray
    source_dim: int

    @property
    def eigenvalues(self):
        return np.diag(self.t).copy()


def lu_factor(m, pivot_tol=PIVOT_TOL):
    """LU factorization with partial pivoting.

    Raises
    ------
    SingularMatrix
        If a pivot magnitude falls to ``pivot_tol`` times the largest
        initial entry magnitude or below.
    """
    a = check_square(m).copy()
    n = a.shape[0]
    threshold = pivot_tol * np.max(np.abs(a))
    perm = np.arange(n)
    sign = 1
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if abs(a[p, k]) <= threshold:
            raise SingularMatrix(
                f"pivot {abs(a[p, k]):.3e} at column {k} is below tolerance {threshold:.3e}"
            )
        if p != k:
            a[[k, p]] = a[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            sign = -sign
        a[k + 1:, k] /= a[k, k]
        a[k + 1:, k + 1:] -= np.outer(a[k + 1:, k], a[k, k + 1:])
    return LUFactors(a, perm, sign)


def lu_solve_factored(factors, rhs):
    lu = factors.lu
    n = lu.shape[0]
    x = np.array(rhs, dtype=np.complex128)
    vector = x.ndim == 1
    if vector:
        x = x[:, None]
    if x.shape[0] != n:
        raise ShapeMismatch(f"rhs has {x.shape[0]} rows, expected {n}")
    x = x[factors.perm]
    for i in range(1, n):
        x[i] -= lu[i, :i] @ x[:i]
    for i in range(n - 1, -1, -1):
        x[i] = (x[i] - lu[i, i + 1:] @ x[i + 1:]) / lu[i, i]
    return x[:, 0] if vector else x


def lu_solve(m, rhs, pivot_tol=PIVOT_TOL):
    """Solve ``m @ x = rhs`` by Gaussian elimination with partial pivoting."""
    return lu_solve_factored(lu_factor(m, pivot_tol), rhs)


def det(m):
    """Determinant via LU; returns 0 for a numerically singular matrix."""
    try:
        f = lu_factor(m)
    except SingularMatrix:
        return 0j
    return f.sign * np.prod(np.diag(f.lu))


def _householder(x):
    """Vector v with (I - 2 v v^H / v^H v) x parallel to e_1, or None if x is already."""
    if not np.any(x[1:]):
        return None
    alpha = np.linalg.norm(x)
    phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
    v = x.copy()
    v[0] += phase * alpha
    return v / np.linalg.norm(v)


def hessenberg(m):
    """Unitary reduction to upper Hessenberg form.

    Returns
    -------
    q, h : ndarray
        ``m = q @ h @ q^H`` and ``h`` is zero below the first subdiagonal.
        Columns that are already reduced are skipped, so a Hessenberg input
        comes back unchanged with ``q = I``.
    """
    h = check_square(m).copy()
    n = h.shape[0]
    q = np.eye(n, dtype=np.complex128)
    for k in range(n - 2):
        v = _householder(h[k + 1:, k])
        if v is None:
            continue
        h[k + 1:, :] -= 2.0 * np.outer(v, v.conj() @ h[k + 1:, :])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ v, v.conj())
        q[:, k + 1:] -= 2.0 * np.outer(q[:, k + 1:] @ v, v.conj())
        h[k + 2:, k] = 0.0
    return q, h


def _givens(x, y):
    # G = [[c, s], [-conj(s), c]] maps (x, y) to (r, 0); c is real
    if y == 0:
        return 1.0, 0j
    if x == 0:
        return 0.0, 1.0 + 0j
    ax = abs(x)
    r = np.hypot(ax, abs(y))
    return ax / r, (x / ax) * np.conj(y) / r


def _wilkinson_shift(h, hi):
    a, b = h[hi - 1, hi - 1], h[hi - 1, hi]
    c, d = h[hi, hi - 1], h[hi, hi]
    half = 0.5 * (a - d)
    disc = np.sqrt(half * half + b * c)
    # eigenvalue of the trailing 2x2 block closest to d
    mu1 = d - (b * c) / (half + disc) if (half + disc) != 0 else d
    mu2 = d - (b * c) / (half - disc) if (half - disc) != 0 else d
    return mu1 if abs(mu1 - d) <= abs(mu2 - d) else mu2


def _qr_sweep(h, q, lo, hi, shift):
    """One implicit single-shift QR step on the active window h[lo:hi+1, lo:hi+1]."""
    x = h[lo, lo] - shift
    y = h[lo + 1, lo]
    for k in range(lo, hi):
        c, s = _givens(x, y)
        j0 = max(lo, k - 1)
        r0 = h[k, j0:].copy()
        r1 = h[k + 1, j0:]
        h[k, j0:] = c * r0 + s * r1
        h[k + 1, j0:] = -np.conj(s) * r0 + c * r1
        if k > lo:
            h[k + 1, k - 1] = 0.0
        i1 = min(k + 2, hi) + 1
        c0 = h[:i1, k].copy()
        c1 = h[:i1, k + 1]
        h[:i1, k] = c * c0 + np.conj(s) * c1
        h[:i1, k + 1] = -s * c0 + c * c1
        c0 = q[:, k].copy()
        c1 = q[:, k + 1]
        q[:, k] = c * c0 + np.conj(s) * c1
        q[:, k + 1] = -s * c0 + c * c1
        if k < hi - 1:
            x = h[k + 1, k]
            y = h[k + 2, k]


def schur(m, max_iterations=None, deflation_eps=DEFLATION_EPS):
    """Complex Schur decomposition.

    Hessenberg reduction followed by Wilkinson-shifted QR sweeps. A
    subdiagonal entry is deflated once
    ``|h[i+1, i]| <= deflation_eps * (|h[i, i]| + |h[i+1, i+1]|)``.

    Parameters
    ----------
    m : (n, n) array_like
    max_iterations : int, optional
        Sweep budget per eigenvalue; defaults to ``100 * n``.

    Raises
    ------
    ConvergenceFailure
    """
    q, h = hessenberg(m)
    n = h.shape[0]
    if max_iterations is None:
        max_iterations = 100 * n
    hnorm = np.linalg.norm(h)
    hi = n - 1
    its = 0
    while hi > 0:
        lo = 0
        for l in range(hi, 0, -1):
            scale = abs(h[l - 1, l - 1]) + abs(h[l, l])
            if scale == 0.0:
                scale = hnorm
            if abs(h[l, l - 1]) <= deflation_eps * scale:
                h[l, l - 1] = 0.0
                lo = l
                break
        if lo == hi:
            hi -= 1
            its = 0
            continue
        its += 1
        if its > max_iterations:
            raise ConvergenceFailure(
                f"eigenvalue {hi} did not deflate within {max_iterations} QR sweeps"
            )
        if its % 11 == 0:
            # exceptional shift to break cycles
            shift = h[hi, hi] + 0.75 * abs(h[hi, hi - 1])
        else:
            shift = _wilkinson_shift(h, hi)
        _qr_sweep(h, q, lo, hi, shift)
    return SchurForm(q=q, t=np.triu(h), source_dim=n)


def eigenvalues(m):
    """Eigenvalues (with multiplicity) as the diagonal of the Schur factor."""
    return schur(m).eigenvalues


def frobenius_norm(m):
    return float(np.sqrt(np.sum(np.abs(as_complex_matrix(m)) ** 2)))


def operator_norm_estimate(m, rtol=NORM_RTOL, max_iterations=10_000):
    """Spectral norm estimate by power iteration on ``m^H m``.

    Iterates the Rayleigh quotient until its relative change drops below
    ``rtol**2 / 10``; the result never exceeds the Frobenius norm.
    """
    m = as_complex_matrix(m)
    fro = frobenius_norm(m)
    if fro == 0.0:
        return 0.0
    g = m.conj().T @ m
    v = g[:, int(np.argmax(np.linalg.norm(g, axis=0)))].copy()
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(max_iterations):
        w = g @ v
        new = float(np.real(v.conj() @ w))
        nw = np.linalg.norm(w)
        if nw == 0.0:
            break
        v = w / nw
        if abs(new - lam) <= 0.1 * rtol * rtol * abs(new):
            lam = new
            break
        lam = new
    return min(float(np.sqrt(max(lam, 0.0))), fro)


def spectra_distance(x, y):
    """Largest pair distance after greedily matching two eigenvalue multisets.

    Pairs are formed by repeatedly taking the closest remaining (x_i, y_j).
    """
    x = np.asarray(x, dtype=np.complex128).ravel()
    y = np.asarray(y, dtype=np.complex128).ravel()
    if x.size != y.size:
        raise ShapeMismatch(f"multisets differ in size: {x.size} != {y.size}")
    if x.size == 0:
        return 0.0
    d = np.abs(x[:, None] - y[None, :])
    worst = 0.0
    for _ in range(x.size):
        i, j = np.unravel_index(np.argmin(d), d.shape)
        worst = max(worst, float(d[i, j]))
        d[i, :] = np.inf
        d[:, j] = np.inf
    return worst
