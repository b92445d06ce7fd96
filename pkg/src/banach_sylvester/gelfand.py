"""Sylvester equations over a Banach algebra, solved through the Gelfand transform.

The pipeline is

1. certify that the spectra of ``A^(phi)`` and ``B^(phi)`` are disjoint at
   every sampled character ``phi`` (optionally refining the circle grid near
   the worst point),
2. solve ``A^(phi) F(phi) - F(phi) B^(phi) = C^(phi)`` pointwise with
   Bartels-Stewart,
3. rebuild an algebra-valued X from the samples of F (inverse DFT for the
   Wiener algebra, plain packaging for C(K)),
4. recompute ``AX - XB - C`` in algebra arithmetic.

A finite grid cannot prove separation at *every* character; the report
carries the worst gap that was seen so callers can judge the margin.
"""
import csv
import math
from dataclasses import dataclass, field, replace

import numpy as np
from sklearn.base import BaseEstimator

from .algebra import (
    AlgebraDescriptor,
    AlgebraKind,
    AlgebraMatrix,
    default_wiener_grid,
    evaluate_at,
    matrix_from_samples,
    residual_norms,
    sample_matrix,
)
from .exceptions import (
    ConvergenceFailure,
    DescriptorMismatch,
    InsufficientGrid,
    SeparationViolated,
    ShapeMismatch,
    SpectraOverlap,
)
from .linalg import frobenius_norm, schur
from .scalar import (
    DENOM_TOL,
    _separation_from_eigs,
    bartels_stewart_from_schur,
    default_gap_tol,
    solve_kron,
)


@dataclass(frozen=True)
class SolverConfig:
    """Knobs of the pipeline.

    ``grid_size``/``bandwidth`` default to the next power of two at least
    ``4 * (input bandwidth) + 1`` and to a quarter of the grid. ``gap_tol``
    defaults to ``1e-8 * (1 + ||A^||_F + ||B^||_F)`` at each point.
    """

    grid_size: int = None
    bandwidth: int = None
    refine_levels: int = 0
    gap_tol: float = None
    crosscheck_kron: bool = False


@dataclass(frozen=True)
class SeparationPoint:
    phi_index: int
    theta: float
    level: int
    min_gap: float
    witness_a: complex
    witness_b: complex
    gap_tol: float

    @property
    def violated(self):
        return self.min_gap <= self.gap_tol


@dataclass(frozen=True)
class SeparationReport:
    """Eigenvalue gaps at every checked character.

    ``points`` holds the base grid (``level == 0``, in grid order) followed by
    refinement points; a level-r point's ``phi_index`` refers to the grid of
    ``grid_size * 2**r`` points.
    """

    points: tuple
    grid_size: int
    kind: AlgebraKind

    @property
    def per_point(self):
        return tuple(p for p in self.points if p.level == 0)

    @property
    def global_min_gap(self):
        return min(p.min_gap for p in self.points)

    @property
    def worst_point(self):
        return min(self.points, key=lambda p: p.min_gap)

    @property
    def violations(self):
        return tuple(p for p in self.points if p.violated)

    @property
    def violating_points(self):
        return tuple(p.phi_index for p in self.points if p.level == 0 and p.violated)

    @property
    def separated(self):
        return not self.violations

    @property
    def refinement_history(self):
        return tuple(p for p in self.points if p.level > 0)

    def write_csv(self, path):
        """Write the gap locus (one row per checked point)."""
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["phi_index", "theta", "min_gap", "witness_re_a", "witness_im_a",
                 "witness_re_b", "witness_im_b"]
            )
            for p in self.points:
                writer.writerow(
                    [p.phi_index, repr(p.theta), repr(p.min_gap),
                     repr(p.witness_a.real), repr(p.witness_a.imag),
                     repr(p.witness_b.real), repr(p.witness_b.imag)]
                )


@dataclass(frozen=True)
class PointwiseSolution:
    """Samples ``F(phi)`` of the pointwise solution, shape ``(N, n, m)``."""

    samples: np.ndarray
    grid_size: int
    descriptor: AlgebraDescriptor
    max_relative_residual: float = 0.0


@dataclass(frozen=True)
class SylvesterSolution:
    x: AlgebraMatrix
    residual_wiener: float
    residual_sup: float
    tail_mass: float
    report: SeparationReport
    grid_size: int
    bandwidth: int
    pointwise: PointwiseSolution = field(default=None, repr=False)
    crosscheck_error: float = None


def _theta(kind, phi_index, grid_size):
    if kind is AlgebraKind.WIENER:
        return 2.0 * math.pi * phi_index / grid_size
    if kind is AlgebraKind.SCALAR:
        return 0.0
    return math.nan


def _check_pair(a, b):
    if a.rows != a.cols or b.rows != b.cols:
        raise ShapeMismatch("A and B must be square")
    return a.descriptor.unify(b.descriptor)


def _check_triple(a, b, c):
    desc = _check_pair(a, b).unify(c.descriptor)
    if c.shape != (a.rows, b.rows):
        raise ShapeMismatch(f"C must have shape {(a.rows, b.rows)}, got {c.shape}")
    return desc


def _point(a_hat, b_hat, gap_tol, phi_index, theta, level):
    try:
        sa, sb = schur(a_hat), schur(b_hat)
    except ConvergenceFailure as exc:
        raise ConvergenceFailure(f"at phi_index {phi_index}: {exc}", phi_index) from exc
    sep = _separation_from_eigs(sa.eigenvalues, sb.eigenvalues)
    tol = default_gap_tol(a_hat, b_hat) if gap_tol is None else gap_tol
    point = SeparationPoint(
        phi_index=phi_index,
        theta=theta,
        level=level,
        min_gap=sep.min_gap,
        witness_a=sep.witness_pair[0],
        witness_b=sep.witness_pair[1],
        gap_tol=tol,
    )
    return point, sa, sb


def _certify(a, b, grid_size, refine_levels, gap_tol):
    """Report plus the base-grid Schur forms (reused by the pointwise solve)."""
    desc = _check_pair(a, b)
    a_s = sample_matrix(a, grid_size)
    b_s = sample_matrix(b, grid_size)
    points, schur_a, schur_b = [], [], []
    for j in range(grid_size):
        p, sa, sb = _point(a_s[j], b_s[j], gap_tol, j, _theta(desc.kind, j, grid_size), 0)
        points.append(p)
        schur_a.append(sa)
        schur_b.append(sb)
    if desc.kind is AlgebraKind.WIENER:
        best = min(points, key=lambda p: p.min_gap)
        for level in range(1, refine_levels + 1):
            fine = grid_size * 2 ** level
            step = 2.0 * math.pi / fine
            thetas = [(best.theta - step) % (2 * math.pi), (best.theta + step) % (2 * math.pi)]
            a_f = evaluate_at(a, thetas)
            b_f = evaluate_at(b, thetas)
            for t, ah, bh in zip(thetas, a_f, b_f):
                idx = int(round(t / step)) % fine
                p, _, _ = _point(ah, bh, gap_tol, idx, t, level)
                points.append(p)
            best = min(points, key=lambda p: p.min_gap)
    report = SeparationReport(points=tuple(points), grid_size=grid_size, kind=desc.kind)
    return report, schur_a, schur_b


def _default_grid(desc, *matrices):
    if desc.kind is not AlgebraKind.WIENER:
        return desc.grid_size
    bw = max(m.effective_bandwidth for m in matrices)
    return max(desc.grid_size, default_wiener_grid(bw))


def certify_separation(a, b, refine_levels=0, grid_size=None, gap_tol=None):
    """Check pointwise spectral separation of A and B over the sampled characters.

    Parameters
    ----------
    a, b : AlgebraMatrix
        Square matrices over a common algebra.
    refine_levels : int
        Wiener only: each level re-checks the two neighbours of the current
        worst point on a grid twice as dense.
    grid_size : int, optional
        Number of circle points (Wiener); defaults to the descriptor's grid.
    gap_tol : float, optional
        Absolute gap threshold; by default relative at each point.

    Returns
    -------
    SeparationReport
    """
    desc = _check_pair(a, b)
    if grid_size is None:
        grid_size = desc.grid_size
    report, _, _ = _certify(a, b, grid_size, refine_levels, gap_tol)
    return report


def _solve_points(a_s, b_s, c_s, schur_a, schur_b):
    n_pts = c_s.shape[0]
    out = np.empty_like(c_s)
    worst = 0.0
    for j in range(n_pts):
        na, nb = frobenius_norm(a_s[j]), frobenius_norm(b_s[j])
        try:
            f = bartels_stewart_from_schur(
                schur_a[j], schur_b[j], c_s[j], DENOM_TOL * (na + nb)
            )
        except SpectraOverlap as exc:
            raise SpectraOverlap(f"at phi_index {j}: {exc}", phi_index=j) from exc
        out[j] = f
        res = frobenius_norm(a_s[j] @ f - f @ b_s[j] - c_s[j])
        scale = (na + nb) * frobenius_norm(f) + frobenius_norm(c_s[j])
        if scale > 0:
            worst = max(worst, res / scale)
    return out, worst


def solve_pointwise(a, b, c, grid_size=None, _schur=None):
    """Solve the Sylvester equation at every grid character.

    Raises
    ------
    SpectraOverlap
        With ``phi_index`` set, if some point has (numerically) touching spectra.
    """
    desc = _check_triple(a, b, c)
    if grid_size is None:
        grid_size = _default_grid(desc, a, b, c)
    a_s = sample_matrix(a, grid_size)
    b_s = sample_matrix(b, grid_size)
    c_s = sample_matrix(c, grid_size)
    if _schur is None:
        _schur = ([schur(x) for x in a_s], [schur(x) for x in b_s])
    samples, worst = _solve_points(a_s, b_s, c_s, *_schur)
    return PointwiseSolution(
        samples=samples,
        grid_size=grid_size,
        descriptor=desc,
        max_relative_residual=worst,
    )


def reconstruct(ps, target_bandwidth=None):
    """Algebra-valued matrix with Gelfand transform ``ps.samples`` on the grid.

    Returns
    -------
    x : AlgebraMatrix
    tail_mass : float
        Absolute coefficient mass outside ``|k| <= target_bandwidth`` in the
        raw inverse DFT (zero for Scalar and SampledCK).
    """
    kind = ps.descriptor.kind
    if kind is AlgebraKind.WIENER:
        if target_bandwidth is None:
            target_bandwidth = ps.grid_size // 4
        if ps.grid_size < 2 * target_bandwidth + 1:
            raise InsufficientGrid(
                f"grid of {ps.grid_size} points cannot resolve bandwidth {target_bandwidth}"
            )
        return matrix_from_samples(ps.samples, target_bandwidth)
    return AlgebraMatrix(ps.descriptor, np.moveaxis(ps.samples, 0, 2)), 0.0


def _crosscheck(a, b, c, ps, n_points=3, seed=0):
    rng = np.random.default_rng(seed)
    n_pts = ps.grid_size
    picks = rng.choice(n_pts, size=min(n_points, n_pts), replace=False)
    a_s = sample_matrix(a, n_pts)
    b_s = sample_matrix(b, n_pts)
    c_s = sample_matrix(c, n_pts)
    worst = 0.0
    for j in sorted(int(p) for p in picks):
        xk = solve_kron(a_s[j], b_s[j], c_s[j])
        scale = max(1.0, float(np.max(np.abs(xk))))
        worst = max(worst, float(np.max(np.abs(xk - ps.samples[j]))) / scale)
    return worst


def _resolve(config, desc, *matrices):
    if desc.kind is AlgebraKind.WIENER:
        grid = config.grid_size or _default_grid(desc, *matrices)
        bw = grid // 4 if config.bandwidth is None else config.bandwidth
        if grid < 2 * bw + 1:
            raise InsufficientGrid(f"grid {grid} cannot resolve bandwidth {bw}")
        return grid, bw
    if config.grid_size not in (None, desc.grid_size):
        raise InsufficientGrid(
            f"{desc.kind.value} has exactly {desc.grid_size} characters, "
            f"not {config.grid_size}"
        )
    return desc.grid_size, 0


def _finish(a, b, c, report, ps, config, bw):
    x, tail = reconstruct(ps, bw)
    res_w, res_sup = residual_norms(a, b, c, x)
    cross = _crosscheck(a, b, c, ps) if config.crosscheck_kron else None
    return SylvesterSolution(
        x=x,
        residual_wiener=res_w,
        residual_sup=res_sup,
        tail_mass=tail,
        report=report,
        grid_size=ps.grid_size,
        bandwidth=bw,
        pointwise=ps,
        crosscheck_error=cross,
    )


def _raise_violation(report):
    worst = report.worst_point
    raise SeparationViolated(
        f"spectra meet at {len(report.violations)} point(s); worst gap "
        f"{worst.min_gap:.3e} at phi_index {worst.phi_index} (level {worst.level})",
        report=report,
    )


def solve(a, b, c, config=None, **overrides):
    """Solve ``AX - XB = C`` over the algebra shared by A, B and C.

    Keyword overrides are applied on top of ``config`` (a :class:`SolverConfig`).

    Raises
    ------
    SeparationViolated
        If certification finds a character where the spectra meet.
    """
    config = replace(config or SolverConfig(), **overrides)
    desc = _check_triple(a, b, c)
    grid, bw = _resolve(config, desc, a, b, c)
    report, sa, sb = _certify(a, b, grid, config.refine_levels, config.gap_tol)
    if not report.separated:
        _raise_violation(report)
    ps = solve_pointwise(a, b, c, grid, _schur=(sa, sb))
    return _finish(a, b, c, report, ps, config, bw)


def uniqueness_check(a, b, x1, x2, c=None):
    """Largest ``||X1^(phi) - X2^(phi)||_F`` over the grid.

    Two solutions of a separated equation must agree at every character, so
    this is small exactly when they coincide as algebra elements.
    """
    _check_pair(a, b)
    for x in (x1, x2) + ((c,) if c is not None else ()):
        if x.shape != (a.rows, b.rows):
            raise ShapeMismatch(f"expected shape {(a.rows, b.rows)}, got {x.shape}")
    desc = x1.descriptor.unify(x2.descriptor)
    grid = desc.grid_size
    if desc.kind is AlgebraKind.WIENER:
        grid = max(grid, 2 * desc.bandwidth + 1)
    diff = sample_matrix(x1, grid) - sample_matrix(x2, grid)
    return float(np.max(np.sqrt(np.sum(np.abs(diff) ** 2, axis=(1, 2)))))


class SylvesterSolver(BaseEstimator):
    """Estimator-style front end to :func:`solve`.

    ``fit(A, B)`` certifies separation and caches the pointwise Schur forms;
    ``transform(C)`` then solves for any right-hand side on the same grid.

    Parameters
    ----------
    grid_size, bandwidth, refine_levels, gap_tol, crosscheck_kron
        See :class:`SolverConfig`.

    Attributes
    ----------
    separation_report_ : SeparationReport
    grid_size_ : int
    bandwidth_ : int
    solution_ : SylvesterSolution
        Result of the latest ``transform``.
    """

    def __init__(self, grid_size=None, bandwidth=None, refine_levels=0, gap_tol=None,
                 crosscheck_kron=False):
        self.grid_size = grid_size
        self.bandwidth = bandwidth
        self.refine_levels = refine_levels
        self.gap_tol = gap_tol
        self.crosscheck_kron = crosscheck_kron

    def _config(self):
        return SolverConfig(**self.get_params())

    def fit(self, A, B):
        A, B = _coerce(A), _coerce(B)
        desc = _check_pair(A, B)
        config = self._config()
        grid, bw = _resolve(config, desc, A, B)
        report, sa, sb = _certify(A, B, grid, config.refine_levels, config.gap_tol)
        self.separation_report_ = report
        if not report.separated:
            _raise_violation(report)
        self.A_, self.B_ = A, B
        self.grid_size_, self.bandwidth_ = grid, bw
        self._schur = (sa, sb)
        return self

    def _check_fitted(self):
        if not hasattr(self, "_schur"):
            raise RuntimeError("SylvesterSolver is not fitted; call fit(A, B) first")

    def solve(self, C):
        """Full :class:`SylvesterSolution` for right-hand side ``C``."""
        self._check_fitted()
        C = _coerce(C)
        desc = _check_triple(self.A_, self.B_, C)
        if desc.kind is not self.A_.descriptor.kind:
            raise DescriptorMismatch("C lives in a different algebra than A and B")
        ps = solve_pointwise(self.A_, self.B_, C, self.grid_size_, _schur=self._schur)
        self.solution_ = _finish(
            self.A_, self.B_, C, self.separation_report_, ps, self._config(), self.bandwidth_
        )
        return self.solution_

    def transform(self, C):
        return self.solve(C).x

    def fit_transform(self, A, B, C):
        return self.fit(A, B).transform(C)

    def score(self, C):
        """Negated sup-norm residual of the latest solve for ``C``."""
        return -self.solve(C).residual_sup


def _coerce(m):
    """Accept plain complex arrays as Scalar-algebra matrices."""
    if isinstance(m, AlgebraMatrix):
        return m
    return AlgebraMatrix.constant(m, AlgebraDescriptor.scalar())
