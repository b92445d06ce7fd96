"""Roth's removal rule over the supported algebras.

If ``AX - XB = C`` then ``S = [[I, X], [0, I]]`` satisfies
``S [[A, C], [0, B]] S^{-1} = [[A, 0], [0, B]]``, with ``S^{-1} = [[I, -X], [0, I]]``.
Repeating this on a block upper triangular matrix whose diagonal blocks have
pairwise separated spectra removes every off-diagonal block.
"""
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np
from sklearn.base import BaseEstimator

from .algebra import AlgebraKind, AlgebraMatrix, entry_sup_norms, matmul
from .exceptions import SeparationViolated, ShapeMismatch
from .gelfand import (
    SolverConfig,
    _check_triple,
    _resolve,
    certify_separation,
    solve,
)

CERT_TOL = 1e-8


@dataclass(frozen=True)
class SimilarityCertificate:
    """Witness that ``s @ t_upper @ s_inv`` equals the block-diagonal target.

    ``residual`` is the largest entry sup-norm of ``S T S^{-1} - D`` and
    ``inverse_residual`` that of ``S S^{-1} - I``, both recomputed in algebra
    arithmetic. ``scale`` is ``max(1, sup-norm of T)``.
    """

    s: AlgebraMatrix
    s_inv: AlgebraMatrix
    residual: float
    inverse_residual: float
    scale: float = 1.0
    product: AlgebraMatrix = field(default=None, repr=False)
    solution: AlgebraMatrix = field(default=None, repr=False)
    report: object = field(default=None, repr=False)

    @property
    def valid(self):
        tol = CERT_TOL * self.scale
        return self.residual <= tol and self.inverse_residual <= tol


def _sup(m):
    return float(np.max(entry_sup_norms(m)))


def similarity_from_solution(x, n=None, m=None):
    """``S = [[I_n, X], [0, I_m]]`` and ``S^{-1} = [[I_n, -X], [0, I_m]]``."""
    n = x.rows if n is None else n
    m = x.cols if m is None else m
    if x.shape != (n, m):
        raise ShapeMismatch(f"X has shape {x.shape}, expected {(n, m)}")
    desc = x.descriptor
    i_n = AlgebraMatrix.identity(n, desc)
    i_m = AlgebraMatrix.identity(m, desc)
    z = AlgebraMatrix.zeros(m, n, desc)
    s = AlgebraMatrix.block([[i_n, x], [z, i_m]])
    s_inv = AlgebraMatrix.block([[i_n, -x], [z, i_m]])
    return s, s_inv


def verify_similarity(s, s_inv, t_upper, t_diag):
    """Recompute ``S T S^{-1}`` and ``S S^{-1}`` and measure their defects."""
    d = t_upper.rows
    for name, mat in (("S", s), ("S_inv", s_inv), ("T_upper", t_upper), ("T_diag", t_diag)):
        if mat.shape != (d, d):
            raise ShapeMismatch(f"{name} has shape {mat.shape}, expected {(d, d)}")
    product = matmul(matmul(s, t_upper, widen=True), s_inv, widen=True)
    ident = AlgebraMatrix.identity(d, s.descriptor)
    return SimilarityCertificate(
        s=s,
        s_inv=s_inv,
        residual=_sup(product - t_diag),
        inverse_residual=_sup(matmul(s, s_inv, widen=True) - ident),
        scale=max(1.0, _sup(t_upper)),
        product=product,
    )


def roth_decide(a, b, c, config=None, **overrides):
    """Certify separation, solve for X and return the verified similarity.

    Raises
    ------
    SeparationViolated
        If the spectra of ``A^`` and ``B^`` meet at a sampled character; by
        Roth's rule no similarity exists for every C in that case.
    """
    _check_triple(a, b, c)
    sol = solve(a, b, c, config, **overrides)
    s, s_inv = similarity_from_solution(sol.x)
    z = AlgebraMatrix.zeros(b.rows, a.rows, a.descriptor)
    t_upper = AlgebraMatrix.block([[a, c], [z, b]])
    t_diag = AlgebraMatrix.block([[a, AlgebraMatrix.zeros(a.rows, b.rows, a.descriptor)], [z, b]])
    cert = verify_similarity(s, s_inv, t_upper, t_diag)
    return replace(cert, solution=sol.x, report=sol.report)


@dataclass(frozen=True)
class BlockTriangular:
    """Block upper triangular matrix with square diagonal blocks.

    ``blocks`` maps ``(i, j)`` with ``i <= j`` to a ``d_i x d_j``
    AlgebraMatrix; missing off-diagonal blocks are zero.
    """

    dims: tuple
    blocks: dict
    descriptor: object

    @classmethod
    def from_blocks(cls, diagonal, upper=None):
        upper = dict(upper or {})
        desc = diagonal[0].descriptor
        for blk in list(diagonal) + list(upper.values()):
            desc = desc.unify(blk.descriptor)
        dims = tuple(blk.rows for blk in diagonal)
        blocks = {}
        for i, blk in enumerate(diagonal):
            if blk.rows != blk.cols:
                raise ShapeMismatch(f"diagonal block {i} is not square")
            blocks[(i, i)] = blk
        for (i, j), blk in upper.items():
            if not 0 <= i < j < len(dims):
                raise ShapeMismatch(f"block ({i}, {j}) is not strictly upper triangular")
            if blk.shape != (dims[i], dims[j]):
                raise ShapeMismatch(
                    f"block ({i}, {j}) has shape {blk.shape}, expected {(dims[i], dims[j])}"
                )
            blocks[(i, j)] = blk
        return cls(dims=dims, blocks=blocks, descriptor=desc)

    @classmethod
    def from_matrix(cls, m, dims):
        """Split ``m`` along ``dims``; blocks below the diagonal are dropped."""
        off = np.concatenate([[0], np.cumsum(dims)])
        if off[-1] != m.rows or m.rows != m.cols:
            raise ShapeMismatch(f"dims {dims} do not partition a {m.shape} matrix")
        diagonal = [m[off[i]:off[i + 1], off[i]:off[i + 1]] for i in range(len(dims))]
        upper = {
            (i, j): m[off[i]:off[i + 1], off[j]:off[j + 1]]
            for i in range(len(dims)) for j in range(i + 1, len(dims))
        }
        return cls.from_blocks(diagonal, upper)

    @property
    def n_blocks(self):
        return len(self.dims)

    @property
    def size(self):
        return int(sum(self.dims))

    @property
    def offsets(self):
        return np.concatenate([[0], np.cumsum(self.dims)]).astype(int)

    def block(self, i, j):
        if (i, j) in self.blocks:
            return self.blocks[(i, j)]
        return AlgebraMatrix.zeros(self.dims[i], self.dims[j], self.descriptor)

    def diagonal(self):
        """Same diagonal blocks with every off-diagonal block removed."""
        return BlockTriangular.from_blocks([self.blocks[(i, i)] for i in range(self.n_blocks)])

    def to_matrix(self):
        n = self.n_blocks
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                if j >= i:
                    row.append(self.block(i, j))
                else:
                    row.append(AlgebraMatrix.zeros(self.dims[i], self.dims[j], self.descriptor))
            rows.append(row)
        return AlgebraMatrix.block(rows)


class BlockDiagonalization(NamedTuple):
    s_total: AlgebraMatrix
    s_total_inv: AlgebraMatrix
    d: BlockTriangular
    cert: SimilarityCertificate


def _stage_similarity(size, r0, r1, x):
    desc = x.descriptor
    s_data = np.array(AlgebraMatrix.identity(size, desc).data)
    s_inv_data = s_data.copy()
    s_data[r0:r1, r1:] = x.data
    s_inv_data[r0:r1, r1:] = -x.data
    return AlgebraMatrix(desc, s_data), AlgebraMatrix(desc, s_inv_data)


def block_diagonalize(t, config=None, **overrides):
    """Remove all off-diagonal blocks of ``t`` by ``n - 1`` Sylvester solves.

    Works bottom-up: once blocks ``i+1, ..., n-1`` are decoupled, block row
    ``i`` is cleared with one solve ``A_ii X - X diag(A_{i+1,i+1}, ...) = R``.

    Raises
    ------
    SeparationViolated
        With ``blocks = (i, j)`` for the first pair of diagonal blocks whose
        spectra meet at a sampled character.
    """
    config = replace(config or SolverConfig(), **overrides)
    full = t.to_matrix()
    desc = full.descriptor
    diag_blocks = [t.blocks[(i, i)] for i in range(t.n_blocks)]
    grid, bw = _resolve(config, desc, full)
    if desc.kind is AlgebraKind.WIENER:
        # every stage solves on the same grid and band
        config = replace(config, grid_size=grid, bandwidth=bw)
    for i in range(t.n_blocks):
        for j in range(i + 1, t.n_blocks):
            report = certify_separation(
                diag_blocks[i], diag_blocks[j], config.refine_levels,
                grid_size=grid, gap_tol=config.gap_tol,
            )
            if not report.separated:
                worst = report.worst_point
                raise SeparationViolated(
                    f"diagonal blocks {i} and {j} have meeting spectra at phi_index "
                    f"{worst.phi_index} (gap {worst.min_gap:.3e})",
                    report=report,
                    blocks=(i, j),
                )
    size = t.size
    off = t.offsets
    s_total = AlgebraMatrix.identity(size, desc)
    s_total_inv = AlgebraMatrix.identity(size, desc)
    current = full
    for i in range(t.n_blocks - 2, -1, -1):
        r0, r1 = int(off[i]), int(off[i + 1])
        coupling = current[r0:r1, r1:size]
        if not np.any(coupling.data):
            continue
        trailing = BlockTriangular.from_blocks(diag_blocks[i + 1:]).to_matrix()
        sol = solve(diag_blocks[i], trailing, coupling, config)
        s_i, s_i_inv = _stage_similarity(size, r0, r1, sol.x)
        current = matmul(matmul(s_i, current, widen=True), s_i_inv, widen=True)
        s_total = matmul(s_i, s_total, widen=True)
        s_total_inv = matmul(s_total_inv, s_i_inv, widen=True)
    d = t.diagonal()
    cert = verify_similarity(s_total, s_total_inv, full, d.to_matrix())
    return BlockDiagonalization(s_total, s_total_inv, d, cert)


class BlockDiagonalizer(BaseEstimator):
    """Estimator wrapper around :func:`block_diagonalize`.

    ``fit(t)`` computes the similarity; ``transform(m)`` conjugates another
    D x D matrix by it, returning ``S m S^{-1}``.
    """

    def __init__(self, grid_size=None, bandwidth=None, refine_levels=0, gap_tol=None):
        self.grid_size = grid_size
        self.bandwidth = bandwidth
        self.refine_levels = refine_levels
        self.gap_tol = gap_tol

    def fit(self, t, dims=None):
        if isinstance(t, AlgebraMatrix):
            if dims is None:
                raise ValueError("dims are required when fitting on an AlgebraMatrix")
            t = BlockTriangular.from_matrix(t, dims)
        result = block_diagonalize(t, SolverConfig(**self.get_params()))
        self.s_, self.s_inv_ = result.s_total, result.s_total_inv
        self.blocks_ = result.d
        self.certificate_ = result.cert
        return self

    def transform(self, m):
        if not hasattr(self, "s_"):
            raise RuntimeError("BlockDiagonalizer is not fitted")
        return matmul(matmul(self.s_, m, widen=True), self.s_inv_, widen=True)

    def fit_transform(self, t, dims=None):
        self.fit(t, dims)
        return self.certificate_.product
