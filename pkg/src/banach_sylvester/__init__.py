"""Sylvester equations AX - XB = C over commutative unital semisimple Banach algebras."""
from .algebra import (
    AlgebraDescriptor,
    AlgebraElement,
    AlgebraKind,
    AlgebraMatrix,
    alg_add,
    alg_mul,
    from_samples,
    gelfand_eval,
    gelfand_matrix,
    matmul,
    residual_norms,
    sup_norm,
    wiener_norm,
)
from .exceptions import (
    BandwidthOverflow,
    ConvergenceFailure,
    DescriptorMismatch,
    DimensionTooLarge,
    IndexOutOfRange,
    InsufficientGrid,
    NotCoprime,
    SeparationViolated,
    ShapeMismatch,
    SingularMatrix,
    SpectraOverlap,
    SylvesterError,
)
from .gelfand import (
    SolverConfig,
    SylvesterSolver,
    certify_separation,
    reconstruct,
    solve,
    solve_pointwise,
    uniqueness_check,
)
from .roth import (
    BlockDiagonalizer,
    BlockTriangular,
    block_diagonalize,
    roth_decide,
    similarity_from_solution,
    verify_similarity,
)
from .scalar import (
    solve_bartels_stewart,
    solve_kron,
    solve_polynomial,
    spectral_separation,
)

__version__ = "0.1.0"
