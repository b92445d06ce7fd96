"""Exception hierarchy shared by every module of the package."""


class SylvesterError(Exception):
    """Base class for all errors raised by banach_sylvester."""


class SingularMatrix(SylvesterError, ArithmeticError):
    pass


class ConvergenceFailure(SylvesterError, ArithmeticError):
    """QR iteration did not deflate an eigenvalue within the sweep budget."""

    def __init__(self, message, phi_index=None):
        super().__init__(message)
        self.phi_index = phi_index


class DimensionTooLarge(SylvesterError, ValueError):
    pass


class SpectraOverlap(SylvesterError, ArithmeticError):
    """The spectra of A and B intersect (numerically), so L(X) = AX - XB is singular."""

    def __init__(self, message, phi_index=None):
        super().__init__(message)
        self.phi_index = phi_index


class NotCoprime(SpectraOverlap):
    """Characteristic polynomials share a root; a special case of overlapping spectra."""


class DescriptorMismatch(SylvesterError, ValueError):
    pass


class BandwidthOverflow(SylvesterError, ValueError):
    pass


class InsufficientGrid(SylvesterError, ValueError):
    pass


class ShapeMismatch(SylvesterError, ValueError):
    pass


class SeparationViolated(SylvesterError):
    """Pointwise spectral separation fails somewhere on the sampled maximal ideal space.

    The offending :class:`~banach_sylvester.gelfand.SeparationReport` is kept on
    ``report``; ``blocks`` names the diagonal block pair when raised by
    block diagonalization.
    """

    def __init__(self, message, report=None, blocks=None):
        super().__init__(message)
        self.report = report
        self.blocks = blocks


class IndexOutOfRange(SylvesterError, IndexError):
    pass
