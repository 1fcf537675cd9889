"""Exception hierarchy shared by the algebra and the experiment harness."""


class TensorialError(Exception):
    """Base class for every error raised by this package."""


class ShapeError(TensorialError, ValueError):
    """Operands have incompatible or invalid shapes."""


class DomainError(TensorialError, ValueError):
    """An operand lies outside the domain of an operation.

    Raised for example when taking the square root of a t-scalar whose
    spectrum is not real and nonnegative.
    """


class SingularElementError(TensorialError, ArithmeticError):
    """A t-scalar that must be invertible has a vanishing Fourier entry."""

    def __init__(self, message, fourier_index=None):
        super().__init__(message)
        self.fourier_index = fourier_index


class DecompositionError(TensorialError, ArithmeticError):
    """A per-slice matrix decomposition did not converge."""

    def __init__(self, message, slice_index=None):
        super().__init__(message)
        self.slice_index = slice_index


class OrthogonalizationError(TensorialError, ArithmeticError):
    """Gram-Schmidt met a column whose norm is not invertible."""

    def __init__(self, message, column=None, fourier_index=None):
        super().__init__(message)
        self.column = column
        self.fourier_index = fourier_index


class ModelError(TensorialError, ArithmeticError):
    """A component-analysis model cannot be built from the given samples."""


class DataError(TensorialError, ValueError):
    """Input data or files are malformed or inconsistent.

    ``code`` is a short machine-readable tag, e.g. ``"bad_magic"``.
    """

    code = "data_error"

    def __init__(self, message, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code


class UsageError(TensorialError, ValueError):
    """An experiment was requested with an unsupported combination of options."""
