"""Exception hierarchy shared by all modules."""


class ExtremalKitError(Exception):
    """Base class for every error raised by extremal_kit."""


class DomainError(ExtremalKitError, ValueError):
    """An argument lies outside the domain of an operation."""


class DimensionError(DomainError):
    """Vectors of incompatible dimension were combined."""


class SizeCapError(DomainError):
    """An exact (exponential) mode was asked to handle too large an input."""


class CertificateError(ExtremalKitError):
    """A supplied certificate is inconsistent with the data it claims to certify."""


class NonConvergenceError(ExtremalKitError):
    """An iterative solver exhausted its budget.

    ``best_center``/``best_radius`` hold the last iterate and ``residual`` the
    certificate residual it achieved.
    """

    def __init__(self, message, best_center=None, best_radius=None, residual=None):
        super().__init__(message)
        self.best_center = best_center
        self.best_radius = best_radius
        self.residual = residual
