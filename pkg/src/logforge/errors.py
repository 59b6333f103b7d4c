"""Exception hierarchy shared by all logforge modules."""


class LogforgeError(Exception):
    """Base class for every error raised by this package."""


class DomainError(LogforgeError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConvergenceError(DomainError):
    """A series argument lies outside its region of convergence."""


class DegenerateArgumentError(DomainError):
    """Trivial argument (u == v, d == 0, all-zero exponent vector)."""


class PrecisionExhaustedError(LogforgeError):
    """Requested internal precision exceeds what the inputs carry."""


class CalibrationError(LogforgeError):
    """Trap calibration found no usable (k, d_s) within the precision budget."""


class SearchBudgetError(LogforgeError):
    """Brute-force lattice exceeds the configured iteration budget."""


class InsufficientRankError(LogforgeError):
    """The solution pool does not span a full-rank matrix."""


class SingularMatrixError(LogforgeError, ValueError):
    """Exponent matrix is not invertible."""


class FactorizationError(DomainError):
    """Target does not factor completely over the basis."""
