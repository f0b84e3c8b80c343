"""Exception types raised across the package."""


class GKZError(Exception):
    """Base class for all package errors."""


class NoUnitForm(GKZError):
    """No rational form h with h(a_j) = 1 for every vector.

    ``witness`` holds integer multipliers y with sum_j y_j a_j = 0 but
    sum_j y_j != 0, which makes the system inconsistent.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BadConfiguration(GKZError):
    """Malformed configuration input (shape, types, unknown keys)."""


class BudgetExceeded(GKZError):
    """Lattice enumeration visited more search nodes than allowed."""


class GradingMismatch(GKZError):
    """Series with different gradings, bounds or variable counts were combined."""


class NonzeroConstantTerm(GKZError):
    pass


class NotPrime(GKZError):
    pass


class NotPointed(GKZError):
    """No common pointed grading exists for the series being combined."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InsufficientTruncation(GKZError):
    pass
