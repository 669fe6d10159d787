"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation
    (index beyond the dimension cap, set not contained in the support,
    threshold outside (0,1], and so on)."""


class InputError(ValueError):
    """Malformed input data: non-finite coefficients, bad indices,
    invalid configuration records."""


class BudgetError(RuntimeError):
    """An enumeration or search exceeded its declared budget, or a search
    produced zero admissible candidates.  Carries whatever partial
    information is useful for diagnosis."""

    def __init__(self, message, partial_count=None):
        super().__init__(message)
        self.partial_count = partial_count
