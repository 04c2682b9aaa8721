"""Exception taxonomy shared by all modules."""


class AntichainError(Exception):
    """Base class for all package errors."""


class ConfigurationError(AntichainError):
    """A spec or config object violates its invariants."""


class DomainError(AntichainError):
    """An input lies outside the mathematical domain of an operation."""


class PrecisionError(AntichainError):
    """A requested resolution exceeds what the spec's depth can certify."""


class BudgetError(AntichainError):
    """An estimator would exceed the configured evaluation budget."""


class InsufficientDataError(AntichainError):
    """Not enough data points for a meaningful regression."""
