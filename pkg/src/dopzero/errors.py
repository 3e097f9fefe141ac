"""Exception hierarchy shared by all modules."""


class DopzeroError(Exception):
    """Base class for every error raised by this package."""


class MagnitudeError(DopzeroError, OverflowError):
    """A value cannot be represented as a finite double."""


class ParameterError(DopzeroError, ValueError):
    """Invalid polynomial or series parameters (e.g. a vanishing denominator)."""


class SingularPropagationError(ParameterError):
    """The difference-equation propagation hit a zero leading coefficient."""


class DomainError(DopzeroError, ValueError):
    """Arguments outside the domain of an operation."""


class RegimeError(DomainError):
    """Parameters outside the regime in which real, localized zeros are certified."""


class MeshLimitError(RegimeError):
    """The integer mesh is too large for the exact sign scan."""


class ConsistencyError(DopzeroError, RuntimeError):
    """Two independent routes disagreed beyond tolerance."""
