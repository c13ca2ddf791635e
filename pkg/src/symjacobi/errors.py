"""Exception types raised by the library."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class SingularPointError(DomainError):
    """Evaluation was requested at a point where the function is singular."""


class GridError(ValueError):
    """A quadrature grid is malformed or incompatible with the operation."""


class UnsupportedParametersError(ValueError):
    """The type parameters exclude this operator family (e.g. zero bottom eigenvalue)."""


class AdmissibilityError(ValueError):
    """An exponent falls outside the admissible range for the given parameters."""


class EnsembleError(ValueError):
    """A random ensemble is degenerate or otherwise unusable."""


class ConfigError(ValueError):
    """An experiment configuration is invalid."""
