"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Invalid parameters or configuration (CLI exit code 2)."""


class QuadratureResolutionError(RuntimeError):
    """A quadrature rule is too coarse for the requested integrand."""


class ConsistencyError(RuntimeError):
    """Two independent evaluation routes disagree beyond tolerance."""


class OutputError(OSError):
    """Failure writing an output file (CLI exit code 3)."""
