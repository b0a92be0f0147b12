"""Exception hierarchy shared across the package."""


class SectorDiracError(Exception):
    """Base class for all package errors."""


class InvalidArgument(SectorDiracError, ValueError):
    """An argument is outside the accepted set."""


class OutOfDomain(SectorDiracError, ValueError):
    """A point or parameter lies outside the domain of definition."""


class PreconditionError(SectorDiracError, ValueError):
    """A structural precondition of the computation does not hold."""


class ConfigurationError(SectorDiracError, ValueError):
    """An inconsistent combination of run parameters."""


class InvalidGeometry(SectorDiracError, ValueError):
    """A polygon or sector description is degenerate."""


class BesselOverflow(SectorDiracError, OverflowError):
    """K_nu(r) exceeds the double range.

    Attributes
    ----------
    log_value : float
        Natural log of the true value.
    threshold : float
        Largest representable log, ``log(DBL_MAX)``.
    """

    def __init__(self, nu, r, log_value, threshold):
        self.nu = nu
        self.r = r
        self.log_value = log_value
        self.threshold = threshold
        super().__init__(
            f"K_{nu}({r}) overflows double precision: log K = {log_value:.6g} "
            f"exceeds threshold {threshold:.6g}"
        )
