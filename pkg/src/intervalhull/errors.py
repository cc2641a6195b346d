"""Exception hierarchy shared by every module."""


class IntervalHullError(Exception):
    """Base class for all domain errors raised by this package."""


class InstanceError(IntervalHullError, ValueError):
    """Malformed or invalid instance data."""


class EmptyHull(IntervalHullError):
    """The coefficient system has no solution (alpha > 1 or beta < 1)."""


class UnboundedHull(IntervalHullError):
    """The hull is unbounded; only detection is supported."""


class CapExceeded(IntervalHullError):
    """An enumeration would exceed its configured size cap."""

    def __init__(self, message, required=None):
        super().__init__(message)
        self.required = required


class NotInAffineHull(IntervalHullError):
    """The homothety does not map aff S into itself."""


class GammaIsOne(IntervalHullError):
    """Coefficient sum equals one, so the homothety ratio would vanish."""


class NotAffinelyIndependent(IntervalHullError):
    pass


class NotIrreducible(IntervalHullError):
    pass


class AlphaNotBelowOne(IntervalHullError):
    pass


class NumericalBreakdown(IntervalHullError):
    """The LP solver lost accuracy; its answer cannot be trusted."""


class DimensionUnsupported(IntervalHullError):
    pass
