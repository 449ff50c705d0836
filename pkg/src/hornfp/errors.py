"""Exception hierarchy shared by every evaluation routine."""


class HornFPError(Exception):
    """Base class for all library errors."""


class PoleError(HornFPError, ZeroDivisionError):
    """A gamma function or Pochhammer symbol was asked for a value at a pole."""


class DomainError(HornFPError, ValueError):
    """The argument lies outside the region where the method is valid."""


class ConstraintError(HornFPError, ValueError):
    """Parameter inequalities required by an integral representation fail."""


class DegenerateError(HornFPError, ArithmeticError):
    """A parameter combination hits an integer degeneracy of a formula."""


class NonIntegrable(HornFPError, ValueError):
    """An endpoint exponent makes the integral divergent."""


class NoConvergence(HornFPError, ArithmeticError):
    """A series or quadrature failed to reach the requested tolerance."""


class DiscontinuityError(HornFPError, ArithmeticError):
    """A tracked argument jumped too far between successive points."""


class GeometryError(HornFPError, ValueError):
    """No admissible contour exists for the requested configuration."""


class UnsupportedRegion(HornFPError, ValueError):
    """A real-only region was queried with complex coordinates."""


class SkippedError(HornFPError):
    """An identity check could not be carried out at the given point."""
