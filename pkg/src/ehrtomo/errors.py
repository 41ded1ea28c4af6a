"""Exception types shared across the package."""


class EhrtomoError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateInput(EhrtomoError):
    """Input point set or body is not full-dimensional."""


class DimensionMismatch(EhrtomoError):
    """Operands live in different ambient dimensions."""


class NonpositiveDilation(EhrtomoError):
    """Dilation factors must be strictly positive."""


class ToleranceTooSmall(EhrtomoError):
    """Requested tolerance is below what float64 ray searches can honor."""


class MuTooSmall(EhrtomoError):
    """Translation distance must exceed the body's bounding radius."""


class OriginInside(EhrtomoError):
    """Operation requires the origin to lie strictly outside the body."""


class EmptyFrontShell(EhrtomoError):
    """The pseudopyramid has no front shell (origin interior to the base)."""


class NonConvergence(EhrtomoError):
    """Quadrature refinement failed to stabilize within tolerance."""


class UnboundedBody(EhrtomoError):
    """An H-polytope description is unbounded and cannot be a convex body."""
