"""Exception hierarchy shared by all sqrt2lab modules."""


class Sqrt2LabError(Exception):
    """Base class for all domain errors raised by this package."""


class NonRepresentableError(Sqrt2LabError):
    """A map parameter was supplied in a form that has no exact value
    (e.g. a rational with zero denominator, or a non-finite float)."""


class ZeroValueError(Sqrt2LabError):
    """An orbit iterate is zero where a positive value is required."""


class ZeroTermError(Sqrt2LabError):
    """A term of the balanced-growth product is zero, which forces the
    geometric mean to zero; the map is rejected as not Collatz-like."""

    def __init__(self, r: int, message: str | None = None):
        self.r = r
        super().__init__(message or f"f({r}) = 0: product term vanishes, map is not Collatz-like")


class ClassificationMismatchError(Sqrt2LabError):
    """Predecessor enumeration and the Beatty-form test disagree."""


class PatternBreakError(Sqrt2LabError):
    """More than two distinct words appear at some gap-word level."""


class CapExceededError(Sqrt2LabError):
    """Predecessor-tree expansion hit the node cap before terminating.

    The partially built tree is attached as ``partial_tree``.
    """

    def __init__(self, message: str, partial_tree=None):
        self.partial_tree = partial_tree
        super().__init__(message)


class OutOfRangeError(Sqrt2LabError):
    """An argument is outside the supported range of the operation."""


class SingularSystemError(Sqrt2LabError):
    """The stationary linear system degenerated during elimination."""


class DegenerateParamsError(Sqrt2LabError):
    """Oscillator coefficients admit no center pair (discriminant <= 0 or c = 0)."""


class OutsideSeparatrixError(Sqrt2LabError):
    """Requested displacement lies outside the zero-energy level set."""


class InvalidProfileError(Sqrt2LabError):
    """Homoclinic profile parameters make the shape radicand nonpositive."""


class NonConvergentError(Sqrt2LabError):
    """Quadrature tail failed to fall below tolerance at the window cap."""


class BlowupError(Sqrt2LabError):
    """Simulated displacement exceeded the blow-up guard."""
