"""Exception hierarchy shared by every module."""


class MgdivError(Exception):
    """Base class for all errors raised by this package."""


class IndexOutOfRange(MgdivError, ValueError):
    pass


class ForbiddenBoundary(MgdivError, ValueError):
    """A boundary index pair that names no stable stratum, e.g. (0, T) with #T < 2."""


class SpaceMismatch(MgdivError, ValueError):
    pass


class NonNumericScalar(MgdivError, TypeError):
    pass


class NonAffine(MgdivError, TypeError):
    """Raised when a product would leave the affine-linear coefficient ring."""


class NotAsserted(MgdivError, KeyError):
    """Coefficient requested outside the asserted support of a partial class."""


class UnknownPairing(MgdivError, ValueError):
    def __init__(self, element, message=None):
        self.element = element
        super().__init__(message or f"pairing with {element} is unknown")


class RangeViolation(MgdivError, ValueError):
    pass


class LabelCollision(MgdivError, ValueError):
    pass


class InsufficientSupport(MgdivError, ValueError):
    pass


class ResidualEscapesSupport(MgdivError, ValueError):
    def __init__(self, offenders):
        self.offenders = list(offenders)
        shown = ", ".join(str(e) for e in self.offenders[:8])
        more = "" if len(self.offenders) <= 8 else f" (+{len(self.offenders) - 8} more)"
        super().__init__(f"residual escapes allowed support at {shown}{more}")


class GenusCongruence(MgdivError, ValueError):
    pass


class PreconditionFailed(MgdivError, ValueError):
    pass


class ParseError(MgdivError, ValueError):
    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"line {self.line}, column {self.column}: {message}")
