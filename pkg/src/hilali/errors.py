"""Exception hierarchy.

Two families matter to callers: ``InputError`` for malformed or out-of-range
input, and ``Undecidable`` for well-formed input whose answer the declared
data cannot settle (truncation, unmet hypotheses).  The CLI maps them to exit
codes 2 and 3.
"""


class HilaliError(Exception):
    pass


class InputError(HilaliError, ValueError):
    pass


class Undecidable(HilaliError):
    pass


class InvalidDegree(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class NegativeEvaluationPoint(InputError):
    pass


class TooShort(InputError):
    pass


class RadiusExceeded(InputError):
    pass


class NotRealizable(InputError):
    pass


class UnresolvedReference(InputError):
    pass


class MalformedModel(InputError):
    pass


class DegreeOutOfWindow(Undecidable):
    pass


class UnboundedSupport(Undecidable):
    pass


class NotApplicable(Undecidable):
    pass


class NotEllipticWrtKernel(NotApplicable):
    pass


class NotHyperbolic(NotApplicable):
    pass
