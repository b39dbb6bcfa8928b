"""Exception hierarchy.

InputError subclasses signal malformed or inconsistent user input (CLI
exit code 1); NegativeResult subclasses signal a mathematically valid
"no" answer such as an obstructed kernel (CLI exit code 2).
"""


class LiecohError(Exception):
    """Base class for all package errors."""


class InputError(LiecohError):
    """Malformed or inconsistent input data."""


class ParseError(InputError):
    pass


class InvariantViolation(InputError):
    """A structural invariant failed on load; carries the violations."""

    def __init__(self, message, violations=None):
        super().__init__(message)
        self.violations = tuple(violations or ())


class JacobiError(InputError):
    """Bracket table violates the Jacobi identity on a named triple."""

    def __init__(self, triple):
        super().__init__(f"Jacobi identity fails on basis triple {triple}")
        self.triple = triple


class RepresentationError(InputError):
    """Action matrices violate the representation law on a named pair."""

    def __init__(self, pair):
        super().__init__(f"representation law fails on basis pair {pair}")
        self.pair = pair


class NotAnIdealError(InputError):
    pass


class NotAHomomorphismError(InputError):
    pass


class NotASectionError(InputError):
    pass


class NotADerivationError(InputError):
    pass


class DegreeMismatchError(InputError):
    pass


class DimensionMismatchError(InputError):
    pass


class DegreeCapExceededError(InputError):
    def __init__(self, degree, cap):
        super().__init__(f"cochain degree {degree} exceeds the cap {cap} "
                         "(override with LIECOH_DEGREE_CAP)")
        self.degree = degree
        self.cap = cap


class SpaceMismatchError(InputError):
    pass


class InvalidFactorSystemError(InputError):
    """One of the three factor-system conditions fails; carries the report."""

    def __init__(self, report):
        super().__init__(f"invalid factor system: {report.describe()}")
        self.report = report


class InvalidCrossedModuleError(InputError):
    def __init__(self, report):
        super().__init__(f"invalid crossed module: {report.describe()}")
        self.report = report


class PreconditionFailedError(InputError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class UnknownNameError(InputError):
    pass


class UnknownBundleError(InputError):
    pass


class FactorizationFailureError(LiecohError):
    """A cochain expected to factor through the quotient did not.

    This signals an internal inconsistency, not bad input.
    """


class NegativeResult(LiecohError):
    """A mathematically meaningful negative answer."""


class NoLiftError(NegativeResult):
    """No omega with matching curvature exists: S is not an outer action."""

    def __init__(self, certificate=None):
        super().__init__("the curvature of S is not inner: no lift exists")
        self.certificate = certificate


class NoOmegaLiftError(NegativeResult):
    def __init__(self, certificate=None):
        super().__init__("the section curvature does not lift through alpha")
        self.certificate = certificate


class NoGammaError(NegativeResult):
    """The pair does not stabilize the kernel class: no gamma exists."""

    def __init__(self, certificate=None):
        super().__init__("no gamma solves the stabilizer equation for this pair")
        self.certificate = certificate


class ObstructedError(NegativeResult):
    """Nonzero obstruction class; carries the class."""

    def __init__(self, obstruction):
        super().__init__("the kernel is obstructed: the degree-3 class is nonzero")
        self.obstruction = obstruction
