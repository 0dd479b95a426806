"""Exception types shared across coxlab."""


class CoxlabError(Exception):
    """Base class for all coxlab errors."""


class FieldMismatchError(CoxlabError, ValueError):
    """Arithmetic between elements of two different quadratic fields."""


class NonIntegerRoots(CoxlabError, ValueError):
    """A polynomial does not split into integer linear factors."""


class NonIntegralPolynomial(CoxlabError, ValueError):
    """A characteristic polynomial came out with non-integer coefficients."""


class UnknownTypeError(CoxlabError, ValueError):
    """A Coxeter type string or parameter combination is not admissible."""


class GroupTooLarge(CoxlabError):
    """Enumeration would exceed the configured group-order cap."""


class DegreeExtractionError(CoxlabError):
    """Numerically extracted degrees failed rounding or exact validation."""


class PropertyViolation(CoxlabError, AssertionError):
    """A structural property or identity that must hold did not."""
