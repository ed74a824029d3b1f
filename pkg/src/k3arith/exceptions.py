class K3ArithError(Exception):
    """
    Base class of all errors raised by the library.
    """

    default_message = "Invalid operation."

    def __init__(self, message=None, **details):
        if message is None:
            message = self.default_message
        self.details = details
        super().__init__(message)


class PreconditionError(K3ArithError, ValueError):
    """
    Exception raised when the input of an operation violates its
    preconditions.
    """

    default_message = "Precondition violated."


class PrecisionError(K3ArithError, ArithmeticError):
    """
    Exception raised when a quantity cannot be certified at the precision
    the computation was carried out with.
    """

    default_message = "insufficient precision"


class NotReversibleError(PreconditionError):
    """
    Exception raised for power series without an invertible linear term.
    """

    default_message = "not reversible"


class DegenerateFormError(PreconditionError):
    """
    Exception raised for singular Gram matrices.
    """

    default_message = "degenerate form"


class NotIsotropicError(PreconditionError):
    """
    Exception raised when a vector expected to be isotropic is not.
    """

    default_message = "not isotropic"


class NoHyperbolicPairError(PreconditionError):
    """
    Exception raised when no isotropic vector is available to build
    a hyperbolic pair.
    """

    default_message = "no hyperbolic pair"


class DenseRankError(PreconditionError):
    """
    Exception raised when a dense operator of a Clifford algebra is
    requested above the dense rank limit.
    """

    default_message = "rank too large for dense operator"


class ParentMismatchError(PreconditionError):
    """
    Exception raised when operands live in different rings, algebras
    or spaces.
    """

    default_message = "mismatched parents"


class NonIntegralError(PreconditionError):
    """
    Exception raised when a series expected to be integral has
    a coefficient of negative valuation.
    """

    default_message = "log does not define an integral group law"


class KatzConditionError(PreconditionError):
    """
    Exception raised when a slope breakpoint does not lie on the
    Hodge polygon.
    """

    default_message = "Katz condition fails"


class TruncationError(PreconditionError):
    """
    Exception raised when the truncation degree of a series is too small
    for the requested invariant.
    """

    default_message = "truncation too small to measure height"
