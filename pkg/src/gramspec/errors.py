"""Exception hierarchy.

Two families matter to callers: :class:`InvalidInput` (the caller handed us
something outside an operation's domain) and :class:`VerificationError`
(an internal cross-check failed, i.e. a claimed invariant does not hold).
The CLI maps the first to exit code 2 and the second to exit code 1.
"""


class GramSpecError(Exception):
    pass


class InvalidInput(GramSpecError, ValueError):
    pass


class VerificationError(GramSpecError):
    pass


class DivisionByZero(InvalidInput, ZeroDivisionError):
    pass


class DegreeMismatch(InvalidInput):
    pass


class BothZero(InvalidInput):
    pass


class ZeroPolynomial(InvalidInput):
    pass


class NotSelfAdjoint(InvalidInput):
    pass


class NonRealInput(InvalidInput):
    pass


class ZeroSubspace(InvalidInput):
    pass


class MixedFlavors(InvalidInput):
    pass


class MuMismatch(InvalidInput):
    pass


class NotPsd(InvalidInput):
    pass


class DependentInput(InvalidInput):
    pass


class RealRoot(InvalidInput):
    pass


class RepeatedRoot(InvalidInput):
    pass


class NonPositiveLead(InvalidInput):
    pass


class AllZero(InvalidInput):
    pass


class OutOfRange(InvalidInput):
    pass


class DegenerateInput(InvalidInput):
    pass


class PreconditionFailed(InvalidInput):
    pass


class ScalarExhaustion(VerificationError):
    pass


class InternalContradiction(VerificationError):
    pass


class CertificateError(VerificationError):
    """A construction produced an object whose claimed invariants failed."""
