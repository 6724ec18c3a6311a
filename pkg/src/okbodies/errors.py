"""Exception hierarchy shared by all modules.

Three tiers matter to the command line front end: usage errors (bad input
text, unknown names), domain errors (a precondition on the mathematical
input fails), and inconsistency errors (the declared lattice model cannot
support the requested computation, typically an incomplete curve list).
"""


class OkbodiesError(Exception):
    """Base class for all library errors."""


class UsageError(OkbodiesError):
    """Malformed input: unparsable text, unknown names, bad arguments."""


class DomainError(OkbodiesError):
    """A mathematical precondition on otherwise well-formed input fails."""


class InconsistencyError(OkbodiesError):
    """The declared model contradicts itself; results would be unsound."""


# -- usage tier ----------------------------------------------------------

class ParseError(UsageError):
    def __init__(self, message, position=None):
        super().__init__(message if position is None
                         else f"{message} (at position {position})")
        self.position = position


class UnknownModel(UsageError):
    pass


class UnknownLabel(UsageError):
    pass


class UnknownCurve(UsageError):
    pass


class InvalidInput(UsageError):
    pass


# -- domain tier ---------------------------------------------------------

class DimensionMismatch(DomainError):
    pass


class NotPseudoeffective(DomainError):
    pass


class NotBig(DomainError):
    pass


class NotNef(DomainError):
    pass


class NotEffectiveInput(DomainError):
    pass


class NotInCone(DomainError):
    pass


class InfeasibleStart(DomainError):
    pass


class InvalidFixedPart(DomainError):
    pass


class CurveInBMinus(DomainError):
    pass


class AnnotationRequired(DomainError):
    pass


class NotSupported(DomainError):
    pass


class RankLimitExceeded(DomainError):
    pass


class NonNonnegativeSolution(DomainError):
    pass


# -- inconsistency tier ---------------------------------------------------

class ModelInconsistent(InconsistencyError):
    pass


class OracleAmbiguous(InconsistencyError):
    pass
