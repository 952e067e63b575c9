"""Exception hierarchy.

Every error that signals a violated precondition derives from
:class:`PreconditionError` (CLI exit code 2); exhausted search budgets raise
:class:`InfeasibleBudget` (exit code 3).
"""


class LrcError(Exception):
    """Base class for all package errors."""


class PreconditionError(LrcError, ValueError):
    """Inputs violate a documented precondition."""


class NonPrimeCharacteristic(PreconditionError):
    pass


class SizeOverflow(PreconditionError):
    pass


class NotCoprime(PreconditionError):
    pass


class NoSuchRoot(PreconditionError):
    pass


class NotASubfield(PreconditionError):
    pass


class FieldMismatch(PreconditionError, TypeError):
    pass


class DivisionByZeroPolynomial(PreconditionError, ZeroDivisionError):
    pass


class NonMonicGenerator(PreconditionError):
    pass


class CoefficientNotInBaseField(PreconditionError):
    pass


class NotADivisor(PreconditionError):
    pass


class LengthMismatch(PreconditionError):
    pass


class InvalidParams(PreconditionError):
    pass


class PreconditionFailed(PreconditionError):
    """A construction hypothesis does not hold; ``condition`` names it."""

    def __init__(self, condition, detail=""):
        self.condition = condition
        self.detail = detail
        msg = f"precondition failed: {condition}" + (f" ({detail})" if detail else "")
        super().__init__(msg)


class RootCollision(LrcError):
    """Generator roots are not distinct; indicates a bug upstream."""


class EmptyLocalDual(PreconditionError):
    pass


class LocalRepairInfeasible(LrcError):
    def __init__(self, group, erased):
        self.group = group
        self.erased = tuple(erased)
        super().__init__(
            f"group at offset {group} has {len(self.erased)} erasures; "
            "too many for local repair"
        )


class AmbiguousErasure(LrcError):
    pass


class InfeasibleBudget(LrcError):
    pass


class OracleDisagreement(LrcError):
    """The two minimum-distance oracles returned different answers."""
