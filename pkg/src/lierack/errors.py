"""Exception types shared across the package."""


class LieRackError(Exception):
    """Base class for all errors raised by lierack."""


# finite fields
class NotPrime(LieRackError, ValueError):
    pass


class DegreeOutOfRange(LieRackError, ValueError):
    pass


class NoIrreducibleFound(LieRackError, RuntimeError):
    pass


class FieldMismatch(LieRackError, ValueError):
    pass


# root systems
class InvalidType(LieRackError, ValueError):
    pass


class NotTabulated(LieRackError, KeyError):
    pass


# matrix groups
class UnsupportedSpec(LieRackError, ValueError):
    pass


class CapExceeded(LieRackError, RuntimeError):
    """A closure or orbit search hit its cap; the answer is inconclusive."""


class NonScalarCenter(LieRackError, ValueError):
    pass


class NotUnipotent(LieRackError, ValueError):
    pass


# racks
class BudgetExhausted(LieRackError, RuntimeError):
    pass


class HypothesisFailed(LieRackError, ValueError):
    def __init__(self, which, detail=""):
        self.which = which
        super().__init__(f"{which}: {detail}" if detail else which)


# witnesses
class UnknownWitness(LieRackError, KeyError):
    pass


class ClaimFailed(LieRackError, AssertionError):
    def __init__(self, claim, detail=""):
        self.claim = claim
        super().__init__(f"claim {claim!r} failed" + (f": {detail}" if detail else ""))


# braiding
class NotAbelian(LieRackError, ValueError):
    pass


class CharacterIllDefined(LieRackError, ValueError):
    pass


class WhitelistMissing(LieRackError, LookupError):
    pass
