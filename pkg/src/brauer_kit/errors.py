"""Exception hierarchy. Every error carries a stable ``code`` (the class name)
which the CLI reports verbatim."""


class BrauerKitError(Exception):
    def __init__(self, detail="", **context):
        super().__init__(detail)
        self.detail = detail
        self.context = context

    @property
    def code(self):
        return type(self).__name__


class ParseError(BrauerKitError, ValueError):
    pass


class NotPrime(BrauerKitError, ValueError):
    pass


class NotIrreducible(BrauerKitError, ValueError):
    pass


class InfiniteRing(BrauerKitError):
    pass


class DimensionMismatch(BrauerKitError, ValueError):
    pass


class RingMismatch(BrauerKitError, ValueError):
    pass


class NotInvertible(BrauerKitError):
    pass


class NotIdempotent(BrauerKitError):
    pass


class NotFreeOverLocalRing(BrauerKitError):
    pass


class NotUnit(BrauerKitError):
    pass


class NotAssociative(BrauerKitError):
    pass


class NoUnitCoordinate(BrauerKitError):
    pass


class TooLarge(BrauerKitError):
    pass


class NotInDeltaImage(BrauerKitError):
    pass


class BadRelations(BrauerKitError):
    pass


class NotAutomorphism(BrauerKitError):
    pass


class NotAzumaya(BrauerKitError):
    pass


class NotRightIdeal(BrauerKitError):
    pass


class WrongIdealRank(BrauerKitError):
    pass


class NotFaithful(BrauerKitError):
    pass


class NotOnConic(BrauerKitError):
    pass


class DegenerateOutput(BrauerKitError):
    pass


class DichotomyFailure(BrauerKitError):
    pass


class NotUnital(BrauerKitError):
    pass
