"""Exception hierarchy shared by all modules."""


class EntPolyError(ValueError):
    pass


class ZeroVector(EntPolyError):
    pass


class DimensionMismatch(EntPolyError):
    pass


class UnknownSpec(EntPolyError):
    pass


class InvalidArity(EntPolyError):
    pass


class SiteOutOfRange(EntPolyError):
    pass


class WrongArity(EntPolyError):
    pass


class AmbiguousPattern(EntPolyError):
    pass


class ZeroState(EntPolyError):
    pass


class TooLarge(EntPolyError):
    pass


class Infeasible(EntPolyError):
    pass


class NonConvergence(EntPolyError):
    pass


class InvalidPartition(EntPolyError):
    pass


class InvalidPurity(EntPolyError):
    pass


class ArityRange(EntPolyError):
    pass


class StepUnderflow(EntPolyError):
    pass


class ParseError(EntPolyError):
    pass
