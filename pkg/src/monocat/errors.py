"""Exception types shared across the package."""


class MonoError(Exception):
    """Base class for all library errors."""


class NotAGroup(MonoError):
    pass


class UnknownGroup(MonoError):
    pass


class UnknownRep(MonoError):
    pass


class NotASubgroup(MonoError):
    pass


class DivisionByZero(MonoError, ZeroDivisionError):
    pass


class InvalidTriple(MonoError):
    pass


class TooLarge(MonoError):
    pass


class CentralCharacterMismatch(MonoError):
    pass


class FamilyNotInMonocentre(MonoError):
    pass


class Inconsistent(MonoError):
    pass


class ParseError(MonoError):
    pass
