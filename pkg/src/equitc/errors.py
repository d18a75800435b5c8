"""Exception hierarchy shared by all subsystems."""


class EquitcError(Exception):
    """Base class for every error raised by this package."""


class AntipodalPair(EquitcError):
    pass


class SpaceMismatch(EquitcError):
    pass


class ShapeMismatch(EquitcError):
    pass


class OddDimension(EquitcError):
    pass


class EvenDimension(EquitcError):
    pass


class UnclassifiablePoint(EquitcError):
    pass


class DegenerateObstacle(EquitcError):
    pass


class PointOnObstacle(EquitcError):
    pass


class SegmentMisses(EquitcError):
    pass


class VerticalSegment(EquitcError):
    pass


class BadParams(EquitcError, ValueError):
    pass


class SizeBudgetExceeded(EquitcError):
    pass


class BudgetExceeded(EquitcError):
    pass


class UnsupportedPair(EquitcError):
    pass


class NotMultiplicative(EquitcError):
    pass


class NotInTable(EquitcError, KeyError):
    pass


class DomainEscape(EquitcError):
    pass


class ParseError(EquitcError, ValueError):
    pass
