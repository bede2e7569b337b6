"""Exception hierarchy shared by all modules."""


class SymTCError(ValueError):
    """Base class for every error raised by this package."""


class AntipodalError(SymTCError):
    pass


class EqualPoints(SymTCError):
    pass


class EndpointMismatch(SymTCError):
    pass


class DomainError(SymTCError):
    pass


class IntegralityError(SymTCError):
    """A raw d-value strayed from the nearest integer; indicates a planner bug."""


class OnBoundary(SymTCError):
    pass


class AdjacentValueJump(SymTCError):
    """Two 4-adjacent in-domain grid vertices carry different d-values."""


class BadN(SymTCError):
    pass


class CoverFormatError(SymTCError):
    pass
