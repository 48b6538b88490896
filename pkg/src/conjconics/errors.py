"""Exception hierarchy shared by all modules."""


class ConicsError(ValueError):
    """Base class for every error raised by the package."""


class DependentBasis(ConicsError):
    pass


class ZeroVector(ConicsError):
    pass


class EmptyHypersphere(ConicsError):
    pass


class InvalidGenerator(ConicsError):
    pass


class Singular(ConicsError):
    pass


class NearInfinity(ConicsError):
    """A finite-difference stencil point was mapped to infinity."""


class DependentSpheres(ConicsError):
    pass


class DegenerateConic(ConicsError):
    pass


class NullSeparatedCenters(ConicsError):
    pass


class DegenerateComplement(ConicsError):
    pass


class NotAConic(ConicsError):
    pass


class WrongCase(ConicsError):
    pass


class HorizontalLine(ConicsError):
    pass


class DegenerateConfiguration(ConicsError):
    pass


class NotSkew(ConicsError):
    pass


class RankDeficient(ConicsError):
    pass
