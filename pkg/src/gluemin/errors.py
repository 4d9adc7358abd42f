class GlueminError(Exception):
    """Base class for all errors raised by gluemin."""


class DimensionMismatch(GlueminError, ValueError):
    pass


class UnknownSymbol(GlueminError, KeyError):
    pass


class NonInjectiveGluing(GlueminError):
    pass


class SelfFolding(GlueminError):
    """A chain of gluings identifies two distinct points of one component."""


class IncompatibleGluing(GlueminError):
    """A morphism sends glued points to distinct points."""


class NotAMono(GlueminError):
    pass


class ProfileMismatch(GlueminError):
    pass


class InvalidAutomaton(GlueminError):
    pass


class MalformedInput(GlueminError):
    """Parse or schema error in a serialized document."""
