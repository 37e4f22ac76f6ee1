"""Exception hierarchy shared by every module of the package."""


class MeadowError(ValueError):
    """Base class for domain errors (bad input, refused construction)."""


class SizeCapError(MeadowError):
    """A construction would exceed the configured carrier-size cap."""


class NotAnIdealError(MeadowError):
    pass


class CoherenceError(MeadowError):
    """Two Hasse paths between the same vertices compose to different maps."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class NotCommonError(MeadowError):
    """An inverse was requested on a pre-meadow that is not a common meadow."""

    def __init__(self, message, witness=None, maximal=()):
        super().__init__(message)
        self.witness = witness
        self.maximal = tuple(maximal)


class NotSurjectiveError(MeadowError):
    pass


class SpecSyntaxError(MeadowError):
    """The ring-spec DSL string could not be parsed."""


class InternalConsistencyError(RuntimeError):
    """Two independent routes to the same answer disagreed."""
