"""Exception hierarchy for lindobs."""


class LindobsError(Exception):
    """Base class for all package errors."""


class InputError(LindobsError, ValueError):
    """Bad user-supplied data (shapes, Hermiticity, states)."""


class DimensionMismatch(InputError):
    pass


class NonHermitianInput(InputError):
    pass


class InvalidState(InputError):
    pass


class NegativeTime(InputError):
    pass


class InvalidProjectorFamily(InputError):
    pass


class ModelMismatch(InputError):
    pass


class NotWanCase(InputError):
    pass


class NotEnvironmentInduced(LindobsError):
    """The model fails the operator-norm contractivity gate."""

    def __init__(self, deficit):
        self.deficit = deficit
        super().__init__(f"model is not environment-induced (deficit={deficit!r})")


class NumericalError(LindobsError):
    """Internal numerical failure (tolerance or rank decisions)."""


class NumericalRankAmbiguity(NumericalError):
    def __init__(self, message, band=()):
        self.band = tuple(band)
        super().__init__(message)


class NotAnAlgebra(NumericalError):
    pass


class NonIntegralStructure(NumericalError):
    pass


class CenterSeparationFailure(NumericalError):
    pass
