"""Exception types raised across the package."""


class FSpaceError(Exception):
    """Base class for all errors raised by fspace."""


class GridError(FSpaceError, ValueError):
    """Invalid grid construction or mismatched grids."""


class AlignmentError(GridError):
    """The grid cannot represent the requested frequencies."""


class DomainTagError(FSpaceError, ValueError):
    """A space-domain function was passed where a spectrum was expected (or vice versa)."""


class EvaluationError(FSpaceError, ValueError):
    """A descriptor produced non-finite samples."""


class ResolutionError(FSpaceError, ValueError):
    """A window family cannot be resolved on the grid."""


class RangeError(FSpaceError, ValueError):
    """An index is outside the active range of a family, or spectral leakage is too large."""


class TheoremDomainError(FSpaceError, ValueError):
    """Parameters lie outside the domain where a predicate is stated."""


class GeometryError(FSpaceError, ValueError):
    """Translated building blocks do not fit the periodic box."""


class DegenerateExperimentError(FSpaceError, ArithmeticError):
    """A ratio experiment produced 0/0 or a non-finite ratio."""


class OrthogonalizationError(FSpaceError, ArithmeticError):
    """Moment orthogonalization of an atom is singular."""


class ConfigError(FSpaceError, ValueError):
    """Invalid run configuration; ``field`` is the dotted path of the offending entry."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
