"""Exception hierarchy shared by every module in the package."""


class GeometryError(Exception):
    """Base class for all errors raised by latcover."""


class DimensionMismatch(GeometryError, ValueError):
    pass


class DimensionUnsupported(GeometryError, ValueError):
    pass


class ZeroNormal(GeometryError, ValueError):
    pass


class SingularMatrix(GeometryError, ValueError):
    pass


class DegenerateInput(GeometryError, ValueError):
    """The input does not span a full-dimensional body."""


class Unbounded(GeometryError, ValueError):
    pass


class Empty(GeometryError, ValueError):
    pass


class DegenerateLattice(GeometryError, ValueError):
    pass


class SearchBudgetExceeded(GeometryError, RuntimeError):
    pass


class FacetNotSymmetric(GeometryError, ValueError):
    pass


class Unclassified(GeometryError, ValueError):
    def __init__(self, census):
        self.census = dict(census)
        super().__init__(f"facet census {self.census} matches no Fedorov type")


class NotParallelohedron(GeometryError, ValueError):
    pass


class GammaOutOfRange(GeometryError, ValueError):
    pass


class NotAVertex(GeometryError, ValueError):
    pass


class CertificateNotFound(GeometryError, RuntimeError):
    pass


class InvalidBaseReport(GeometryError, ValueError):
    pass


class CenterOutside(GeometryError, ValueError):
    pass


class DegenerateSlice(GeometryError, ValueError):
    pass


class DegenerateHexagon(GeometryError, ValueError):
    pass


class ParseError(GeometryError, ValueError):
    """Malformed input file; ``where`` names the offending field or line."""

    def __init__(self, message, where=None):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)
