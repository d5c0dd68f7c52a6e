"""Exception hierarchy shared by every layer of the package."""


class ExcSeqError(Exception):
    """Base class for all package errors."""


class QuiverSyntaxError(ExcSeqError, ValueError):
    pass


class CycleError(ExcSeqError, ValueError):
    """The arrow list contains an oriented cycle."""


class VertexIndexError(ExcSeqError, IndexError):
    """An arrow refers to a vertex outside 1..n."""


class DimensionError(ExcSeqError, ValueError):
    pass


class NotFiniteTypeError(ExcSeqError):
    """The quiver is not of (simply-laced) Dynkin type."""


class CatalogError(ExcSeqError, KeyError):
    """Unknown module key, or modules from different quivers."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class DomainError(ExcSeqError, ValueError):
    """Input lies outside the domain of the operation."""


class ScaleError(ExcSeqError):
    """Rank exceeds the configured enumeration cap."""


class IntegrityError(ExcSeqError, AssertionError):
    """An internal consistency check failed; indicates a bug."""


class SchemaError(ExcSeqError, ValueError):
    """A JSON document does not match the expected schema."""
