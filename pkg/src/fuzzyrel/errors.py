"""Exception types shared across the engine."""


class FuzzyRelError(Exception):
    """Base class for all engine errors."""


class DomainError(FuzzyRelError):
    """A value or parameter lies outside its declared domain."""


class ValidationError(FuzzyRelError):
    """A constructed object violates a structural invariant."""


class UnknownValueError(FuzzyRelError):
    """A value cannot be resolved against a domain."""


class UnknownAttributeError(FuzzyRelError):
    """An attribute name is not part of the schema."""


class UnknownRelationError(FuzzyRelError):
    """A relation name is not present in the database."""


class SchemaMismatchError(FuzzyRelError):
    """Two schemas that must agree do not."""


class FormatError(FuzzyRelError):
    """A data file is malformed."""
