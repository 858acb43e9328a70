"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class WplError(Exception):
    """Base class for every error raised by :mod:`wplbraid`."""


class MalformedInput(WplError, ValueError):
    """Input data does not have the required shape or range."""


class LatticeMismatch(WplError, ValueError):
    """Two values from different weight types were combined."""


class ModelInconsistency(WplError):
    """A class-level rule was asked to decide a situation that cannot occur
    for genuine exceptional sheaves (e.g. a map from torsion to a bundle)."""


class SearchExhausted(WplError):
    """A bounded search ran out of budget before reaching its goal.

    ``stats`` carries whatever frontier statistics the search collected.
    """

    def __init__(self, message: str, stats: dict | None = None):
        super().__init__(message)
        self.stats = dict(stats or {})


class SchemaError(MalformedInput):
    """A JSON document does not match the expected schema."""
