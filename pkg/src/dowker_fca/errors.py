"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class DowkerError(Exception):
    """Base class for all errors raised by :mod:`dowker_fca`."""


class WitnessError(DowkerError):
    """An error that carries the offending elements as ``witness``."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


# order
class NotAPoset(WitnessError, ValueError):
    pass


class NotReflexive(NotAPoset):
    pass


class NotAntisymmetric(NotAPoset):
    pass


class NotTransitive(NotAPoset):
    pass


class NotALattice(WitnessError, ValueError):
    pass


NotCompleteLattice = NotALattice


class SearchExhausted(DowkerError):
    """A bounded search ran out of budget before reaching a verdict."""


# context
class UniverseMismatch(DowkerError, ValueError):
    pass


class UnknownLabel(DowkerError, KeyError):
    pass


class TooLarge(DowkerError, ValueError):
    pass


# complexes / cosheaf / homology
class FaceBudgetExceeded(SearchExhausted):
    pass


class TheoremMismatch(WitnessError):
    """Two structures that must agree do not; ``witness`` locates the first difference."""


class EmptyDowkerComplex(DowkerError, ValueError):
    pass


class NotAFacePair(DowkerError, ValueError):
    pass


class NotAComplex(WitnessError, ValueError):
    pass


class NotTotal(DowkerError, ValueError):
    pass


# io
class ParseError(DowkerError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)
        self.line = line
        self.column = column


class DimensionMismatch(ParseError):
    pass
