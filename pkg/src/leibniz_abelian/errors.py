"""Exception types shared across the package."""


class LeibnizError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(LeibnizError, ValueError):
    pass


class SingularMatrix(LeibnizError, ValueError):
    pass


class ZeroPolynomial(LeibnizError, ValueError):
    pass


class IrrationalSpectrum(LeibnizError, ValueError):
    """Characteristic polynomial does not split over the rationals."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class UnsupportedArity(LeibnizError, ValueError):
    pass


class UnsupportedCodimension(LeibnizError, ValueError):
    pass


class NotSolvable(LeibnizError, ValueError):
    pass


class NotJordanForm(LeibnizError, ValueError):
    pass


class RestrictionViolated(LeibnizError, ValueError):
    pass


class MissingParameter(LeibnizError, KeyError):
    pass


class InvalidSpec(LeibnizError, ValueError):
    pass


class NoMatch(LeibnizError, LookupError):
    pass


class LieTypeAlgebra(NoMatch):
    """The extension is a valid Lie algebra; the catalog only lists non-Lie types."""


class UnknownCase(LeibnizError, KeyError):
    pass


class ParseError(LeibnizError, ValueError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(loc + message)
        self.line = line
        self.column = column
