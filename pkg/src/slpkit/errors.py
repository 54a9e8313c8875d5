"""Exception hierarchy shared by the library and the command line."""


class SLPError(Exception):
    """Base class for every error raised by slpkit."""


class InputError(SLPError):
    """Bad user input; the CLI maps these to exit code 2."""


class NotArtinian(InputError):
    pass


class NotPrime(InputError):
    pass


class ShapeMismatch(InputError):
    pass


class NonCommutingMaps(InputError):
    pass


class FieldMismatch(InputError):
    pass


class DegreeOutOfRange(InputError):
    pass


class ZeroModule(InputError):
    pass


class InvalidM(InputError):
    pass


class InvalidExponent(InputError):
    pass


class NotSymmetric(InputError):
    pass


class NotTotallyOrdered(SLPError):
    pass


class NotSLP(SLPError):
    """The supplied form is not a strong Lefschetz element of the module."""


class InconsistentDecomposition(SLPError):
    pass


class InternalInconsistency(SLPError):
    """A computed quantity violated an identity it must satisfy.

    This signals a bug in the rank machinery, never bad input.
    """


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
