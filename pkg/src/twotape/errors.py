"""Exception hierarchy shared by all modules."""


class TwoTapeError(Exception):
    """Base class for every error raised by this package."""


class FormatError(TwoTapeError, ValueError):
    """A text file could not be turned into a domain object."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class AutomatonSyntaxError(FormatError):
    """Malformed line or unknown keyword."""


class SemanticError(FormatError):
    """Well-formed line that violates a model invariant."""


class OutOfBounds(TwoTapeError, IndexError):
    pass


class NotDeterministic(TwoTapeError):
    pass


class NotAccepted(TwoTapeError):
    pass


class Accepted(TwoTapeError):
    pass


class DimensionMismatch(TwoTapeError, ValueError):
    pass


class IncompatibleCenter(TwoTapeError, ValueError):
    pass


class Diverges(TwoTapeError):
    pass


class AlphabetMismatch(TwoTapeError, ValueError):
    pass


class HasUniversalStates(TwoTapeError, ValueError):
    pass


class AlphabetClash(TwoTapeError, ValueError):
    pass


class UnknownName(TwoTapeError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class NotAPermutation(TwoTapeError, ValueError):
    pass


class WidthOverflow(TwoTapeError, ValueError):
    pass


class EmptyWord(TwoTapeError, ValueError):
    pass


class NotUnary(TwoTapeError, ValueError):
    pass


class NotUnaryAlphabet(TwoTapeError, ValueError):
    pass
