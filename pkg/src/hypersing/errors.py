"""Exception hierarchy shared by every module."""


class HypersingError(Exception):
    """Base class for all library errors."""


class RingMismatchError(HypersingError, ValueError):
    pass


class NotClosedError(HypersingError, ValueError):
    pass


class FormDegreeError(HypersingError, ValueError):
    pass


class OriginNotFixedError(HypersingError, ValueError):
    pass


class NotTangentToIdentity(HypersingError, ValueError):
    pass


class NotIsotropy(HypersingError, ValueError):
    pass


class NotIsotropyFamily(HypersingError, ValueError):
    pass


class NotEquivalent(HypersingError, ValueError):
    pass


class NotVolume(HypersingError, ValueError):
    pass


class NonIsolatedError(HypersingError, ValueError):
    """The germ does not have an isolated singularity (infinite Milnor number)."""


class TruncationTooLow(HypersingError, RuntimeError):
    """A jet computation did not stabilize below the configured maximum truncation."""


class ParseError(HypersingError, ValueError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column
