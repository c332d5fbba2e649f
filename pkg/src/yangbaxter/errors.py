"""Exception types raised across the package."""


class YBError(Exception):
    """Base class for all library errors."""


class InputError(YBError):
    """Malformed or inconsistent input data."""


class ShapeMismatch(InputError):
    pass


class Singular(YBError):
    pass


class NotNilpotent(YBError):
    pass


class NotACocycle(YBError):
    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


class NotCentral(YBError):
    pass


class NotCocommutative(YBError):
    pass


class UnknownVariant(InputError):
    pass
