"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: InputError -> 2, BudgetExceeded -> 3,
FalsificationAlarm -> 4.
"""


class FlexicolorError(Exception):
    """Base class for all package errors."""


class InputError(FlexicolorError, ValueError):
    """Malformed input or a violated precondition."""


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" at line {line}"
            if column is not None:
                where += f", column {column}"
        super().__init__(f"{message}{where}")
        self.message = message


class BudgetExceeded(FlexicolorError):
    """An exhaustive search would exceed its configured cap."""

    def __init__(self, what, count, cap):
        self.what = what
        self.count = count
        self.cap = cap
        super().__init__(f"{what}: {count} exceeds budget {cap}")


class FalsificationAlarm(FlexicolorError):
    """Something a proven statement says cannot happen did happen.

    ``instance`` carries whatever is needed to replay the failure.
    """

    def __init__(self, message, instance=None):
        super().__init__(message)
        self.instance = instance or {}


class ChoosabilityViolation(FalsificationAlarm):
    """A completion step failed although the caller claimed s-choosability."""

    def __init__(self, s, instance=None):
        super().__init__("s-choosability assumption violated", instance)
        self.s = s


class RetryCapExhausted(FlexicolorError):
    """A rejection-sampling loop hit its retry cap."""

    def __init__(self, message, stats):
        super().__init__(message)
        self.stats = stats
