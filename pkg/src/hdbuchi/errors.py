"""Exception hierarchy shared by the library and the command line."""


class HDBuchiError(Exception):
    """Base class for every error raised by this package."""


class TAFSyntaxError(HDBuchiError):
    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")


class InputError(HDBuchiError):
    """An input violates an operation's precondition."""


class NotBuchiError(InputError):
    pass


class AlphabetMismatchError(InputError):
    pass


class StrategyError(InputError):
    """A user-supplied strategy is not total on the positions it must cover."""


class NotHDError(InputError):
    """Raised when determinisation is asked for a non-HD automaton.

    ``certificate`` holds Adam's winning positional choices in the Joker
    game, as a mapping from arena vertex labels to successor labels.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate or {}


class ResourceLimitError(HDBuchiError):
    pass


class IntegrityError(HDBuchiError):
    """A postcondition that holds on every valid input was violated.

    This signals a bug in the implementation, never a property of the input.
    """
