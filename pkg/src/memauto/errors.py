"""Exception hierarchy shared by the library and the command line."""


class MemautoError(Exception):
    """Base class for all errors raised by memauto."""


class FormatError(MemautoError, ValueError):
    """Malformed textual input (letters, words, renaming separators)."""


class DomainError(MemautoError, KeyError):
    """An identifier (variable, layer) outside the domain of a context."""

    def __str__(self):
        # KeyError quotes its argument; keep messages readable.
        return str(self.args[0]) if self.args else ""


class UsageError(MemautoError, ValueError):
    """An operation was called outside its precondition."""


class LoadError(MemautoError, ValueError):
    """A document (JSON, DIMACS, run file) could not be loaded.

    ``path`` locates the offending element, e.g. ``$.transitions[2].kind``
    or ``line 7``.
    """

    def __init__(self, message, path=None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
