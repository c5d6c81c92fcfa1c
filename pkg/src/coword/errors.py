"""Exception hierarchy shared by every pipeline stage."""


class CowordError(Exception):
    """Base class for all errors raised by this package."""


class InputError(CowordError):
    """Malformed or undecodable input file."""


class LexiconError(InputError):
    """A lexicon file could not be loaded."""


class UsageError(CowordError, ValueError):
    """An operation was called with arguments violating its preconditions."""


class EmptyVocabularyError(CowordError):
    """No word reaches the minimum occurrence count."""


class DegenerateVariableError(CowordError):
    """One or more word variables have zero variance across documents.

    The offending words are available as ``words``.
    """

    def __init__(self, words):
        self.words = list(words)
        super().__init__(
            "zero-variance word(s): " + ", ".join(self.words)
            + " (drop them or use --drop-degenerate)"
        )


class ConvergenceError(CowordError):
    """An iterative solver hit its sweep limit."""

    def __init__(self, message, residual):
        self.residual = residual
        super().__init__(f"{message} (residual {residual:.3e})")
