"""Exception types shared across the pipeline."""


class TransProseError(Exception):
    """Base class for all errors raised by this package."""


class MalformedLineError(TransProseError):
    """A lexicon line that does not match the word/category/flag format."""

    def __init__(self, line_no: int, reason: str):
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")


class EmptyTextError(TransProseError):
    """Tokenization produced no word tokens."""


class TextTooShortError(TransProseError):
    """The text has fewer tokens than the requested partition needs."""


class EmptySpanError(TransProseError):
    """A density was requested over a zero-length token span."""
