"""Exception hierarchy shared by every module."""


class LinkStreamError(ValueError):
    """Base class for invalid stream data or arguments."""


class BoundsError(LinkStreamError):
    """Capture bounds do not enclose the observed timestamps."""


class EmptyStreamError(LinkStreamError):
    """No events and no explicit bounds to define a capture window."""


class DomainError(LinkStreamError):
    """An argument lies outside the domain of the requested quantity."""


class DegenerateStreamError(DomainError):
    """The stream has zero duration, so no window-based density exists."""


class NodeNotFoundError(LinkStreamError, KeyError):
    """The node label is not part of the stream."""

    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


class TraceParseError(LinkStreamError):
    """A trace row could not be parsed."""

    def __init__(self, message: str, line: int, column: int | None = None):
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column
