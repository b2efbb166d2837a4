class SubconnError(Exception):
    """Base class for every error raised by this package."""


class PreconditionError(SubconnError, ValueError):
    """An operation was called in a state its contract does not allow."""


class AlreadyConnectedError(PreconditionError):
    pass


class NotATreeEdgeError(PreconditionError):
    pass


class DifferentTreesError(PreconditionError):
    pass


class StaleHandleError(PreconditionError):
    pass


class UnknownVertexError(PreconditionError, KeyError):
    pass


class TraceFormatError(SubconnError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno
