"""Exception types shared across the package."""


class CharBettiError(Exception):
    """Base class for all errors raised by charbetti."""


class InputError(CharBettiError, ValueError):
    """Malformed or inconsistent input (unknown variable, ring mismatch, ...)."""


class ParseError(InputError):
    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class UndefinedError(CharBettiError, ValueError):
    """The operation has no value for this input (e.g. d(I) of the zero ideal)."""


class NotSquarefreeError(InputError):
    pass


class NotBipartiteError(CharBettiError):
    """Raised by :func:`charbetti.ideal.bipartition`.

    ``reason`` is ``"not-quadratic-squarefree"`` or ``"odd-cycle"``.
    """

    NOT_QUADRATIC = "not-quadratic-squarefree"
    ODD_CYCLE = "odd-cycle"

    def __init__(self, reason, detail=""):
        self.reason = reason
        super().__init__(f"{reason}: {detail}" if detail else reason)


class VoidComplexError(CharBettiError, ValueError):
    """Operation is undefined on the void complex (no faces at all)."""


class CapacityError(CharBettiError):
    """A configured size bound was exceeded."""

    def __init__(self, message, bound=None, override=None):
        self.bound = bound
        self.override = override
        if override:
            message = f"{message} (bound {bound}; pass {override} to override)"
        super().__init__(message)


class ConstructionError(CharBettiError, ValueError):
    """Precondition of a construction violated."""
