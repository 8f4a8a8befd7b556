"""Exception types shared across the package."""


class InternalInconsistency(RuntimeError):
    """A step that theory guarantees to succeed did not.

    Seeing this means a bug in the implementation, not bad user input.
    """


class HypothesisViolated(ValueError):
    """An equation does not meet the hypothesis an estimate relies on."""


class EquationError(ValueError):
    """Text or polynomial does not describe an equation u_t = u_m + f in W_m."""


class ParseError(ValueError):
    """Malformed differential-polynomial expression."""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text[position:position + 12]!r}")
