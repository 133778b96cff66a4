"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class DivisionError(ArithmeticError):
    """Exact division left a non-zero remainder."""


class PolySyntaxError(ValueError):
    """A polynomial string could not be parsed."""

    def __init__(self, message, text, pos):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {text!r}")


class FoldError(ValueError):
    """A fold move was requested at a vertex where it is not legal."""


class CircuitError(ValueError):
    """A folding circuit broke down at a particular step."""

    def __init__(self, step, message):
        self.step = step
        super().__init__(f"step {step}: {message}")
