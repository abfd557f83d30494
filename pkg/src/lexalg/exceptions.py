"""Exception types raised across the package."""


class LexalgError(Exception):
    """Base class for every user-facing error."""


class OrderSyntaxError(LexalgError, ValueError):
    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}")


class MultiplicityError(LexalgError, ValueError):
    """A multiplicity below 2, a length mismatch, or a forbidden pattern."""


class UnsupportedOrderError(LexalgError, ValueError):
    """The order lies outside the class where a question is decidable."""


class RelationError(LexalgError, ValueError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message if witness is None else f"{message}: witness {witness}")


class NotTriangularError(LexalgError, ValueError):
    pass


class HomeMismatchError(LexalgError, ValueError):
    pass


class PositionError(LexalgError, ValueError):
    pass


class BudgetExceededError(LexalgError):
    def __init__(self, n_f, budget):
        self.n_f = n_f
        self.budget = budget
        super().__init__(f"stage size n_F={n_f} exceeds budget {budget}")


class OracleSizeError(LexalgError):
    pass


class PreconditionError(LexalgError, ValueError):
    pass
