"""Exception hierarchy shared by all modules."""


class MorikawaError(Exception):
    pass


class DomainError(MorikawaError, ValueError):
    """An input lies outside the mathematical domain of an operation."""


class ConvergenceError(MorikawaError, RuntimeError):
    """A bracketing or minimisation routine failed; indicates a bug or bad tolerances."""


class NotInscribed(MorikawaError, ValueError):
    pass


class DegenerateInput(MorikawaError, ValueError):
    pass


class DegreeDrop(MorikawaError, ValueError):
    """Specialisation lowered the degree of the polynomial."""


class EmptyHistogram(MorikawaError, ValueError):
    pass
