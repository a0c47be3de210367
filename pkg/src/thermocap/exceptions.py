class InvalidStateError(ValueError):
    """Input is not a valid density matrix, qubit state or code."""


class NumericalInvariantError(ArithmeticError):
    """A computed quantity violated an invariant it must satisfy."""
