"""Exception types shared across the package.

The CLI maps these onto process exit codes, so library code should raise
the most specific type that applies.
"""


class FermencError(Exception):
    """Base class for all package errors."""


class PauliParseError(FermencError, ValueError):
    """A Pauli text string or serialized document could not be parsed."""


class InvariantViolation(FermencError, ValueError):
    """A structural invariant of a graph, group, or encoding is violated.

    The message names the violated invariant and, where relevant, the
    offending operator pair.
    """


class CornerTypeError(InvariantViolation):
    """An open-boundary construction was requested with a vertex-type phase
    whose corner types leave some single-qubit errors with colliding
    syndromes."""


class SearchExhausted(FermencError, RuntimeError):
    """A search finished its space without finding a valid solution."""

    def __init__(self, message, best_candidate=None):
        super().__init__(message)
        self.best_candidate = best_candidate


class BudgetExceeded(FermencError, RuntimeError):
    """An enumeration exceeded its evaluation budget before reaching an
    answer; carries the largest bound that would have fit."""

    def __init__(self, message, feasible_weight=None):
        super().__init__(message)
        self.feasible_weight = feasible_weight
