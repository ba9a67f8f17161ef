"""Shared exception types."""


class ConvergenceError(RuntimeError):
    """An iterative computation exhausted its budget before meeting its target.

    Carries the best value computed so far and an estimate of its error so
    callers can decide whether the partial result is still usable.
    """

    def __init__(self, message, value, error_estimate):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate
