"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed graph, vertex set or parameter."""


class HorizonError(InputError):
    """A request reaches past the explored part of an infinite family."""


class CapExceeded(RuntimeError):
    """Exact enumeration requested above its hard size cap."""


class ConvergenceError(RuntimeError):
    """An iterative routine stopped before meeting its tolerance."""


class HypothesisError(ValueError):
    """A theorem's hypotheses do not hold for the given input."""
