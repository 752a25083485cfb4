class GuardExceeded(ValueError):
    """A group or search exceeded a configured size guard."""


class NotSolvableError(ValueError):
    pass


class HypothesisError(ValueError):
    """A closed-form formula was asked for outside its hypotheses."""


class InvalidCertificate(ValueError):
    pass


class ConsistencyError(RuntimeError):
    """Two independent computations of the same value disagree."""
