"""Exception types shared across the toolkit."""


class NCGError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatchError(NCGError, ValueError):
    """Vector lengths disagree."""


class ConfigurationError(NCGError, ValueError):
    """A parameter is outside its admissible range."""


class EvaluationError(NCGError):
    """An objective produced NaN or Inf."""


class NonDescentError(NCGError, ValueError):
    """A line search was started along a non-descent direction."""


class DegenerateDirectionError(NCGError):
    """A beta rule hit a zero denominator; the caller should restart with -g."""


class UnboundedDescentError(NCGError):
    """The sufficient-decrease test never failed while doubling the trial
    step, i.e. the objective looks unbounded below along the direction."""


class BracketCorruptionError(NCGError):
    """An internal line-search bracket invariant was violated."""


class LineSearchStallError(NCGError):
    """The bracket shrank to the width floor (or the iteration cap was hit)
    without an acceptable step.  Carries the best sufficient-decrease point
    seen so far plus the evaluation counts spent."""

    def __init__(self, message, best_alpha=None, best_f=None, f_evals=0, g_evals=0):
        super().__init__(message)
        self.best_alpha = best_alpha
        self.best_f = best_f
        self.f_evals = f_evals
        self.g_evals = g_evals


class IncompleteGridError(NCGError, ValueError):
    """A profile was requested over a record set with missing cells."""
