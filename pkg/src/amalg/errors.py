"""Exception hierarchy shared by all engine modules."""


class AmalgError(Exception):
    """Base class for all errors raised by this package."""


class InputError(AmalgError):
    """Malformed or inconsistent input data (bad presentation, bad text,
    degree overflow, violated precondition).  CLI exit code 2."""


class CheckFailure(AmalgError):
    """A mathematical verification failed (injectivity, freeness, one of
    the cross-check identities).  CLI exit code 1."""


class DegreeOverflow(InputError):
    """A product or request went past the truncation degree.  Degrees above
    the cutoff are undefined, never silently zero."""


class FreenessFailure(CheckFailure):
    """A module turned out not to be free over the base algebra; the input
    diagram is outside the engine's hypotheses."""

    def __init__(self, degree, message):
        super().__init__(message)
        self.degree = degree
