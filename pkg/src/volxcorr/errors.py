"""Exception taxonomy shared by all analysis modules.

Two families exist so that callers (notably the command-line front end) can
map failures onto exit codes without inspecting messages:

* :class:`InputError` -- the data handed in is unusable.
* :class:`PreconditionError` -- the data is fine but a method cannot run on it
  with the requested settings.
"""


class VolxError(Exception):
    """Base class for every error raised by this package."""


class InputError(VolxError, ValueError):
    pass


class PreconditionError(VolxError, ValueError):
    pass


# ingest
class MalformedHeader(InputError):
    pass


class EmptySeries(InputError):
    pass


class DuplicateDate(InputError):
    pass


# series / corr
class DegenerateSeries(PreconditionError):
    pass


class ZeroVariance(PreconditionError):
    pass


class SeriesTooShort(PreconditionError):
    pass


class InvalidLevel(PreconditionError):
    pass


# scaling
class WindowTooLarge(PreconditionError):
    pass


class WindowTooSmall(PreconditionError):
    pass


class SignCrossing(PreconditionError):
    pass


class InsufficientPoints(PreconditionError):
    pass


# tails
class InsufficientExceedances(PreconditionError):
    pass


class TailTooLarge(PreconditionError):
    pass


class TailTooSmall(PreconditionError):
    pass


class NonpositiveValue(PreconditionError):
    pass


class SparseTail(PreconditionError):
    pass


# garchx
class InvalidParams(PreconditionError):
    pass


class NoPositiveSolution(PreconditionError):
    pass


class NonstationaryWarning(RuntimeWarning):
    """Emitted when simulating a parameter set without finite variance."""
