"""Exception hierarchy.

``InputError`` and its subclasses signal malformed or inconsistent inputs
(the CLI maps them to exit status 2).  ``PremiseFailed`` and friends signal
that a conditional check was asked to run on data that does not satisfy its
hypotheses.
"""


class HolderError(Exception):
    """Base class for every error raised by this package."""


class InputError(HolderError):
    """Malformed or inconsistent input data."""


class MetricError(InputError):
    """A distance table violates a metric axiom."""

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


class NotSquare(MetricError):
    pass


class NegativeDistance(MetricError):
    pass


class NonzeroDiagonal(MetricError):
    pass


class Asymmetry(MetricError):
    pass


class ZeroDistanceDistinctPoints(MetricError):
    pass


class TriangleViolation(MetricError):
    def __init__(self, message, witness=(), witnesses=()):
        super().__init__(message, witness)
        # every violating triple found, in scan order (capped)
        self.witnesses = list(witnesses)


class DisconnectedGraph(InputError):
    pass


class InvalidPNorm(InputError):
    pass


class QuotientError(InputError):
    pass


class EmptyFiber(QuotientError):
    pass


class OverlappingFibers(QuotientError):
    pass


class UncoveredPoint(QuotientError):
    pass


class UnknownPoint(InputError, KeyError):
    pass


class UnknownFiber(InputError, KeyError):
    pass


class NotASection(InputError):
    pass


class ParameterError(InputError, ValueError):
    pass


class AlphaOutOfRange(ParameterError):
    pass


class EpsilonOutOfRange(ParameterError):
    pass


class ResolutionTooSmall(ParameterError):
    pass


class ZeroScalar(ParameterError):
    pass


class SampleMismatch(InputError):
    pass


class RankDeficientMap(InputError):
    pass


class IterationDivergence(HolderError):
    pass


class PremiseFailed(HolderError):
    pass


class AnchorMismatch(HolderError):
    pass


class NoConvergentSubsequence(HolderError):
    pass


class LevelMissesFiber(HolderError):
    pass


class LevelAmbiguous(HolderError):
    pass


class AnchorOffLevel(HolderError):
    pass


class HypothesisViolated(HolderError):
    pass


class CenterOffGraph(InputError):
    pass


class DegenerateMasses(HolderError):
    pass
