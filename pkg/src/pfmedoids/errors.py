"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class PfMedoidsError(Exception):
    """Base class for all errors raised by pfmedoids."""


class EmptyInput(PfMedoidsError, ValueError):
    pass


class NonFiniteCoordinate(PfMedoidsError, ValueError):
    pass


class NotAParetoFront(PfMedoidsError, ValueError):
    """Two input points are not mutually incomparable.

    ``witness`` holds the positions of the offending pair in the caller's
    input sequence (0-based).
    The message names them 1-based, as a line count in a file would.
    """

    def __init__(self, witness: tuple[int, int], points: tuple[tuple[float, float], ...] = ()):
        self.witness = witness
        self.points = tuple(tuple(float(x) for x in p) for p in points)
        a, b = witness
        points = self.points
        if points:
            detail = f"input points #{a + 1} {points[0]} and #{b + 1} {points[1]}"
        else:
            detail = f"input points #{a + 1} and #{b + 1}"
        super().__init__(f"not a Pareto front: {detail} are not mutually incomparable")


class NonPositiveAlpha(PfMedoidsError, ValueError):
    pass


class IndexOutOfRange(PfMedoidsError, IndexError):
    pass


class InvalidBound(PfMedoidsError, ValueError):
    pass


class TooFewPoints(PfMedoidsError, ValueError):
    pass


class KOutOfRange(PfMedoidsError, ValueError):
    pass


class MalformedPartition(PfMedoidsError, ValueError):
    pass


class TooManyCandidates(PfMedoidsError, ValueError):
    """Raised by the interval brute force when the search space exceeds its guard."""


class InstanceTooLarge(PfMedoidsError, ValueError):
    """Raised by the unrestricted brute force outside n <= 12, K <= 4."""
