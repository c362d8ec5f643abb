"""Points of the objective plane, dominance relations and validated fronts.

Both objectives are minimised. A valid front, once sorted, has the first
coordinate strictly increasing and the second strictly decreasing; all
other modules rely on that ordering.

Indices in the library API are 0-based. The CLI reports 1-based positions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import EmptyInput, NonFiniteCoordinate, NonPositiveAlpha, NotAParetoFront


class _Point2Base(NamedTuple):
    x1: float
    x2: float


class Point2(_Point2Base):
    """A point of the objective plane with two finite coordinates."""

    __slots__ = ()

    def __new__(cls, x1: float, x2: float) -> "Point2":
        x1, x2 = float(x1), float(x2)
        if not (math.isfinite(x1) and math.isfinite(x2)):
            raise NonFiniteCoordinate(f"non-finite coordinate in ({x1}, {x2})")
        return super().__new__(cls, x1, x2)


PointLike = Sequence[float]


def dominates(y: PointLike, z: PointLike) -> bool:
    """Weak dominance for minimisation: ``y`` is no worse on both objectives and differs from ``z``."""
    return y[0] <= z[0] and y[1] <= z[1] and (y[0] != z[0] or y[1] != z[1])


def precedes(y: PointLike, z: PointLike) -> bool:
    """Strict front order: ``y`` comes before ``z`` on a front (smaller x1, larger x2)."""
    return y[0] < z[0] and y[1] > z[1]


def incomparable(y: PointLike, z: PointLike) -> bool:
    return precedes(y, z) or precedes(z, y)


def _as_array(points: Iterable[PointLike]) -> np.ndarray:
    if isinstance(points, np.ndarray):
        arr = np.asarray(points, dtype=np.float64)
    else:
        arr = np.array([(p[0], p[1]) for p in points], dtype=np.float64)
    if arr.size == 0:
        return np.empty((0, 2), dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"expected a sequence of 2-d points, got shape {arr.shape}")
    bad = ~np.isfinite(arr).all(axis=1)
    if bad.any():
        i = int(np.argmax(bad))
        raise NonFiniteCoordinate(f"input point #{i} {tuple(arr[i])} has a non-finite coordinate")
    return arr


def _front_mask(arr: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # lexicographic sort on (x1, x2); a point survives iff its x2 is strictly
    # below every x2 seen so far, which drops duplicates and ties on either axis
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    keep = np.zeros(len(order), dtype=bool)
    best = math.inf
    for pos, idx in enumerate(order):
        y = arr[idx, 1]
        if y < best:
            keep[pos] = True
            best = y
    return order, keep


def extract_front(points: Iterable[PointLike]) -> list[Point2]:
    """Non-dominated subset of ``points``, sorted by the first objective.

    Weak dominance is used, so among points that share a coordinate only
    the one that is better on the other coordinate survives, and exact
    duplicates collapse to one point. Runs in O(n log n).
    """
    arr = _as_array(points)
    if len(arr) == 0:
        return []
    order, keep = _front_mask(arr)
    return [Point2(*arr[i]) for i in order[keep]]


@dataclass(frozen=True, eq=False)
class ParetoInstance:
    """A validated front, sorted by increasing first objective.

    ``points`` is a read-only ``(n, 2)`` float array. Position ``i`` in this
    array is the index used by every solver.
    """

    points: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.points, dtype=np.float64, copy=True)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError(f"expected an (n, 2) array, got shape {arr.shape}")
        if len(arr) == 0:
            raise EmptyInput("a front needs at least one point")
        if not np.isfinite(arr).all():
            raise NonFiniteCoordinate("front contains a non-finite coordinate")
        bad = np.flatnonzero((np.diff(arr[:, 0]) <= 0) | (np.diff(arr[:, 1]) >= 0))
        if bad.size:
            i = int(bad[0])
            raise NotAParetoFront((i, i + 1), (tuple(arr[i]), tuple(arr[i + 1])))
        arr.setflags(write=False)
        object.__setattr__(self, "points", arr)

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point2:
        return Point2(*self.points[i])

    def __iter__(self) -> Iterator[Point2]:
        return (Point2(*p) for p in self.points)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ParetoInstance):
            return NotImplemented
        return np.array_equal(self.points, other.points)

    def __hash__(self) -> int:
        return hash(self.points.tobytes())

    def __repr__(self) -> str:
        return f"ParetoInstance(n={self.n})"


def build_instance(points: Iterable[PointLike], assume_front: bool = False) -> ParetoInstance:
    """Sort ``points`` into a :class:`ParetoInstance`.

    With ``assume_front`` the input must already be mutually incomparable;
    any violation raises :class:`NotAParetoFront` naming an offending pair
    by input position. Otherwise dominated points and duplicates are
    discarded first.
    """
    arr = _as_array(points)
    if len(arr) == 0:
        raise EmptyInput("cannot build an instance from no points")
    if not assume_front:
        order, keep = _front_mask(arr)
        return ParetoInstance(arr[order[keep]])
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    srt = arr[order]
    bad = np.flatnonzero((np.diff(srt[:, 0]) <= 0) | (np.diff(srt[:, 1]) >= 0))
    if bad.size:
        i = int(bad[0])
        a, b = int(order[i]), int(order[i + 1])
        raise NotAParetoFront((a, b), (tuple(arr[a]), tuple(arr[b])))
    return ParetoInstance(srt)


def dist_pow(a: PointLike, b: PointLike, alpha: float) -> float:
    """Euclidean distance raised to ``alpha``; no square root is taken for alpha = 2."""
    if not alpha > 0:
        raise NonPositiveAlpha(f"alpha must be positive, got {alpha}")
    dx = a[0] - b[0]
    dy = a[1] - b[1]
    sq = dx * dx + dy * dy
    if alpha == 2.0:
        return sq
    if alpha == 1.0:
        return math.sqrt(sq)
    return sq ** (0.5 * alpha)


def dist_pow_many(points: np.ndarray, center: np.ndarray, alpha: float) -> np.ndarray:
    """Vectorised :func:`dist_pow` from every row of ``points`` to ``center``."""
    d = points - center
    sq = d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1]
    if alpha == 2.0:
        return sq
    if alpha == 1.0:
        return np.sqrt(sq)
    return sq ** (0.5 * alpha)


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not (alpha > 0 and math.isfinite(alpha)):
        raise NonPositiveAlpha(f"alpha must be a positive finite real, got {alpha}")
    return alpha
