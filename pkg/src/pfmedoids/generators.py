"""Synthetic fronts for tests and benchmarks."""

from __future__ import annotations

from typing import Callable, Optional

import numpy as np

from .pareto import ParetoInstance


def affine_front(n: int) -> ParetoInstance:
    """Integer points ``(i, n-1-i)`` on a straight line."""
    i = np.arange(n, dtype=np.float64)
    return ParetoInstance(np.column_stack([i, n - 1 - i]))


def convex_front(n: int) -> ParetoInstance:
    """Points ``(x, 1/x)`` for ``x = 1..n``."""
    x = np.arange(1, n + 1, dtype=np.float64)
    return ParetoInstance(np.column_stack([x, 1.0 / x]))


def concave_front(n: int) -> ParetoInstance:
    """Point reflection of :func:`convex_front`: ``(-x, -1/x)``, a concave decreasing curve."""
    x = np.arange(n, 0, -1, dtype=np.float64)
    return ParetoInstance(np.column_stack([-x, -1.0 / x]))


def random_front(n: int, rng: Optional[np.random.Generator] = None) -> ParetoInstance:
    """Uniform staircase in the unit square: sorted x against reverse-sorted y."""
    rng = np.random.default_rng() if rng is None else rng
    while True:
        x = np.sort(rng.random(n))
        y = np.sort(rng.random(n))[::-1]
        if (np.diff(x) > 0).all() and (np.diff(y) < 0).all():
            return ParetoInstance(np.column_stack([x, y]))


GENERATORS: dict[str, Callable[..., ParetoInstance]] = {
    "affine": lambda n, rng=None: affine_front(n),
    "convex": lambda n, rng=None: convex_front(n),
    "concave": lambda n, rng=None: concave_front(n),
    "random": random_front,
}
