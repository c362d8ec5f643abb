"""Costs and alpha-medoids of interval clusters.

An interval cluster ``[i..i2]`` is the run of consecutive points of a sorted
front. Its cost is ``min_c sum_{l in [i..i2]} |p_l - p_c|^alpha``, and the
medoid is the minimising ``c``. Ties always go to the smallest index.

Three ways to get there:

* :func:`cluster_cost_naive` scans every centre (quadratic, used as oracle);
* :func:`medoid_dichotomic` bisects on the cost profile, valid when the
  sub-front is convex or concave;
* :func:`prefix_costs` / :func:`suffix_costs_to` produce all costs sharing a
  left (resp. right) endpoint in O(n^2) total by extending one running sum
  per candidate centre and restricting candidates to the window allowed by
  medoid monotonicity.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from ._kernels import kernels
from .errors import IndexOutOfRange, InvalidBound
from .pareto import ParetoInstance, check_alpha


@dataclass(frozen=True)
class ClusterCost:
    cost: float
    medoid: int
    probes: int = 0  # number of centre costs evaluated


@dataclass(frozen=True, eq=False)
class CostScan:
    """Costs of all clusters sharing one endpoint.

    ``direction == "prefix"``: ``v[j]`` is the cost of ``[0..j]`` for every j.
    ``direction == "suffix"``: ``v[j]`` is the cost of ``[j..anchor]`` for
    ``j <= anchor``; the arrays have length ``anchor + 1``.
    """

    anchor: int
    direction: Literal["prefix", "suffix"]
    v: np.ndarray
    c: np.ndarray
    evaluations: int


class Shape(str, enum.Enum):
    CONVEX = "convex"
    CONCAVE = "concave"
    NEITHER = "neither"


def _check_range(inst: ParetoInstance, i: int, i2: int) -> None:
    if not (0 <= i <= i2 < inst.n):
        raise IndexOutOfRange(f"interval [{i}..{i2}] outside [0..{inst.n - 1}]")


_BLOCK_ELEMS = 1 << 20


def center_costs(inst: ParetoInstance, i: int, i2: int, centers: np.ndarray, alpha: float) -> np.ndarray:
    """Cost of cluster ``[i..i2]`` centred on each index in ``centers``.

    This is the single place where a centre cost is summed, so every
    caller sees bit-identical values for the same centre.
    """
    pts = inst.points
    seg = pts[i : i2 + 1]
    ctr = pts[np.asarray(centers, dtype=np.int64)]
    dx = seg[None, :, 0] - ctr[:, None, 0]
    dy = seg[None, :, 1] - ctr[:, None, 1]
    sq = dx * dx + dy * dy
    if alpha == 2.0:
        d = sq
    elif alpha == 1.0:
        d = np.sqrt(sq)
    else:
        d = sq ** (0.5 * alpha)
    return d.sum(axis=1)


def center_cost(inst: ParetoInstance, i: int, i2: int, c: int, alpha: float) -> float:
    """Cost of cluster ``[i..i2]`` when centred on point ``c``."""
    return float(center_costs(inst, i, i2, np.array([c]), alpha)[0])


def cluster_cost_naive(inst: ParetoInstance, i: int, i2: int, alpha: float) -> ClusterCost:
    """Exact cost and medoid of ``[i..i2]`` by trying every centre."""
    _check_range(inst, i, i2)
    alpha = check_alpha(alpha)
    size = i2 - i + 1
    step = max(1, _BLOCK_ELEMS // size)
    best, arg = np.inf, i
    for start in range(i, i2 + 1, step):
        block = center_costs(inst, i, i2, np.arange(start, min(start + step, i2 + 1)), alpha)
        k = int(np.argmin(block))
        if block[k] < best:
            best, arg = float(block[k]), start + k
    return ClusterCost(best, arg, size)


def medoid_dichotomic(inst: ParetoInstance, i: int, i2: int, alpha: float) -> ClusterCost:
    """Bisection search for the medoid of ``[i..i2]``.

    Only correct when the centre-cost profile is unimodal, which holds on
    convex or concave sub-fronts (see :func:`check_shape`). On other fronts
    the result is some local minimum, not necessarily the optimum.
    """
    _check_range(inst, i, i2)
    alpha = check_alpha(alpha)
    if i2 - i < 2:
        return ClusterCost(center_cost(inst, i, i2, i, alpha), i, 1)
    if i2 - i == 2:
        return ClusterCost(center_cost(inst, i, i2, i + 1, alpha), i + 1, 1)

    probes = 0

    def cost_at(c: int) -> float:
        nonlocal probes
        probes += 1
        return center_cost(inst, i, i2, c, alpha)

    # endpoints are never medoids of three or more points
    lo, hi = i + 1, i2 - 1
    while hi - lo >= 2:
        mid = (lo + hi) // 2
        here, right = cost_at(mid), cost_at(mid + 1)
        if here == right:
            lo, hi = mid, mid + 1
        elif here < right:
            hi = mid
        else:
            lo = mid + 1
    lo_cost = cost_at(lo)
    if hi == lo:
        return ClusterCost(lo_cost, lo, probes)
    hi_cost = cost_at(hi)
    if hi_cost < lo_cost:
        return ClusterCost(hi_cost, hi, probes)
    return ClusterCost(lo_cost, lo, probes)


def check_shape(inst: ParetoInstance, i: int, i2: int) -> Shape:
    """Classify ``[i..i2]`` by the monotonicity of its consecutive slopes.

    Constant slopes count as convex.
    """
    _check_range(inst, i, i2)
    if i2 - i < 2:
        return Shape.CONVEX
    seg = inst.points[i : i2 + 1]
    slopes = np.diff(seg[:, 1]) / np.diff(seg[:, 0])
    steps = np.diff(slopes)
    if (steps >= 0).all():
        return Shape.CONVEX
    if (steps <= 0).all():
        return Shape.CONCAVE
    return Shape.NEITHER


def _workspace(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return np.zeros(n), np.zeros(n), np.zeros(n, dtype=np.int64)


def prefix_costs(
    inst: ParetoInstance,
    alpha: float,
    center_upper_bound: Optional[int] = None,
    workers: int = 1,
) -> CostScan:
    """Costs and medoids of ``[0..j]`` for every j, in O(n^2) time and O(n) memory.

    ``center_upper_bound`` must not be smaller than the medoid of the whole
    front; it caps the candidate centres of every prefix.
    """
    alpha = check_alpha(alpha)
    n = inst.n
    ub = n - 1 if center_upper_bound is None else int(center_upper_bound)
    if not 0 <= ub < n:
        raise InvalidBound(f"centre upper bound {ub} outside [0..{n - 1}]")
    temp, v, c = _workspace(n)
    evals = kernels(workers)["prefix_scan"](inst.points, alpha, ub, temp, v, c)
    return CostScan(n - 1, "prefix", v, c, int(evals))


def suffix_costs_to(
    inst: ParetoInstance,
    j: int,
    alpha: float,
    center_lower_bound: Optional[int] = None,
    workers: int = 1,
) -> CostScan:
    """Costs and medoids of ``[s..j]`` for every ``s <= j``.

    ``center_lower_bound`` must not exceed the medoid of ``[0..j]``.
    """
    alpha = check_alpha(alpha)
    if not 0 <= j < inst.n:
        raise IndexOutOfRange(f"anchor {j} outside [0..{inst.n - 1}]")
    lb = 0 if center_lower_bound is None else int(center_lower_bound)
    if not 0 <= lb <= j:
        raise InvalidBound(f"centre lower bound {lb} outside [0..{j}]")
    temp, v, c = _workspace(j + 1)
    evals = kernels(workers)["suffix_scan"](inst.points[: j + 1], alpha, j, lb, temp, v, c)
    return CostScan(j, "suffix", v, c, int(evals))
