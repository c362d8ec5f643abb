"""Exact K-clustering of a sorted front into interval clusters.

Optimal clusterings of a front consist of runs of consecutive points, so a
clustering is fully described by its break positions. ``breaks[t]`` is the
index of the first point of cluster ``t + 1``; cluster ``t`` is the slice
``points[start:stop]``.

``solve_general`` fills the table ``M[k-1, i]`` = optimal cost of splitting
``points[0..i]`` into k clusters, column by column. Each column needs the
costs of all clusters ending at ``i``, produced by one suffix scan that is
discarded afterwards, so memory stays O(K n). Backtracking re-runs the scans
it needs instead of storing argmins.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._kernels import kernels
from .costs import Shape, check_shape, cluster_cost_naive, medoid_dichotomic, prefix_costs, suffix_costs_to
from .errors import KOutOfRange, MalformedPartition, TooFewPoints
from .pareto import ParetoInstance, check_alpha


@dataclass(frozen=True)
class IntervalClustering:
    breaks: tuple[int, ...]
    medoids: tuple[int, ...]
    cluster_costs: tuple[float, ...]
    total: float
    evaluations: int = 0  # distance terms computed by the cost scans

    @property
    def k(self) -> int:
        return len(self.medoids)

    def ranges(self, n: int) -> list[tuple[int, int]]:
        """Half-open ``(start, stop)`` pairs of every cluster."""
        edges = (0, *self.breaks, n)
        return list(zip(edges[:-1], edges[1:]))

    def labels(self, n: int) -> np.ndarray:
        out = np.empty(n, dtype=np.int64)
        for label, (a, b) in enumerate(self.ranges(n)):
            out[a:b] = label
        return out


@dataclass(frozen=True, eq=False)
class DpTable:
    """Optimal prefix costs; ``M[k-1, i]`` is k clusters over ``points[0..i]``.

    Only cells on the path to ``M[K-1, n-1]`` are filled, the rest are NaN.
    """

    K: int
    n: int
    M: np.ndarray


@dataclass(frozen=True)
class LocalMinimumReport:
    split: int  # first index of the second cluster
    medoids: tuple[int, int]
    total: float


def _singletons(n: int) -> IntervalClustering:
    return IntervalClustering(tuple(range(1, n)), tuple(range(n)), (0.0,) * n, 0.0)


def solve_k1(inst: ParetoInstance, alpha: float, use_dichotomic: bool = False) -> IntervalClustering:
    alpha = check_alpha(alpha)
    n = inst.n
    if use_dichotomic and check_shape(inst, 0, n - 1) is not Shape.NEITHER:
        cc = medoid_dichotomic(inst, 0, n - 1, alpha)
    else:
        cc = cluster_cost_naive(inst, 0, n - 1, alpha)
    return IntervalClustering((), (cc.medoid,), (cc.cost,), cc.cost, cc.probes * n)


def solve_k2(inst: ParetoInstance, alpha: float, prune: bool = False, workers: int = 1) -> IntervalClustering:
    """Best split into two clusters, smallest split on ties.

    With ``prune`` the prefix and suffix scans start from the middle split
    and are only extended while a single cluster is cheaper than the best
    total seen; the result is identical, usually with fewer distance terms.
    """
    alpha = check_alpha(alpha)
    n = inst.n
    if n < 2:
        raise TooFewPoints("two clusters need at least two points")
    if not prune:
        pre = prefix_costs(inst, alpha, workers=workers)
        suf = suffix_costs_to(inst, n - 1, alpha, int(pre.c[n - 1]), workers=workers)
        totals = pre.v[:-1] + suf.v[1:]
        j = int(np.argmin(totals))
        return IntervalClustering(
            (j + 1,),
            (int(pre.c[j]), int(suf.c[j + 1])),
            (float(pre.v[j]), float(suf.v[j + 1])),
            float(totals[j]),
            pre.evaluations + suf.evaluations,
        )
    return _solve_k2_pruned(inst, alpha, workers)


def _solve_k2_pruned(inst: ParetoInstance, alpha: float, workers: int) -> IntervalClustering:
    kern = kernels(workers)
    prefix_step, suffix_step = kern["prefix_step"], kern["suffix_step"]
    pts = inst.points
    n = inst.n
    last = n - 1
    ptemp, pv, pc = np.zeros(n), np.zeros(n), np.zeros(n, dtype=np.int64)
    stemp, sv, sc = np.zeros(n), np.zeros(n), np.zeros(n, dtype=np.int64)
    evals = 0

    ptop, pdone = 0, 0  # prefix costs known for [0..pdone]
    sbottom = kern["suffix_start"](last, stemp, sv, sc)
    sdone = last  # suffix costs known for [sdone..last]

    def grow_prefix(j: int) -> None:
        nonlocal ptop, pdone, evals
        while pdone < j:
            pdone += 1
            ptop, e = prefix_step(pts, alpha, pdone, last, ptemp, pv, pc, ptop)
            evals += e

    def grow_suffix(s: int) -> None:
        nonlocal sbottom, sdone, evals
        while sdone > s:
            sdone -= 1
            sbottom, e = suffix_step(pts, alpha, last, sdone, 0, stemp, sv, sc, sbottom)
            evals += e

    # j is the last index of the first cluster
    mid = n // 2 - 1
    grow_prefix(mid)
    grow_suffix(mid + 1)
    beta, best = pv[mid] + sv[mid + 1], mid
    for j in range(mid + 1, n - 1):
        grow_prefix(j)
        if pv[j] > beta:
            break
        total = pv[j] + sv[j + 1]
        if total < beta:
            beta, best = total, j
    for j in range(mid - 1, -1, -1):
        grow_suffix(j + 1)
        if sv[j + 1] > beta:
            break
        total = pv[j] + sv[j + 1]
        if total <= beta:
            beta, best = total, j
    return IntervalClustering(
        (best + 1,),
        (int(pc[best]), int(sc[best + 1])),
        (float(pv[best]), float(sv[best + 1])),
        float(beta),
        int(evals),
    )


def enumerate_local_minima_k2(inst: ParetoInstance, alpha: float, workers: int = 1) -> list[LocalMinimumReport]:
    """Every two-cluster split that is a fixed point of nearest-medoid reassignment.

    Checking the two points on either side of the split is enough: points
    further from the boundary are strictly closer to their own medoid.
    Boundary ties count as stable.
    """
    alpha = check_alpha(alpha)
    n = inst.n
    if n < 2:
        raise TooFewPoints("two clusters need at least two points")
    pts = inst.points
    pre = prefix_costs(inst, alpha, workers=workers)
    suf = suffix_costs_to(inst, n - 1, alpha, int(pre.c[n - 1]), workers=workers)

    def sq(a: int, b: int) -> float:
        d = pts[a] - pts[b]
        return float(d[0] * d[0] + d[1] * d[1])

    out = []
    for j in range(n - 1):
        left, right = int(pre.c[j]), int(suf.c[j + 1])
        if sq(j, left) <= sq(j, right) and sq(j + 1, right) <= sq(j + 1, left):
            out.append(LocalMinimumReport(j + 1, (left, right), float(pre.v[j] + suf.v[j + 1])))
    return out


def _check_k(inst: ParetoInstance, K: int) -> int:
    if isinstance(K, bool) or int(K) != K:
        raise KOutOfRange(f"K must be an integer, got {K!r}")
    K = int(K)
    if not 1 <= K <= inst.n:
        raise KOutOfRange(f"K={K} outside [1..{inst.n}]")
    return K


class _DpRun:
    """Buffers shared by the forward pass and the backtracking."""

    def __init__(self, inst: ParetoInstance, K: int, alpha: float, prune: bool, workers: int):
        n = inst.n
        self.inst, self.K, self.alpha, self.prune = inst, K, alpha, prune
        self.kern = kernels(workers)
        pre = prefix_costs(inst, alpha, workers=workers)
        self.lbs = pre.c
        self.M = np.full((K, n), np.nan)
        self.M[0] = pre.v
        self.temp, self.v = np.zeros(n), np.zeros(n)
        self.c = np.zeros(n, dtype=np.int64)
        self.best, self.arg = np.zeros(K + 1), np.zeros(K + 1, dtype=np.int64)
        self.done = np.zeros(K + 1, dtype=np.bool_)
        self.evaluations = pre.evaluations

    def forward(self) -> None:
        self.evaluations += int(
            self.kern["dp_forward"](
                self.inst.points, self.K, self.alpha, self.prune, self.lbs,
                self.M, self.temp, self.v, self.c, self.best, self.arg, self.done,
            )
        )

    def column(self, k: int, i: int) -> int:
        """Re-run column ``i`` for row ``k`` alone; returns the argmin split."""
        self.evaluations += int(
            self.kern["dp_column"](
                self.inst.points, self.alpha, i, k, k, self.prune, self.lbs[i],
                self.M, self.temp, self.v, self.c, self.best, self.arg, self.done,
            )
        )
        return int(self.arg[k])

    def backtrack(self) -> IntervalClustering:
        i = self.inst.n - 1
        breaks, medoids, costs = [], [], []
        for k in range(self.K, 1, -1):
            j = self.column(k, i)
            breaks.append(j + 1)
            medoids.append(int(self.c[j + 1]))
            costs.append(float(self.v[j + 1]))
            i = j
        medoids.append(int(self.lbs[i]))
        costs.append(float(self.M[0, i]))
        return IntervalClustering(
            tuple(reversed(breaks)),
            tuple(reversed(medoids)),
            tuple(reversed(costs)),
            float(self.M[self.K - 1, -1]),
            self.evaluations,
        )


def build_dp_table(inst: ParetoInstance, K: int, alpha: float, prune: bool = False, workers: int = 1) -> DpTable:
    """Forward pass only; exposes the table for inspection."""
    alpha = check_alpha(alpha)
    K = _check_k(inst, K)
    run = _DpRun(inst, K, alpha, prune, workers)
    run.forward()
    return DpTable(K, inst.n, run.M)


def solve_general(
    inst: ParetoInstance,
    K: int,
    alpha: float,
    prune: bool = False,
    workers: int = 1,
) -> IntervalClustering:
    """Optimal clustering into ``K`` interval clusters.

    Ties between splits go to the smallest break, level by level from the
    right. ``prune`` stops a column's suffix scan once the cluster cost
    alone exceeds the best value found for every row still open; it never
    changes the result.
    """
    alpha = check_alpha(alpha)
    K = _check_k(inst, K)
    if K == inst.n:
        return _singletons(inst.n)
    if K == 1:
        return solve_k1(inst, alpha)
    if K == 2:
        return solve_k2(inst, alpha, prune=prune, workers=workers)
    run = _DpRun(inst, K, alpha, prune, workers)
    run.forward()
    return run.backtrack()


def objective_of(inst: ParetoInstance, clustering: IntervalClustering, alpha: float) -> float:
    """Recompute the total cost of ``clustering`` from scratch."""
    alpha = check_alpha(alpha)
    edges = (0, *clustering.breaks, inst.n)
    if any(a >= b for a, b in zip(edges[:-1], edges[1:])):
        raise MalformedPartition(f"breaks {clustering.breaks} do not partition [0..{inst.n - 1}]")
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        total += cluster_cost_naive(inst, a, b - 1, alpha).cost
    return total
