"""Independent reference solvers used to check the dynamic program.

None of these touch the incremental scans: interval costs come from
:func:`~pfmedoids.costs.cluster_cost_naive` and arbitrary subsets are priced
by direct enumeration of centres.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
from numba import njit

from .costs import center_costs, cluster_cost_naive
from .errors import InstanceTooLarge, KOutOfRange, MalformedPartition, TooManyCandidates
from .pareto import ParetoInstance, check_alpha, dist_pow_many
from .solver import IntervalClustering

MAX_INTERVAL_CANDIDATES = 10**7
MAX_PARTITION_POINTS = 12
MAX_PARTITION_K = 4


@dataclass(frozen=True)
class PartitionCandidate:
    """Arbitrary (not necessarily interval) clustering with one medoid per label."""

    assignment: tuple[int, ...]
    medoids: tuple[int, ...]
    total: float
    iterations: int = 0
    converged: bool = True

    @property
    def k(self) -> int:
        return len(self.medoids)

    def is_interval(self) -> bool:
        """True when every cluster is a run of consecutive indices."""
        seen = set()
        prev = None
        for label in self.assignment:
            if label != prev:
                if label in seen:
                    return False
                seen.add(label)
                prev = label
        return True


def candidate_from_clustering(clustering: IntervalClustering, n: int) -> PartitionCandidate:
    return PartitionCandidate(
        tuple(int(x) for x in clustering.labels(n)), clustering.medoids, clustering.total
    )


def _check_k(inst: ParetoInstance, K: int) -> int:
    if isinstance(K, bool) or int(K) != K or not 1 <= K <= inst.n:
        raise KOutOfRange(f"K={K!r} outside [1..{inst.n}]")
    return int(K)


@njit(cache=True)
def _best_breaks(table, m):
    # lexicographic walk over all m-subsets of [1..n-1]; first minimum wins
    n = table.shape[0]
    idx = np.arange(1, m + 1)
    best_idx = idx.copy()
    best = np.inf
    while True:
        total = table[0, idx[0] - 1]
        for t in range(1, m):
            total += table[idx[t - 1], idx[t] - 1]
        total += table[idx[m - 1], n - 1]
        if total < best:
            best = total
            best_idx[:] = idx
        t = m - 1
        while t >= 0 and idx[t] == n - m + t:
            t -= 1
        if t < 0:
            break
        idx[t] += 1
        for u in range(t + 1, m):
            idx[u] = idx[u - 1] + 1
    return best, best_idx


def brute_interval(
    inst: ParetoInstance, K: int, alpha: float, max_candidates: int = MAX_INTERVAL_CANDIDATES
) -> IntervalClustering:
    """Optimal interval clustering by trying every placement of the K-1 breaks.

    Ties keep the lexicographically smallest break tuple.
    """
    alpha = check_alpha(alpha)
    K = _check_k(inst, K)
    n = inst.n
    count = math.comb(n - 1, K - 1)
    if count > max_candidates:
        raise TooManyCandidates(f"C({n - 1}, {K - 1}) = {count} candidates exceeds {max_candidates}")
    if K == 1:
        cc = cluster_cost_naive(inst, 0, n - 1, alpha)
        return IntervalClustering((), (cc.medoid,), (cc.cost,), cc.cost)
    table = np.full((n, n), np.inf)
    medoid = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            cc = cluster_cost_naive(inst, a, b, alpha)
            table[a, b] = cc.cost
            medoid[a, b] = cc.medoid
    total, idx = _best_breaks(table, K - 1)
    breaks = tuple(int(x) for x in idx)
    edges = (0, *breaks, n)
    spans = list(zip(edges[:-1], edges[1:]))
    return IntervalClustering(
        breaks,
        tuple(int(medoid[a, b - 1]) for a, b in spans),
        tuple(float(table[a, b - 1]) for a, b in spans),
        float(total),
    )


def _pairwise(inst: ParetoInstance, alpha: float) -> np.ndarray:
    pts = inst.points
    return np.stack([dist_pow_many(pts, p, alpha) for p in pts])


@njit(cache=True)
def _best_set_partition(mask_cost, n, K):
    # restricted-growth strings in lexicographic order; a string is an
    # interval partition iff its labels never decrease
    a = np.zeros(n, dtype=np.int64)
    top = np.zeros(n, dtype=np.int64)  # max label over a[0..i]
    masks = np.zeros(K, dtype=np.int64)
    best = np.inf
    best_a = a.copy()
    best_interval = False
    found = False
    while True:
        if top[n - 1] == K - 1:
            masks[:] = 0
            interval = True
            for i in range(n):
                masks[a[i]] |= 1 << i
                if i > 0 and a[i] < a[i - 1]:
                    interval = False
            total = 0.0
            for b in range(K):
                total += mask_cost[masks[b]]
            if (not found) or total < best or (total == best and interval and not best_interval):
                best = total
                best_a[:] = a
                best_interval = interval
                found = True
        # next string
        i = n - 1
        while i > 0:
            limit = top[i - 1] + 1
            if limit > K - 1:
                limit = K - 1
            if a[i] < limit:
                break
            i -= 1
        if i == 0:
            break
        a[i] += 1
        top[i] = max(top[i - 1], a[i])
        for u in range(i + 1, n):
            a[u] = 0
            top[u] = top[u - 1]
    return best, best_a, best_interval


def brute_all_partitions(inst: ParetoInstance, K: int, alpha: float) -> tuple[PartitionCandidate, bool]:
    """Best partition of the front into K arbitrary subsets.

    Returns the winner and whether it is an interval partition. Among
    exactly tied partitions an interval one is preferred.
    """
    alpha = check_alpha(alpha)
    K = _check_k(inst, K)
    n = inst.n
    if n > MAX_PARTITION_POINTS or K > MAX_PARTITION_K:
        raise InstanceTooLarge(
            f"set-partition search limited to n <= {MAX_PARTITION_POINTS}, K <= {MAX_PARTITION_K}"
        )
    D = _pairwise(inst, alpha)
    mask_cost = np.zeros(1 << n)
    mask_medoid = np.zeros(1 << n, dtype=np.int64)
    for mask in range(1, 1 << n):
        members = [i for i in range(n) if mask >> i & 1]
        sums = D[np.ix_(members, members)].sum(axis=1)
        k = int(np.argmin(sums))
        mask_cost[mask] = sums[k]
        mask_medoid[mask] = members[k]
    total, labels, interval = _best_set_partition(mask_cost, n, K)
    labels = tuple(int(x) for x in labels)
    medoids = []
    for b in range(K):
        mask = sum(1 << i for i in range(n) if labels[i] == b)
        medoids.append(int(mask_medoid[mask]))
    return PartitionCandidate(labels, tuple(medoids), float(total)), bool(interval)


def _subset_medoid(inst: ParetoInstance, members: np.ndarray, alpha: float) -> tuple[int, float]:
    pts = inst.points[members]
    sums = np.stack([dist_pow_many(pts, p, alpha) for p in pts]).sum(axis=1)
    k = int(np.argmin(sums))
    return int(members[k]), float(sums[k])


def _nearest(inst: ParetoInstance, medoids: Sequence[int]) -> np.ndarray:
    pts = inst.points
    ctr = pts[list(medoids)]
    d = pts[:, None, :] - ctr[None, :, :]
    sq = d[..., 0] * d[..., 0] + d[..., 1] * d[..., 1]
    return np.argmin(sq, axis=1)  # first (smallest-index) medoid on ties


def pam_heuristic(
    inst: ParetoInstance,
    K: int,
    alpha: float,
    seed: int = 0,
    max_iters: int = 100,
    init_medoids: Optional[Iterable[int]] = None,
) -> PartitionCandidate:
    """Lloyd-style alternation between nearest-medoid assignment and medoid update.

    Initial medoids are ``random.Random(seed).sample(range(n), K)`` unless
    given. Labels are ordered by medoid index.
    """
    alpha = check_alpha(alpha)
    K = _check_k(inst, K)
    n = inst.n
    if init_medoids is None:
        medoids = sorted(random.Random(seed).sample(range(n), K))
    else:
        medoids = sorted(int(m) for m in init_medoids)
        if len(set(medoids)) != K or not all(0 <= m < n for m in medoids):
            raise ValueError(f"need {K} distinct initial medoids in [0..{n - 1}], got {medoids}")
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")
    converged = False
    it = 0
    while it < max_iters:
        it += 1
        labels = _nearest(inst, medoids)
        updated = []
        for b in range(K):
            updated.append(_subset_medoid(inst, np.flatnonzero(labels == b), alpha))
        order = sorted(range(K), key=lambda b: updated[b][0])
        new = [updated[b][0] for b in order]
        costs = [updated[b][1] for b in order]
        relabel = np.empty(K, dtype=np.int64)
        relabel[order] = np.arange(K)
        labels = relabel[labels]
        if new == medoids:
            converged = True
            break
        medoids = new
    total = 0.0
    for c in costs:
        total += c
    # without convergence the medoids are exact for the last assignment,
    # but that assignment may not be nearest-medoid any more
    return PartitionCandidate(tuple(int(x) for x in labels), tuple(new), total, it, converged)


def is_local_minimum(inst: ParetoInstance, candidate: PartitionCandidate, alpha: float) -> bool:
    """Check the nearest-medoid condition for every point and that each medoid is exact."""
    alpha = check_alpha(alpha)
    n, K = inst.n, candidate.k
    labels = np.asarray(candidate.assignment, dtype=np.int64)
    if labels.shape != (n,) or labels.min(initial=0) < 0 or labels.max(initial=0) >= K:
        raise MalformedPartition("assignment must give a label in [0..K-1] to every point")
    if len(np.unique(labels)) != K:
        raise MalformedPartition("every label needs at least one point")
    for b, m in enumerate(candidate.medoids):
        if not 0 <= m < n or labels[m] != b:
            raise MalformedPartition(f"medoid {m} does not belong to cluster {b}")
    for b, m in enumerate(candidate.medoids):
        members = np.flatnonzero(labels == b)
        at_medoid = float(dist_pow_many(inst.points[members], inst.points[m], alpha).sum())
        if _subset_medoid(inst, members, alpha)[1] < at_medoid:
            return False
    pts = inst.points
    ctr = pts[list(candidate.medoids)]
    d = pts[:, None, :] - ctr[None, :, :]
    sq = d[..., 0] * d[..., 0] + d[..., 1] * d[..., 1]
    own = sq[np.arange(n), labels]
    return bool((own <= sq.min(axis=1)).all())


def medoid_profile(inst: ParetoInstance, alpha: float) -> np.ndarray:
    """Cost of the whole front centred on each point, in index order."""
    return center_costs(inst, 0, inst.n - 1, np.arange(inst.n), check_alpha(alpha))


def is_unimodal(seq: Sequence[float]) -> bool:
    """False iff some interior value is strictly above a value on each side of it."""
    seq = np.asarray(seq, dtype=np.float64)
    if len(seq) < 3:
        return True
    left = np.minimum.accumulate(seq)[:-2]
    right = np.minimum.accumulate(seq[::-1])[::-1][2:]
    mid = seq[1:-1]
    return not bool(((mid > left) & (mid > right)).any())


def find_non_unimodal_witness(
    alphas: Sequence[float] = (1.0, 2.0),
    n_range: tuple[int, int] = (5, 8),
    max_trials: int = 10**6,
    seed: int = 0,
) -> Optional[tuple[ParetoInstance, float, np.ndarray]]:
    """Random search for a front whose centre-cost profile has an interior bump.

    On such a front bisection can settle in the wrong valley, so the
    dichotomic medoid search needs its convexity guard.
    """
    from .generators import random_front

    rng = np.random.default_rng(seed)
    for _ in range(max_trials):
        inst = random_front(int(rng.integers(n_range[0], n_range[1] + 1)), rng)
        for alpha in alphas:
            prof = medoid_profile(inst, alpha)
            if not is_unimodal(prof):
                return inst, float(alpha), prof
    return None


__all__ = [
    "PartitionCandidate",
    "brute_interval",
    "brute_all_partitions",
    "pam_heuristic",
    "is_local_minimum",
    "candidate_from_clustering",
    "medoid_profile",
    "is_unimodal",
    "find_non_unimodal_witness",
]
