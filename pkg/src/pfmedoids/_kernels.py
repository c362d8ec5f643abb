"""Compiled inner loops for the cost scans and the dynamic program.

Every kernel works on caller-owned buffers and allocates nothing, so the
memory of a solve is whatever the Python layer hands in (O(K n)).

Two flavours are compiled from the same source: a serial one, and one where
the candidate-window loops run under ``prange`` once a window is large
enough to pay for the threads. Each accumulator is owned by a single loop
iteration and summed in a fixed order, so both flavours return
bit-identical results.
"""

from __future__ import annotations

import math
import os

import numba
from numba import njit, prange

if "NUMBA_THREADING_LAYER" not in os.environ:
    # the TBB layer probes and warns on older TBB builds; workqueue is always present
    numba.config.THREADING_LAYER = "workqueue"


@njit(cache=True, nogil=True)
def dpow(pts, a, b, alpha):
    dx = pts[a, 0] - pts[b, 0]
    dy = pts[a, 1] - pts[b, 1]
    sq = dx * dx + dy * dy
    if alpha == 2.0:
        return sq
    if alpha == 1.0:
        return math.sqrt(sq)
    return sq ** (0.5 * alpha)


# below this many distance terms a parallel region costs more than it saves
PARALLEL_MIN_WORK = 1 << 14


@njit(cache=True, nogil=True)
def _extend_serial(pts, alpha, p, lo, hi, temp):
    for k in range(lo, hi + 1):
        temp[k] += dpow(pts, p, k, alpha)


@njit(cache=True, nogil=True)
def _fill_serial(pts, alpha, first, last, lo, hi, temp):
    for k in range(lo, hi + 1):
        acc = 0.0
        for l in range(first, last + 1):
            acc += dpow(pts, l, k, alpha)
        temp[k] = acc


@njit(parallel=True, nogil=True)
def _extend_parallel(pts, alpha, p, lo, hi, temp):
    for k in prange(lo, hi + 1):
        temp[k] += dpow(pts, p, k, alpha)


@njit(parallel=True, nogil=True)
def _fill_parallel(pts, alpha, first, last, lo, hi, temp):
    for k in prange(lo, hi + 1):
        acc = 0.0
        for l in range(first, last + 1):
            acc += dpow(pts, l, k, alpha)
        temp[k] = acc


@njit(nogil=True)
def _extend_auto(pts, alpha, p, lo, hi, temp):
    if hi - lo + 1 >= PARALLEL_MIN_WORK:
        _extend_parallel(pts, alpha, p, lo, hi, temp)
    else:
        _extend_serial(pts, alpha, p, lo, hi, temp)


@njit(nogil=True)
def _fill_auto(pts, alpha, first, last, lo, hi, temp):
    if (hi - lo + 1) * (last - first + 1) >= PARALLEL_MIN_WORK:
        _fill_parallel(pts, alpha, first, last, lo, hi, temp)
    else:
        _fill_serial(pts, alpha, first, last, lo, hi, temp)


def _build(parallel: bool):
    # only the candidate-window loops differ between flavours
    jit = njit(nogil=True)
    extend = _extend_auto if parallel else _extend_serial
    fill = _fill_auto if parallel else _fill_serial

    @jit
    def prefix_step(pts, alpha, j, ub, temp, v, c, top):
        # candidates for C[0..j]: [c[j-1], min(j-1, ub)], or up to j for a pair
        lo = c[j - 1]
        hi = j if j == 1 else j - 1
        if hi > ub:
            hi = ub
        upd_hi = top if top < hi else hi
        extend(pts, alpha, j, lo, upd_hi, temp)
        fill(pts, alpha, 0, j, top + 1, hi, temp)
        evals = upd_hi - lo + 1 if upd_hi >= lo else 0
        if hi > top:
            evals += (hi - top) * (j + 1)
            top = hi
        best = temp[lo]
        arg = lo
        for k in range(lo + 1, hi + 1):
            if temp[k] < best:
                best = temp[k]
                arg = k
        v[j] = best
        c[j] = arg
        return top, evals

    @jit
    def prefix_scan(pts, alpha, ub, temp, v, c):
        n = pts.shape[0]
        v[0] = 0.0
        c[0] = 0
        temp[0] = 0.0
        top = 0
        evals = 0
        for j in range(1, n):
            top, e = prefix_step(pts, alpha, j, ub, temp, v, c, top)
            evals += e
        return evals

    @jit
    def suffix_start(a, temp, v, c):
        v[a] = 0.0
        c[a] = a
        temp[a] = 0.0
        return a

    @jit
    def suffix_step(pts, alpha, a, s, lb, temp, v, c, bottom):
        # candidates for C[s..a]: [max(s+1, lb), c[s+1]], or from s for a pair
        hi = c[s + 1]
        lo = s + 1 if a - s >= 2 else s
        if lo < lb:
            lo = lb
        extend(pts, alpha, s, bottom, hi, temp)
        fill(pts, alpha, s, a, lo, bottom - 1, temp)
        evals = hi - bottom + 1 if hi >= bottom else 0
        if lo < bottom:
            evals += (bottom - lo) * (a - s + 1)
            bottom = lo
        best = temp[lo]
        arg = lo
        for k in range(lo + 1, hi + 1):
            if temp[k] < best:
                best = temp[k]
                arg = k
        v[s] = best
        c[s] = arg
        return bottom, evals

    @jit
    def suffix_scan(pts, alpha, a, lb, temp, v, c):
        bottom = suffix_start(a, temp, v, c)
        evals = 0
        for s in range(a - 1, -1, -1):
            bottom, e = suffix_step(pts, alpha, a, s, lb, temp, v, c, bottom)
            evals += e
        return evals

    @jit
    def dp_column(pts, alpha, i, klo, khi, prune, lb, M, temp, v, c, best, arg, done):
        # rows klo..khi of column i; M row r holds k = r + 1 clusters
        bottom = suffix_start(i, temp, v, c)
        for k in range(klo, khi + 1):
            best[k] = M[k - 2, i - 1]
            arg[k] = i - 1
            done[k] = False
        evals = 0
        for s in range(i - 1, klo - 2, -1):
            bottom, e = suffix_step(pts, alpha, i, s, lb, temp, v, c, bottom)
            evals += e
            j0 = s - 1
            live = 0
            for k in range(klo, khi + 1):
                if done[k]:
                    continue
                if j0 < k - 2:
                    done[k] = True
                    continue
                if prune and v[s] > best[k]:
                    done[k] = True
                    continue
                cand = M[k - 2, j0] + v[s]
                if cand <= best[k]:
                    best[k] = cand
                    arg[k] = j0
                if j0 - 1 >= k - 2:
                    live += 1
            if live == 0:
                break
        return evals

    @jit
    def dp_forward(pts, K, alpha, prune, lbs, M, temp, v, c, best, arg, done):
        n = pts.shape[0]
        for k in range(2, K):
            M[k - 1, k - 1] = 0.0
        evals = 0
        for i in range(1, n):
            if i == n - 1:
                klo = K
                khi = K
            else:
                klo = max(2, i - n + K + 1)
                khi = min(K - 1, i)
            if klo > khi:
                continue
            evals += dp_column(pts, alpha, i, klo, khi, prune, lbs[i], M, temp, v, c, best, arg, done)
            for k in range(klo, khi + 1):
                M[k - 1, i] = best[k]
        return evals

    return {
        "prefix_step": prefix_step,
        "prefix_scan": prefix_scan,
        "suffix_start": suffix_start,
        "suffix_step": suffix_step,
        "suffix_scan": suffix_scan,
        "dp_column": dp_column,
        "dp_forward": dp_forward,
    }


_FLAVOURS: dict[bool, dict] = {}


def kernels(workers: int = 1) -> dict:
    """Kernel table for the requested worker count (compiled on first use)."""
    parallel = workers > 1
    table = _FLAVOURS.get(parallel)
    if table is None:
        table = _FLAVOURS[parallel] = _build(parallel)
    if parallel:
        numba.set_num_threads(max(1, min(workers, numba.config.NUMBA_NUM_THREADS)))
    return table
